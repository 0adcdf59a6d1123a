#include "owf/instance_codec.hpp"

#include <charconv>
#include <sstream>

#include "owf/error.hpp"

namespace owf {

BitString serialize_pairs(const PairInstance& inst) {
  BitString out;
  append_gamma(out, inst.pairs.size() + 1);
  for (const auto& p : inst.pairs) {
    for (const BitString* s : {&p.first, &p.second}) {
      append_gamma(out, s->size() + 1);
      out += *s;
    }
  }
  out += inst.payload;
  return out;
}

PairParse parse_pairs(std::string_view bits) {
  PairParse r;
  if (!is_bit_string(bits)) {
    r.error = "not a bit string";
    return r;
  }
  BitReader in(bits);
  const auto count = in.read_gamma();
  if (!count) {
    r.error = "truncated pair count";
    return r;
  }
  const std::uint64_t m = *count - 1;
  // Each string costs at least one bit, which bounds m before allocating.
  if (m > in.remaining() / 2) {
    r.error = "pair count exceeds the remaining bits";
    return r;
  }
  PairInstance inst;
  inst.pairs.reserve(static_cast<std::size_t>(m));
  for (std::uint64_t i = 0; i < m; ++i) {
    StringPair p;
    for (BitString* s : {&p.first, &p.second}) {
      const auto len = in.read_gamma();
      if (!len) {
        r.error = "truncated length of string " + std::to_string(2 * i + (s == &p.second));
        return r;
      }
      const auto body = in.read(static_cast<std::size_t>(*len - 1));
      if (!body) {
        r.error = "truncated body of string " + std::to_string(2 * i + (s == &p.second));
        return r;
      }
      *s = BitString(*body);
    }
    inst.pairs.push_back(std::move(p));
  }
  inst.payload = BitString(in.rest());
  r.instance = std::move(inst);
  return r;
}

namespace {

std::vector<std::pair<std::string, std::size_t>> words(std::string_view line) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t b = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.emplace_back(std::string(line.substr(b, i - b)), b + 1);
  }
  return out;
}

BitString field(const std::string& w, std::size_t line, std::size_t col) {
  if (w == "-") return {};
  if (!is_bit_string(w)) throw ParseError("expected a 0/1 string or '-'", line, col);
  return w;
}

}  // namespace

PairInstance read_pair_text(std::string_view text, std::string_view magic, std::string_view list_keyword) {
  const std::string list_key = std::string(list_keyword) + ":";
  PairInstance inst;
  enum class Expect { Header, Count, Pairs, Input, Done } expect = Expect::Header;
  std::size_t remaining = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto w = words(line);
    if (w.empty()) continue;
    switch (expect) {
      case Expect::Header:
        if (w.size() != 2 || w[0].first != magic || w[1].first != "v1") {
          throw ParseError("expected header \"" + std::string(magic) + " v1\"", line_no, w[0].second);
        }
        expect = Expect::Count;
        break;
      case Expect::Count: {
        if (w.size() != 2 || w[0].first != list_key) {
          throw ParseError("expected \"" + list_key + " <count>\"", line_no, w[0].second);
        }
        const std::string& n = w[1].first;
        const auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), remaining);
        if (ec != std::errc() || ptr != n.data() + n.size()) {
          throw ParseError("bad count", line_no, w[1].second);
        }
        expect = remaining == 0 ? Expect::Input : Expect::Pairs;
        break;
      }
      case Expect::Pairs:
        if (w.size() != 2) throw ParseError("expected two strings", line_no, w[0].second);
        inst.pairs.push_back({field(w[0].first, line_no, w[0].second), field(w[1].first, line_no, w[1].second)});
        if (--remaining == 0) expect = Expect::Input;
        break;
      case Expect::Input:
        if (w[0].first != "input:" || w.size() > 2) {
          throw ParseError("expected \"input: <bits>\"", line_no, w[0].second);
        }
        if (w.size() == 2) inst.payload = field(w[1].first, line_no, w[1].second);
        expect = Expect::Done;
        break;
      case Expect::Done:
        throw ParseError("unexpected content after input line", line_no, w[0].second);
    }
  }
  if (expect == Expect::Pairs) throw ParseError("fewer entries than declared", line_no, 1);
  if (expect != Expect::Done) throw ParseError("missing \"input:\" line", line_no, 1);
  return inst;
}

std::string write_pair_text(const PairInstance& inst, std::string_view magic, std::string_view list_keyword) {
  std::ostringstream out;
  auto show = [](const BitString& s) { return s.empty() ? std::string("-") : s; };
  out << magic << " v1\n" << list_keyword << ": " << inst.pairs.size() << '\n';
  for (const auto& p : inst.pairs) out << show(p.first) << ' ' << show(p.second) << '\n';
  out << "input: " << inst.payload << '\n';
  return out.str();
}

}  // namespace owf
