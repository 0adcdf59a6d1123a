#include "owf/stcompile.hpp"

#include <algorithm>

#include "owf/error.hpp"

namespace owf::stcompile {

namespace {

std::string fresh_name(const Machine& m, std::string name) {
  while (m.state_index(name) >= 0 || name == "0" || name == "1" || name == "B" || name == "$") name += "'";
  return name;
}

}  // namespace

StCompilation compile_semithue(const Machine& m, std::size_t n, std::uint64_t salt_seed) {
  StCompilation c;
  c.shuttle_right = fresh_name(m, "s1");
  c.shuttle_left = fresh_name(m, "s2");
  c.scanner = fresh_name(m, "k");
  c.start = m.state_name(m.start());

  std::vector<std::string> alphabet = {"0", "1", "B", c.marker};
  for (const auto& q : m.states()) {
    if (std::find(alphabet.begin(), alphabet.end(), q) != alphabet.end()) {
      throw Error("state name collides with a tape symbol: " + q);
    }
    alphabet.push_back(q);
  }
  alphabet.push_back(c.shuttle_right);
  alphabet.push_back(c.shuttle_left);
  alphabet.push_back(c.scanner);
  c.table = build_code_table(std::move(alphabet), n, {}, salt_seed);

  const CodeTable& t = c.table;
  auto code = [&](const std::string& s) -> const BitString& { return t.code(s); };
  auto coded_block = [&](std::string_view u) {
    BitString out;
    for (char ch : u) out += code(std::string(1, ch));
    return out;
  };

  std::vector<semithue::Rule> rules;
  const BitString& s = code(c.start);
  const BitString& s1 = code(c.shuttle_right);
  const BitString& s2 = code(c.shuttle_left);
  const BitString& dollar = code(c.marker);
  const BitString& k = code(c.scanner);

  for (std::string_view u : kBlocks) rules.push_back({s + BitString(u), dollar + coded_block(u) + s1});
  for (std::string_view u : kBlocks) rules.push_back({s1 + BitString(u), coded_block(u) + s1});
  for (std::string_view u : kBlocks) rules.push_back({coded_block(u) + s1 + dollar, s2 + coded_block(u) + dollar});
  for (std::string_view u : kBlocks) rules.push_back({coded_block(u) + s2, s2 + coded_block(u)});
  // Independent of u, so the rule set holds it once.
  rules.push_back({dollar + s2, dollar + s});
  c.phases.conversion = rules.size();

  for (int q = 0; q < static_cast<int>(m.state_count()); ++q) {
    if (q == m.halt()) continue;
    const BitString& cq = code(m.state_name(q));
    for (Symbol a : kTapeSymbols) {
      const Transition& tr = m.transition(q, a);
      const BitString& ca = code(symbol_name(a));
      const BitString& cb = code(symbol_name(tr.write));
      const BitString& cp = code(m.state_name(tr.next));
      if (tr.move == Direction::Right) {
        for (Symbol ctx : kTapeSymbols) {
          const BitString& cc = code(symbol_name(ctx));
          rules.push_back({cq + ca + cc, cb + cp + cc});
        }
        rules.push_back({cq + ca + dollar, cb + cp + code("B") + dollar});
      } else {
        for (Symbol d : kTapeSymbols) {
          const BitString& cd = code(symbol_name(d));
          rules.push_back({cd + cq + ca, cp + cd + cb});
        }
      }
    }
  }
  c.phases.machine = rules.size() - c.phases.conversion;

  const BitString& h = code(m.state_name(m.halt()));
  for (const char* b : {"0", "1"}) rules.push_back({dollar + code(b) + h, dollar + b + k});
  for (const char* b : {"0", "1"}) rules.push_back({k + code(b), BitString(b) + k});
  rules.push_back({k + code("B"), k});
  rules.push_back({k + dollar, dollar});
  c.phases.decoding = rules.size() - c.phases.conversion - c.phases.machine;

  c.system = semithue::RewriteSystem(std::move(rules));
  return c;
}

BitString st_encode_input(const StCompilation& c, const BitString& x) {
  require_bits(x, "payload");
  if (!block_decompose(x)) throw Error("payload \"" + x + "\" has no block decomposition");
  return c.table.code(c.start) + x + c.table.code(c.marker);
}

std::optional<BitString> st_decode_output(const StCompilation& c, std::string_view w) {
  const BitString& dollar = c.table.code(c.marker);
  const std::size_t l = dollar.size();
  if (w.size() < 2 * l || !w.starts_with(dollar) || !w.ends_with(dollar)) return std::nullopt;
  const std::string_view y = w.substr(l, w.size() - 2 * l);
  for (const auto& code : c.table.codes) {
    if (y.find(code) != std::string_view::npos) return std::nullopt;
  }
  return BitString(y);
}

std::size_t st_budget(std::size_t n) { return n * n + 4 * n + 2; }

std::size_t conversion_steps(const BitString& x) {
  const auto blocks = block_decompose(x);
  if (!blocks) throw Error("payload has no block decomposition");
  return 2 * blocks->size() + 1;
}

}  // namespace owf::stcompile
