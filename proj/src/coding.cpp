#include "owf/coding.hpp"

#include <bit>

#include "owf/error.hpp"

namespace owf {

std::optional<std::size_t> CodeTable::index_of(std::string_view symbol) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (alphabet[i] == symbol) return i;
  }
  return std::nullopt;
}

const BitString& CodeTable::code(std::string_view symbol) const {
  const auto i = index_of(symbol);
  if (!i) throw Error("symbol not in code table: " + std::string(symbol));
  return codes[*i];
}

std::optional<std::size_t> CodeTable::lookup(std::string_view bits) const {
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] == bits) return i;
  }
  return std::nullopt;
}

nlohmann::json CodeTable::to_json() const {
  nlohmann::json codes_obj = nlohmann::json::object();
  for (std::size_t i = 0; i < alphabet.size(); ++i) codes_obj[alphabet[i]] = codes[i];
  return {{"alphabet", alphabet}, {"m", m}, {"l", l}, {"salt", salt}, {"codes", codes_obj}};
}

CodeTable CodeTable::from_json(const nlohmann::json& j) {
  CodeTable t;
  t.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  t.l = j.at("l").get<int>();
  t.m = j.contains("m") ? j.at("m").get<int>() : (t.l - 5) / 2;
  t.salt = j.at("salt").get<std::uint64_t>();
  for (const auto& s : t.alphabet) {
    BitString c = j.at("codes").at(s).get<std::string>();
    require_bits(c, "code");
    if (static_cast<int>(c.size()) != t.l) throw Error("code length mismatch for " + s);
    t.codes.push_back(std::move(c));
  }
  return t;
}

namespace {

BitString make_code(std::uint64_t value, int m) {
  BitString c = "001";
  const BitString digits = to_binary(value, m);
  for (char d : digits) {
    c += d;
    c += '1';
  }
  c += "11";
  return c;
}

int ceil_log2(std::uint64_t v) { return v <= 1 ? 0 : static_cast<int>(std::bit_width(v - 1)); }

}  // namespace

int code_payload_bits(std::size_t alphabet_size, std::size_t n) {
  const std::uint64_t a = alphabet_size;
  return ceil_log2(a * (2 * n + 2) + a) + 1;
}

CodeTable build_code_table(std::vector<std::string> alphabet, std::size_t n,
                           const std::vector<BitString>& avoid, std::uint64_t salt_seed) {
  if (alphabet.size() < 3) throw Error("code table needs at least three symbols");
  if (n < 1) throw Error("payload length bound must be positive");
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    for (std::size_t j = i + 1; j < alphabet.size(); ++j) {
      if (alphabet[i] == alphabet[j]) throw Error("duplicate symbol in alphabet: " + alphabet[i]);
    }
  }
  for (const auto& s : avoid) require_bits(s, "avoid string");

  CodeTable t;
  t.alphabet = std::move(alphabet);
  t.m = code_payload_bits(t.alphabet.size(), n);
  t.l = 2 * t.m + 5;
  const std::uint64_t k = t.alphabet.size();
  const std::uint64_t windows = (std::uint64_t{1} << t.m) - k;

  auto window_ok = [&](std::uint64_t salt) {
    for (std::uint64_t i = 0; i < k; ++i) {
      const BitString c = make_code(salt + i, t.m);
      for (const auto& s : avoid) {
        if (s.find(c) != std::string::npos) return false;
      }
    }
    return true;
  };

  const std::uint64_t first = salt_seed % windows;
  std::optional<std::uint64_t> chosen;
  for (std::uint64_t off = 0; off < windows; ++off) {
    const std::uint64_t salt = (first + off) % windows;
    if (window_ok(salt)) {
      chosen = salt;
      break;
    }
    if (avoid.empty()) break;
  }
  if (!chosen) throw Error("no salt window keeps every code out of the avoid strings");
  t.salt = *chosen;
  for (std::uint64_t i = 0; i < k; ++i) t.codes.push_back(make_code(t.salt + i, t.m));
  return t;
}

BitString encode(const CodeTable& table, std::span<const std::string> word) {
  BitString out;
  out.reserve(word.size() * static_cast<std::size_t>(table.l));
  for (const auto& s : word) out += table.code(s);
  return out;
}

std::vector<std::string> decode(const CodeTable& table, std::string_view bits) {
  const auto l = static_cast<std::size_t>(table.l);
  if (bits.size() % l != 0) throw Error("encoded length is not a multiple of the code length");
  std::vector<std::string> out;
  for (std::size_t at = 0; at < bits.size(); at += l) {
    const auto i = table.lookup(bits.substr(at, l));
    if (!i) throw Error("chunk at offset " + std::to_string(at) + " is not a code");
    out.push_back(table.alphabet[*i]);
  }
  return out;
}

std::optional<std::vector<std::string_view>> block_decompose(std::string_view x) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < x.size()) {
    if (x[i] == '1') {
      // "1" swallows up to two zeros; the rest of the run must be whole 000s.
      std::size_t zeros = 0;
      while (i + 1 + zeros < x.size() && x[i + 1 + zeros] == '0') ++zeros;
      const std::size_t head = zeros % 3;
      out.push_back(x.substr(i, 1 + head));
      i += 1 + head;
      for (std::size_t k = 0; k < zeros / 3; ++k, i += 3) out.push_back(x.substr(i, 3));
    } else {
      std::size_t zeros = 0;
      while (i + zeros < x.size() && x[i + zeros] == '0') ++zeros;
      if (zeros % 3 != 0) return std::nullopt;
      for (std::size_t k = 0; k < zeros / 3; ++k, i += 3) out.push_back(x.substr(i, 3));
    }
  }
  return out;
}

PropertyReport verify_properties(const CodeTable& table, std::string_view x, std::string_view y) {
  PropertyReport r;
  const auto l = static_cast<std::size_t>(table.l);

  for (std::size_t i = 0; i < table.codes.size(); ++i) {
    if (table.codes[i].size() != l) {
      r.equal_length = {false, "code of " + table.alphabet[i] + " has length " +
                                   std::to_string(table.codes[i].size())};
      break;
    }
  }

  for (const auto& [name, s] : {std::pair{"x", x}, std::pair{"y", y}}) {
    if (!r.distinguishable.pass) break;
    for (std::size_t i = 0; i < table.codes.size(); ++i) {
      const auto at = s.find(table.codes[i]);
      if (at != std::string_view::npos) {
        r.distinguishable = {false, "code of " + table.alphabet[i] + " at offset " + std::to_string(at) + " of " + name};
        break;
      }
    }
  }

  for (std::size_t u = 0; u < table.codes.size() && r.self_aligning.pass; ++u) {
    const std::string_view cu = table.codes[u];
    for (std::size_t v = 0; v < table.codes.size() && r.self_aligning.pass; ++v) {
      const std::string_view cv = table.codes[v];
      for (std::size_t len = 1; len <= cu.size() && len <= cv.size(); ++len) {
        const std::string_view z = cu.substr(cu.size() - len);
        if (cv.substr(0, len) != z) continue;
        if (!(z == cu && cu == cv)) {
          r.self_aligning = {false, "suffix of " + table.alphabet[u] + " of length " + std::to_string(len) +
                                        " is a prefix of " + table.alphabet[v]};
          break;
        }
      }
    }
  }

  for (const auto& [name, s] : {std::pair{"x", x}, std::pair{"y", y}}) {
    if (!block_decompose(s)) {
      r.block_separable = {false, std::string(name) + " has no block decomposition"};
      break;
    }
  }
  if (r.block_separable.pass) {
    for (std::string_view b : kBlocks) {
      for (std::size_t i = 0; i < table.codes.size(); ++i) {
        if (table.codes[i].starts_with(b)) {
          r.block_separable = {false, "block " + std::string(b) + " prefixes the code of " + table.alphabet[i]};
        }
      }
    }
  }
  return r;
}

}  // namespace owf
