#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "owf/bits.hpp"

namespace owf {

// The raw units that shuttle payload bits past code boundaries.
inline constexpr std::array<std::string_view, 4> kBlocks = {"1", "10", "100", "000"};

// Fixed-length binary codes for a symbol alphabet. Every code has the shape
//   001 d1 1 d2 1 ... dm 1 11
// where d1..dm are the bits of (salt + symbol index). The only "00" in a code
// is its leading one, so codes never overlap each other out of alignment and
// none of the blocks is a prefix of a code.
struct CodeTable {
  std::vector<std::string> alphabet;
  int m = 0;  // payload bits per code
  int l = 0;  // code length, 2m + 5
  std::uint64_t salt = 0;
  std::vector<BitString> codes;  // parallel to alphabet

  std::optional<std::size_t> index_of(std::string_view symbol) const;
  const BitString& code(std::string_view symbol) const;  // throws on unknown symbol
  // Symbol whose code is exactly `bits`, if any.
  std::optional<std::size_t> lookup(std::string_view bits) const;

  nlohmann::json to_json() const;
  static CodeTable from_json(const nlohmann::json& j);
};

int code_payload_bits(std::size_t alphabet_size, std::size_t n);

// `n` bounds the payload length the codes must stay distinguishable from;
// `avoid` lists strings no code may occur in. Throws if the alphabet has fewer
// than three symbols or no salt window avoids every string.
CodeTable build_code_table(std::vector<std::string> alphabet, std::size_t n,
                           const std::vector<BitString>& avoid, std::uint64_t salt_seed);

BitString encode(const CodeTable& table, std::span<const std::string> word);
std::vector<std::string> decode(const CodeTable& table, std::string_view bits);

// Unique split of x into blocks from kBlocks, or nullopt when x has a leading
// zero run whose length is not a multiple of three.
std::optional<std::vector<std::string_view>> block_decompose(std::string_view x);

struct PropertyCheck {
  bool pass = true;
  std::string witness;  // set when pass is false
};

struct PropertyReport {
  PropertyCheck equal_length;       // 1: all codes share one length
  PropertyCheck distinguishable;    // 2: no code occurs inside x or y
  PropertyCheck self_aligning;      // 3: suffix of u prefix of v => z = u = v
  PropertyCheck block_separable;    // 4: x, y split into blocks; no block prefixes a code

  bool all() const {
    return equal_length.pass && distinguishable.pass && self_aligning.pass && block_separable.pass;
  }
};

PropertyReport verify_properties(const CodeTable& table, std::string_view x, std::string_view y);

}  // namespace owf
