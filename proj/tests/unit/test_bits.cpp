#include <bitset>

#include "doctest.h"
#include "owf/bits.hpp"
#include "owf/error.hpp"
#include "owf/instance_codec.hpp"

using namespace owf;

namespace {

// Textbook gamma: floor(log2 v) zeros, then v in binary.
BitString gamma_oracle(std::uint64_t v) {
  BitString bin;
  for (std::uint64_t t = v; t; t >>= 1) bin.insert(bin.begin(), char('0' + (t & 1)));
  return BitString(bin.size() - 1, '0') + bin;
}

}  // namespace

TEST_CASE("to_binary agrees with std::bitset") {
  for (std::uint64_t v = 0; v < 300; ++v) {
    CHECK(to_binary(v, 12) == std::bitset<12>(v).to_string());
    CHECK(from_binary(to_binary(v, 12)) == v);
  }
}

TEST_CASE("bit_width_for covers [0, count)") {
  for (std::uint64_t c = 1; c < 2000; ++c) {
    const int w = bit_width_for(c);
    CHECK((std::uint64_t{1} << w) >= c);
    if (c > 2) CHECK((std::uint64_t{1} << (w - 1)) < c);
  }
}

TEST_CASE("gamma codes match the textbook construction and read back") {
  BitString all;
  for (std::uint64_t v = 1; v < 500; ++v) {
    BitString one;
    append_gamma(one, v);
    CHECK(one == gamma_oracle(v));
    all += one;
  }
  BitReader r(all);
  for (std::uint64_t v = 1; v < 500; ++v) CHECK(r.read_gamma() == v);
  CHECK(r.remaining() == 0);
  CHECK_FALSE(r.read_gamma().has_value());
}

TEST_CASE("reader rejects truncated input without throwing") {
  BitReader r("0001");
  CHECK_FALSE(r.read_gamma().has_value());
  BitReader s("01");
  CHECK_FALSE(s.read(3).has_value());
}

TEST_CASE("require_bits names the offending field") {
  CHECK_NOTHROW(require_bits("0101", "x"));
  CHECK_THROWS_WITH_AS(require_bits("01a", "payload"), doctest::Contains("payload"), Error);
}

TEST_CASE("pair instances serialize and parse back") {
  const PairInstance inst{{{"0", "11"}, {"101", ""}}, "0110"};
  const BitString bits = serialize_pairs(inst);
  const auto p = parse_pairs(bits);
  REQUIRE(p.instance);
  CHECK(*p.instance == inst);
}

TEST_CASE("every short bit string parses to the instance it serializes or fails") {
  for (int len = 0; len <= 12; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const BitString s = len ? to_binary(v, len) : BitString();
      const auto p = parse_pairs(s);
      if (p.instance) {
        CHECK(serialize_pairs(*p.instance) == s);
      } else {
        CHECK_FALSE(p.error.empty());
      }
    }
  }
}

TEST_CASE("pair text form round-trips with empty strings") {
  const PairInstance inst{{{"01", ""}}, ""};
  const std::string text = write_pair_text(inst, "STS", "rules");
  CHECK(read_pair_text(text, "STS", "rules") == inst);
  CHECK_THROWS_AS(read_pair_text("STS v2\n", "STS", "rules"), ParseError);
}
