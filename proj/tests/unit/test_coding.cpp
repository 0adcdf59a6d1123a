#include <cmath>
#include <functional>
#include <regex>
#include <set>

#include "doctest.h"
#include "owf/coding.hpp"
#include "owf/error.hpp"
#include "owf/sampler.hpp"

using namespace owf;

namespace {

// Number of ways to split x into blocks, by plain recursion.
std::size_t split_count(std::string_view x) {
  if (x.empty()) return 1;
  std::size_t total = 0;
  for (auto b : kBlocks) {
    if (x.starts_with(b)) total += split_count(x.substr(b.size()));
  }
  return total;
}

bool self_aligning_oracle(const std::vector<BitString>& codes) {
  for (const auto& u : codes) {
    for (const auto& v : codes) {
      for (std::size_t k = 1; k < u.size(); ++k) {
        if (k <= v.size() && u.substr(u.size() - k) == v.substr(0, k)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("block decomposition exists exactly when the recursion finds one split") {
  for (int n = 1; n <= 14; ++n) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      const BitString x = to_binary(v, n);
      const std::size_t ways = split_count(x);
      const auto d = block_decompose(x);
      CHECK(ways <= 1);
      CHECK(d.has_value() == (ways == 1));
      if (d) {
        std::string joined;
        for (auto b : *d) joined += b;
        CHECK(joined == x);
      }
      // Decomposable iff the leading zero run has length divisible by 3.
      const std::size_t zeros = x.find('1') == BitString::npos ? x.size() : x.find('1');
      CHECK(d.has_value() == (zeros % 3 == 0));
    }
  }
}

TEST_CASE("codes have the documented shape and length") {
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
  for (std::size_t n : {4u, 64u, 256u, 1000u}) {
    const auto t = build_code_table(alphabet, n, {}, 7);
    CHECK(t.l == 2 * t.m + 5);
    const std::regex shape("001([01]1){" + std::to_string(t.m) + "}11");
    for (const auto& c : t.codes) {
      CHECK(std::regex_match(c, shape));
      CHECK(c.size() == static_cast<std::size_t>(t.l));
    }
    CHECK(self_aligning_oracle(t.codes));
    for (std::size_t i = 0; i < alphabet.size(); ++i) CHECK(t.lookup(t.codes[i]) == i);
  }
}

TEST_CASE("payload bits follow the log formula") {
  for (std::size_t a : {3u, 6u, 12u, 40u}) {
    for (std::size_t n : {1u, 4u, 100u, 256u, 5000u}) {
      const double arg = double(a) * double(2 * n + 2) + double(a);
      CHECK(code_payload_bits(a, n) == static_cast<int>(std::ceil(std::log2(arg))) + 1);
    }
  }
  // 12 symbols at n = 4: ceil(log2 132) + 1 = 9 payload bits, 23-bit codes.
  std::vector<std::string> twelve;
  for (int i = 0; i < 12; ++i) twelve.push_back("s" + std::to_string(i));
  const auto t = build_code_table(twelve, 4, {}, 0);
  CHECK(t.m == 9);
  CHECK(t.l == 23);
}

TEST_CASE("distinct symbols get distinct codes and encode/decode round-trips") {
  const std::vector<std::string> alphabet = {"q0", "q1", "0", "1", "B", "$"};
  const auto t = build_code_table(alphabet, 16, {}, 3);
  std::set<BitString> seen(t.codes.begin(), t.codes.end());
  CHECK(seen.size() == alphabet.size());
  const std::vector<std::string> word = {"$", "q0", "1", "B", "$"};
  CHECK(decode(t, encode(t, word)) == word);
  CHECK_THROWS_AS(t.code("zz"), Error);
}

TEST_CASE("avoid list keeps codes out of the given strings") {
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  const auto base = build_code_table(alphabet, 8, {}, 0);
  const BitString planted = "1" + base.codes[0] + "0";
  const auto t = build_code_table(alphabet, 8, {planted}, 0);
  for (const auto& c : t.codes) CHECK(planted.find(c) == BitString::npos);
}

TEST_CASE("property report flags a planted code") {
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  const auto t = build_code_table(alphabet, 64, {}, 1);
  const BitString x = "1" + t.codes[1] + "1";
  const auto r = verify_properties(t, x, "10");
  CHECK_FALSE(r.distinguishable.pass);
  CHECK_FALSE(r.distinguishable.witness.empty());
  CHECK(r.equal_length.pass);
  CHECK(r.self_aligning.pass);
}

TEST_CASE("code table JSON round-trips") {
  const auto t = build_code_table({"s", "h", "0", "1", "B", "$"}, 32, {}, 9);
  const auto back = CodeTable::from_json(t.to_json());
  CHECK(back.codes == t.codes);
  CHECK(back.alphabet == t.alphabet);
  CHECK(back.m == t.m);
}

TEST_CASE("tiny alphabets are rejected") {
  CHECK_THROWS_AS(build_code_table({"a", "b"}, 4, {}, 0), Error);
}
