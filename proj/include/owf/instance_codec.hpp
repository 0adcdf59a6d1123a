#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owf/bits.hpp"

namespace owf {

// A list of string pairs plus a payload: the common shape of rewriting and
// Post-correspondence instances.
struct StringPair {
  BitString first;
  BitString second;

  friend bool operator==(const StringPair&, const StringPair&) = default;
};

struct PairInstance {
  std::vector<StringPair> pairs;
  BitString payload;

  friend bool operator==(const PairInstance&, const PairInstance&) = default;
};

// Pure-string form: gamma(m+1), then for each of the 2m strings gamma(len+1)
// followed by the bits, then the payload as all remaining bits.
BitString serialize_pairs(const PairInstance& inst);

struct PairParse {
  std::optional<PairInstance> instance;
  std::string error;  // set when instance is empty
};

// Every bit string either parses to the unique instance it serializes, or
// fails with a reason.
PairParse parse_pairs(std::string_view bits);

// Text form shared by "STS v1" (list keyword "rules") and "PCP v1" ("pairs").
// Empty strings are written as "-". Throws ParseError.
PairInstance read_pair_text(std::string_view text, std::string_view magic, std::string_view list_keyword);
std::string write_pair_text(const PairInstance& inst, std::string_view magic, std::string_view list_keyword);

}  // namespace owf
