#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "owf/coding.hpp"
#include "owf/machine.hpp"
#include "owf/semithue.hpp"

namespace owf::stcompile {

// Rule counts per phase, in emission order (conversion, machine, decoding).
struct PhaseSizes {
  std::size_t conversion = 0;
  std::size_t machine = 0;
  std::size_t decoding = 0;
};

struct StCompilation {
  semithue::RewriteSystem system;
  CodeTable table;
  PhaseSizes phases;
  // Names used in the code table for the two shuttle states and the scanner.
  std::string shuttle_right;
  std::string shuttle_left;
  std::string scanner;
  std::string start;  // the machine's start state; also heads the input string
  std::string marker = "$";
};

// Compiles M into three rule groups over coded symbols:
//   conversion: s u -> $ u s1, s1 u -> u s1, u s1 $ -> s2 u $, u s2 -> s2 u,
//               $ s2 -> $ s   (u ranges over the raw blocks 1, 10, 100, 000;
//               underlined u is its coded form)
//   machine:    q a c -> b p c and q a $ -> b p B $ for right moves,
//               d q a -> p d b for left moves
//   decoding:   $ b h -> $ b' k, k b -> b' k, k B -> k, k $ -> $
//               where b' is the raw bit b.
// A run on s x $ ends in $ y $ with y = M(x).
StCompilation compile_semithue(const Machine& m, std::size_t n, std::uint64_t salt_seed = 0);

// code(s) . x . code($). Throws if x has no block decomposition.
BitString st_encode_input(const StCompilation& c, const BitString& x);

// y when w = code($) . y . code($) with y free of codes.
std::optional<BitString> st_decode_output(const StCompilation& c, std::string_view w);

// N^2 + 4N + 2.
std::size_t st_budget(std::size_t n);

// Number of forced steps the conversion phase takes on x: 2 * blocks + 1.
std::size_t conversion_steps(const BitString& x);

}  // namespace owf::stcompile
