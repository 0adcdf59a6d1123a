#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "owf/bits.hpp"
#include "owf/pcp.hpp"
#include "owf/semithue.hpp"
#include "owf/tiling.hpp"

namespace owf::sampler {

// Pinned generator; the draws below use only its raw 64-bit output, so
// samples are identical on every platform.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng);
BitString uniform_bits(Rng& rng, std::size_t length);

// Truncated default-uniform laws: integers with P(n) proportional to 1/n^2
// on 1..max_int, strings with a length drawn the same way on 1..max_len
// followed by uniform bits (so P(u) is proportional to 2^-|u| / |u|^2).
class DefaultUniform {
 public:
  explicit DefaultUniform(std::uint64_t max_int = 65536, std::size_t max_len = 64);

  std::uint64_t max_int() const { return max_int_; }
  std::size_t max_len() const { return max_len_; }

  std::uint64_t sample_int(Rng& rng) const;
  std::size_t sample_length(Rng& rng) const;
  BitString sample_string(Rng& rng) const;

  double p_int(std::uint64_t n) const;
  double p_length(std::size_t len) const;
  // Mass the untruncated 1/n^2 law puts beyond max_int (< 1/max_int).
  double truncated_mass() const;

 private:
  std::uint64_t max_int_;
  std::size_t max_len_;
  std::vector<double> int_cdf_;
  std::vector<double> len_cdf_;
};

// A random instance in the shape of the accessibility problem: integers n
// and m, 2m strings, a source u and a target v. The function setting uses
// only the rules and u; v and n are kept for the size formula.
struct StsSample {
  semithue::Instance instance;
  BitString target;
  std::uint64_t n = 0;

  // n + |u| + |v| + sum(|g_i| + |h_i|)
  std::uint64_t size() const;
};

struct PcpSample {
  pcp::Instance instance;
  BitString target;
  std::uint64_t n = 0;

  std::uint64_t size() const;
};

StsSample sample_sts_instance(const DefaultUniform& d, Rng& rng);
PcpSample sample_pcp_instance(const DefaultUniform& d, Rng& rng);

// k edge symbols and t distinct tiles from the integer law (t capped at k^4),
// row width from the length law.
tiling::Instance sample_tiling_instance(const DefaultUniform& d, Rng& rng);

}  // namespace owf::sampler
