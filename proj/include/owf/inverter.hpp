#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "owf/bits.hpp"
#include "owf/derivation.hpp"
#include "owf/machine.hpp"
#include "owf/semithue.hpp"

namespace owf::inverter {

enum class Kind { Staf, Ptf, Tiling };

std::string to_string(Kind k);
Kind parse_kind(std::string_view text);  // "staf", "ptf" or "tiling"; throws otherwise

// f of the given kind; the policy is ignored for tiling.
BitString evaluate(Kind kind, std::string_view input, const DeterminismPolicy& policy);

// The candidates a search walks through: every x of length n, in
// lexicographic order, mapped to a full input by `embed`.
struct Frame {
  std::size_t n = 0;
  std::function<BitString(const BitString&)> embed;
};

// Payloads of length |y| next to the fixed system of a parsed target, or
// nullopt when the target does not parse.
std::optional<Frame> payload_frame(Kind kind, std::string_view target);

// Inputs x of length n pushed through the compiled form of machine `m` for
// the given kind: the semi-Thue and Post encodings of x, or the tiling
// bottom row. `salt_seed` feeds the code tables.
Frame compiled_frame(Kind kind, const Machine& m, std::size_t n, std::uint64_t salt_seed = 0);

struct InvertResult {
  enum class Status { Found, NotFound, LimitExceeded };

  Status status = Status::NotFound;
  BitString preimage;          // the full input, when found
  std::optional<BitString> x;  // the frame candidate, when found through a frame
  std::uint64_t attempts = 0;  // candidates up to and including the reported one
};

std::string to_string(InvertResult::Status s);

struct InvertOptions {
  std::uint64_t limit = 0;  // 0: the whole frame
  unsigned jobs = 1;
};

// Lexicographically least candidate whose image is `target`; the result does
// not depend on `jobs`. An unparseable target is its own preimage.
InvertResult brute_invert(Kind kind, std::string_view target, const DeterminismPolicy& policy,
                          const InvertOptions& options = {});
InvertResult brute_invert(Kind kind, std::string_view target, const Frame& frame, const DeterminismPolicy& policy,
                          const InvertOptions& options = {});

// Strings that rewrite to y in at most `budget` steps (y included), found
// by applying rules right to left. Stops growing once `cap` strings are known.
std::set<BitString> backward_search(const semithue::RewriteSystem& sys, std::string_view y, std::size_t budget,
                                    std::size_t cap = 100000);

struct ExperimentConfig {
  std::vector<Kind> kinds = {Kind::Staf, Kind::Ptf, Kind::Tiling};
  std::string machine = "not";
  std::vector<std::size_t> ns = {4, 6, 8};
  std::vector<std::uint64_t> seeds = {1};
  std::vector<DeterminismPolicy> policies = {DeterminismPolicy::lookahead(8)};
  std::size_t identity_samples = 1000;  // random instances for the identity rate
  std::uint64_t max_int = 65536;
  std::size_t max_len = 64;
  unsigned jobs = 1;
};

struct ExperimentRow {
  Kind kind = Kind::Staf;
  std::string machine;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double forward_us = 0;
  std::uint64_t attempts = 0;
  bool found = false;
  double identity_rate = 0;
  std::string policy;
};

inline constexpr std::string_view kExperimentHeader =
    "kind,machine,n,seed,forward_us,attempts,found,identity_rate,policy";

// One row per (kind, n, seed, policy): the time of one forward evaluation of
// the compiled machine on a random x, the attempts needed to invert its
// image through the x frame, and the identity rate of f on sampled instances.
std::vector<ExperimentRow> owf_experiment(const ExperimentConfig& config);
std::string to_csv(const std::vector<ExperimentRow>& rows);

}  // namespace owf::inverter
