#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owf/bits.hpp"
#include "owf/derivation.hpp"
#include "owf/instance_codec.hpp"

namespace owf::semithue {

struct Rule {
  BitString lhs;
  BitString rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
};

// Ordered rule list over {0,1}. Every left-hand side is nonempty.
class RewriteSystem {
 public:
  RewriteSystem() = default;
  explicit RewriteSystem(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

  friend bool operator==(const RewriteSystem&, const RewriteSystem&) = default;

 private:
  std::vector<Rule> rules_;
};

struct Match {
  std::size_t rule = 0;
  std::size_t pos = 0;

  friend bool operator==(const Match&, const Match&) = default;
};

// All occurrences of every left-hand side, ordered by (pos, rule).
std::vector<Match> find_matches(const RewriteSystem& sys, std::string_view w);
BitString apply_match(const RewriteSystem& sys, std::string_view w, const Match& m);

SuccessorFn successor_fn(const RewriteSystem& sys);

StepOutcome det_step(const RewriteSystem& sys, std::string_view w, const DeterminismPolicy& policy);
ClosureOutcome det_closure(const RewriteSystem& sys, std::string_view w, std::size_t budget,
                           const DeterminismPolicy& policy, const ClosureOptions& options = {});

struct Instance {
  RewriteSystem system;
  BitString payload;
};

BitString serialize_instance(const Instance& inst);
// Fails (nullopt, with reason) on non-images and on empty left-hand sides.
std::optional<Instance> parse_instance(std::string_view bits, std::string* error = nullptr);

// "STS v1" text files.
Instance read_text(std::string_view text);
std::string write_text(const Instance& inst);

// Step budget |x|^2 + 4|x| + 2 for a payload of length n.
std::size_t staf_budget(std::size_t n);

// The closure staf runs on a parsed instance: budget staf_budget(|x|),
// target length |x|, and early abandonment once the string is too long to
// shrink back to |x| within the remaining budget.
ClosureOutcome staf_closure(const Instance& inst, const DeterminismPolicy& policy, bool record_trace = false);

// The rewriting one-way function: parse (system, x), run the forced
// derivation for staf_budget(|x|) steps and return (system, y) when it ends in
// a stuck y with |y| = |x|. Every other case returns the input unchanged.
BitString staf(std::string_view input, const DeterminismPolicy& policy);

}  // namespace owf::semithue
