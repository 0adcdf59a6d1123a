#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owf/bits.hpp"

namespace owf {

// How a derivation decides that a step is forced.
//
// Strict: the step is taken only when exactly one (rule, position) applies.
// Lookahead(d): successors are deduplicated; a successor from which every
// derivation reaches a stuck string within d further steps is pruned, and the
// step is taken when exactly one successor survives.
// Accepting lookahead: as Lookahead, but a stuck string of the target length
// (the caller's accept_length) counts as a live outcome instead of a dead one.
struct DeterminismPolicy {
  enum class Mode { Strict, Lookahead };

  Mode mode = Mode::Lookahead;
  int depth = 8;
  // A node with more distinct successors than this is a BranchOverflow.
  std::size_t max_branch = 64;
  // Total nodes the pruning search may visit for a single step.
  std::size_t max_nodes = 4096;
  // Only meaningful with Lookahead; see above.
  bool accepting = false;

  static DeterminismPolicy strict();
  static DeterminismPolicy lookahead(int depth);
  // Yield-relation semantics for Post systems: at most two pairs may apply
  // and the rejected branch must be stuck right away.
  static DeterminismPolicy paper_pcp();
  static DeterminismPolicy lookahead_accept(int depth);

  // "strict", "lookahead:D", "lookahead-accept:D" or "paper-pcp". Throws on anything else.
  static DeterminismPolicy parse(std::string_view text);
  std::string to_string() const;
};

// One application of a rule (or pair) producing `result`.
struct Successor {
  std::size_t rule = 0;
  std::size_t pos = 0;
  BitString result;
};

using SuccessorFn = std::function<std::vector<Successor>(std::string_view)>;

struct StepOutcome {
  enum class Kind { Unique, Stuck, Ambiguous, BranchOverflow };

  Kind kind = Kind::Stuck;
  Successor next;         // valid for Unique
  std::size_t count = 0;  // live alternatives for Ambiguous
};

struct TraceEntry {
  std::size_t step = 0;
  std::size_t rule = 0;
  std::size_t pos = 0;
  std::size_t len_after = 0;
};

struct ClosureOutcome {
  enum class Status { Terminal, NotTerminal };
  enum class Reason { None, Ambiguous, BudgetExceeded, BranchOverflow, Abandoned };

  Status status = Status::NotTerminal;
  Reason reason = Reason::None;
  BitString result;        // terminal string, or the last string reached
  std::size_t steps = 0;   // forced steps taken
  std::size_t ambiguity = 0;  // alternatives at the failing step, if Ambiguous
  std::vector<TraceEntry> trace;

  bool terminal() const { return status == Status::Terminal; }
};

std::string to_string(ClosureOutcome::Reason r);

struct ClosureOptions {
  bool record_trace = true;
  // The step relation is a function of the current string, so a repeated
  // string means the derivation cycles and can never become stuck.
  bool detect_cycles = true;
  // Called before each step with the current string and remaining budget;
  // returning true stops the run with Reason::Abandoned.
  std::function<bool(std::string_view, std::size_t)> abandon;
  // Target length for accepting lookahead.
  std::optional<std::size_t> accept_length;
};

StepOutcome det_step(const SuccessorFn& successors, std::string_view w, const DeterminismPolicy& policy,
                     std::optional<std::size_t> accept_length = std::nullopt);

ClosureOutcome det_closure(const SuccessorFn& successors, std::string_view w, std::size_t budget,
                           const DeterminismPolicy& policy, const ClosureOptions& options = {});

// JSON-lines rendering, one {"step","rule","pos","len_after"} object per line.
std::string trace_to_jsonl(const std::vector<TraceEntry>& trace);

}  // namespace owf
