#include "owf/derivation.hpp"

#include <charconv>
#include <unordered_set>

#include "json.hpp"
#include "owf/error.hpp"

namespace owf {

DeterminismPolicy DeterminismPolicy::strict() {
  DeterminismPolicy p;
  p.mode = Mode::Strict;
  p.depth = 0;
  return p;
}

DeterminismPolicy DeterminismPolicy::lookahead(int depth) {
  if (depth < 1) throw Error("lookahead depth must be at least 1");
  DeterminismPolicy p;
  p.mode = Mode::Lookahead;
  p.depth = depth;
  return p;
}

DeterminismPolicy DeterminismPolicy::paper_pcp() {
  DeterminismPolicy p = lookahead(1);
  p.max_branch = 2;
  return p;
}

DeterminismPolicy DeterminismPolicy::lookahead_accept(int depth) {
  DeterminismPolicy p = lookahead(depth);
  p.accepting = true;
  return p;
}

namespace {

std::optional<int> parse_depth(std::string_view num) {
  int d = 0;
  const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), d);
  if (ec == std::errc() && ptr == num.data() + num.size() && d >= 1) return d;
  return std::nullopt;
}

}  // namespace

DeterminismPolicy DeterminismPolicy::parse(std::string_view text) {
  if (text == "strict") return strict();
  if (text == "paper-pcp") return paper_pcp();
  if (text.starts_with("lookahead:")) {
    if (auto d = parse_depth(text.substr(10))) return lookahead(*d);
  }
  if (text.starts_with("lookahead-accept:")) {
    if (auto d = parse_depth(text.substr(17))) return lookahead_accept(*d);
  }
  throw Error("unknown semantics \"" + std::string(text) +
              "\" (use strict, lookahead:D, lookahead-accept:D or paper-pcp)");
}

std::string DeterminismPolicy::to_string() const {
  if (mode == Mode::Strict) return "strict";
  if (accepting) return "lookahead-accept:" + std::to_string(depth);
  if (depth == 1 && max_branch == 2) return "paper-pcp";
  return "lookahead:" + std::to_string(depth);
}

std::string to_string(ClosureOutcome::Reason r) {
  switch (r) {
    case ClosureOutcome::Reason::None: return "none";
    case ClosureOutcome::Reason::Ambiguous: return "ambiguous";
    case ClosureOutcome::Reason::BudgetExceeded: return "budget-exceeded";
    case ClosureOutcome::Reason::BranchOverflow: return "branch-overflow";
    case ClosureOutcome::Reason::Abandoned: return "abandoned";
  }
  return "?";
}

namespace {

std::vector<Successor> distinct(std::vector<Successor> all) {
  std::vector<Successor> out;
  // Reserved up front so the views in `seen` stay valid while `out` grows.
  out.reserve(all.size());
  std::unordered_set<std::string_view> seen;
  for (auto& s : all) {
    if (seen.count(s.result)) continue;
    out.push_back(std::move(s));
    seen.insert(out.back().result);
  }
  return out;
}

enum class Fate { Dead, Alive, Overflow };

class Pruner {
 public:
  Pruner(const SuccessorFn& successors, const DeterminismPolicy& policy, std::optional<std::size_t> accept)
      : successors_(successors), policy_(policy), accept_(policy.accepting ? accept : std::nullopt) {}

  // Dead iff every derivation from w reaches a stuck string within `depth` steps.
  Fate fate(std::string_view w, int depth) {
    if (++visited_ > policy_.max_nodes) return Fate::Overflow;
    std::vector<Successor> next = distinct(successors_(w));
    if (next.empty()) return accept_ && w.size() == *accept_ ? Fate::Alive : Fate::Dead;
    if (depth == 0) return Fate::Alive;
    if (next.size() > policy_.max_branch) return Fate::Overflow;
    for (const auto& s : next) {
      const Fate f = fate(s.result, depth - 1);
      if (f != Fate::Dead) return f;
    }
    return Fate::Dead;
  }

 private:
  const SuccessorFn& successors_;
  const DeterminismPolicy& policy_;
  std::optional<std::size_t> accept_;
  std::size_t visited_ = 0;
};

}  // namespace

StepOutcome det_step(const SuccessorFn& successors, std::string_view w, const DeterminismPolicy& policy,
                     std::optional<std::size_t> accept_length) {
  StepOutcome out;
  std::vector<Successor> all = successors(w);
  if (all.empty()) {
    out.kind = StepOutcome::Kind::Stuck;
    return out;
  }
  if (policy.mode == DeterminismPolicy::Mode::Strict) {
    if (all.size() == 1) {
      out.kind = StepOutcome::Kind::Unique;
      out.next = std::move(all.front());
      out.count = 1;
    } else {
      out.kind = StepOutcome::Kind::Ambiguous;
      out.count = all.size();
    }
    return out;
  }

  std::vector<Successor> next = distinct(std::move(all));
  if (next.size() > policy.max_branch) {
    out.kind = StepOutcome::Kind::BranchOverflow;
    out.count = next.size();
    return out;
  }
  if (next.size() == 1) {
    out.kind = StepOutcome::Kind::Unique;
    out.next = std::move(next.front());
    out.count = 1;
    return out;
  }

  Pruner pruner(successors, policy, accept_length);
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < next.size(); ++i) {
    const Fate f = pruner.fate(next[i].result, policy.depth);
    if (f == Fate::Overflow) {
      out.kind = StepOutcome::Kind::BranchOverflow;
      out.count = next.size();
      return out;
    }
    if (f == Fate::Alive) live.push_back(i);
  }
  if (live.size() == 1) {
    out.kind = StepOutcome::Kind::Unique;
    out.next = std::move(next[live.front()]);
    out.count = 1;
  } else {
    // Either several branches survive or every branch dies.
    out.kind = StepOutcome::Kind::Ambiguous;
    out.count = live.empty() ? next.size() : live.size();
  }
  return out;
}

ClosureOutcome det_closure(const SuccessorFn& successors, std::string_view w, std::size_t budget,
                           const DeterminismPolicy& policy, const ClosureOptions& options) {
  ClosureOutcome out;
  BitString current(w);

  // Brent's cycle detection: compare against a checkpoint refreshed at powers of two.
  BitString checkpoint = current;
  std::size_t power = 1;
  std::size_t since_checkpoint = 0;

  auto stop = [&](ClosureOutcome::Reason reason) {
    out.status = ClosureOutcome::Status::NotTerminal;
    out.reason = reason;
    out.result = std::move(current);
    return out;
  };

  for (;;) {
    if (options.abandon && options.abandon(current, budget - out.steps)) {
      return stop(ClosureOutcome::Reason::Abandoned);
    }
    StepOutcome s = det_step(successors, current, policy, options.accept_length);
    switch (s.kind) {
      case StepOutcome::Kind::Stuck:
        out.status = ClosureOutcome::Status::Terminal;
        out.result = std::move(current);
        return out;
      case StepOutcome::Kind::Ambiguous:
        out.ambiguity = s.count;
        return stop(ClosureOutcome::Reason::Ambiguous);
      case StepOutcome::Kind::BranchOverflow:
        return stop(ClosureOutcome::Reason::BranchOverflow);
      case StepOutcome::Kind::Unique:
        break;
    }
    if (out.steps >= budget) return stop(ClosureOutcome::Reason::BudgetExceeded);

    current = std::move(s.next.result);
    ++out.steps;
    if (options.record_trace) {
      out.trace.push_back({out.steps, s.next.rule, s.next.pos, current.size()});
    }

    if (options.detect_cycles) {
      if (current == checkpoint) return stop(ClosureOutcome::Reason::BudgetExceeded);
      if (++since_checkpoint == power) {
        checkpoint = current;
        power *= 2;
        since_checkpoint = 0;
      }
    }
  }
}

std::string trace_to_jsonl(const std::vector<TraceEntry>& trace) {
  std::string out;
  for (const auto& t : trace) {
    nlohmann::json j = {{"step", t.step}, {"rule", t.rule}, {"pos", t.pos}, {"len_after", t.len_after}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace owf
