#include "owf/semithue.hpp"

#include <algorithm>

#include "owf/error.hpp"

namespace owf::semithue {

RewriteSystem::RewriteSystem(std::vector<Rule> rules) : rules_(std::move(rules)) {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    require_bits(rules_[i].lhs, "rule lhs");
    require_bits(rules_[i].rhs, "rule rhs");
    if (rules_[i].lhs.empty()) throw Error("rule " + std::to_string(i) + " has an empty left-hand side");
  }
}

std::vector<Match> find_matches(const RewriteSystem& sys, std::string_view w) {
  std::vector<Match> out;
  const auto& rules = sys.rules();
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    const std::string_view tail = w.substr(pos);
    for (std::size_t r = 0; r < rules.size(); ++r) {
      if (tail.starts_with(rules[r].lhs)) out.push_back({r, pos});
    }
  }
  return out;
}

BitString apply_match(const RewriteSystem& sys, std::string_view w, const Match& m) {
  if (m.rule >= sys.size()) throw Error("match refers to an unknown rule");
  const Rule& r = sys.rules()[m.rule];
  if (m.pos > w.size() || !w.substr(m.pos).starts_with(r.lhs)) throw Error("invalid match");
  BitString out;
  out.reserve(w.size() - r.lhs.size() + r.rhs.size());
  out.append(w.substr(0, m.pos));
  out += r.rhs;
  out.append(w.substr(m.pos + r.lhs.size()));
  return out;
}

SuccessorFn successor_fn(const RewriteSystem& sys) {
  return [&sys](std::string_view w) {
    std::vector<Successor> out;
    for (const Match& m : find_matches(sys, w)) out.push_back({m.rule, m.pos, apply_match(sys, w, m)});
    return out;
  };
}

StepOutcome det_step(const RewriteSystem& sys, std::string_view w, const DeterminismPolicy& policy) {
  return owf::det_step(successor_fn(sys), w, policy);
}

ClosureOutcome det_closure(const RewriteSystem& sys, std::string_view w, std::size_t budget,
                           const DeterminismPolicy& policy, const ClosureOptions& options) {
  return owf::det_closure(successor_fn(sys), w, budget, policy, options);
}

namespace {

PairInstance to_pairs(const Instance& inst) {
  PairInstance p;
  for (const Rule& r : inst.system.rules()) p.pairs.push_back({r.lhs, r.rhs});
  p.payload = inst.payload;
  return p;
}

std::optional<Instance> from_pairs(PairInstance p, std::string* error) {
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    if (p.pairs[i].first.empty()) {
      if (error) *error = "rule " + std::to_string(i) + " has an empty left-hand side";
      return std::nullopt;
    }
    rules.push_back({std::move(p.pairs[i].first), std::move(p.pairs[i].second)});
  }
  return Instance{RewriteSystem(std::move(rules)), std::move(p.payload)};
}

}  // namespace

BitString serialize_instance(const Instance& inst) { return serialize_pairs(to_pairs(inst)); }

std::optional<Instance> parse_instance(std::string_view bits, std::string* error) {
  PairParse p = parse_pairs(bits);
  if (!p.instance) {
    if (error) *error = p.error;
    return std::nullopt;
  }
  return from_pairs(std::move(*p.instance), error);
}

Instance read_text(std::string_view text) {
  std::string error;
  auto inst = from_pairs(read_pair_text(text, "STS", "rules"), &error);
  if (!inst) throw Error(error);
  return std::move(*inst);
}

std::string write_text(const Instance& inst) { return write_pair_text(to_pairs(inst), "STS", "rules"); }

std::size_t staf_budget(std::size_t n) { return n * n + 4 * n + 2; }

ClosureOutcome staf_closure(const Instance& inst, const DeterminismPolicy& policy, bool record_trace) {
  const std::size_t n = inst.payload.size();
  // Each step shrinks the string by at most this much, so a string that
  // has grown too long can no longer end at length n.
  std::size_t max_shrink = 0;
  for (const Rule& r : inst.system.rules()) {
    if (r.lhs.size() > r.rhs.size()) max_shrink = std::max(max_shrink, r.lhs.size() - r.rhs.size());
  }
  ClosureOptions opts;
  opts.record_trace = record_trace;
  opts.abandon = [n, max_shrink](std::string_view w, std::size_t left) {
    return w.size() > n && w.size() - n > left * max_shrink;
  };
  opts.accept_length = n;
  return det_closure(inst.system, inst.payload, staf_budget(n), policy, opts);
}

BitString staf(std::string_view input, const DeterminismPolicy& policy) {
  auto inst = parse_instance(input);
  if (!inst) return BitString(input);
  const ClosureOutcome out = staf_closure(*inst, policy);
  if (!out.terminal() || out.result.size() != inst->payload.size()) return BitString(input);
  inst->payload = out.result;
  return serialize_instance(*inst);
}

}  // namespace owf::semithue
