#include "owf/pcp.hpp"

#include <algorithm>
#include <limits>

#include "owf/error.hpp"

namespace owf::pcp {

PairList::PairList(std::vector<StringPair> pairs) : pairs_(std::move(pairs)) {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    require_bits(pairs_[i].first, "pair u");
    require_bits(pairs_[i].second, "pair v");
    if (pairs_[i].first.empty()) throw Error("pair " + std::to_string(i) + " has an empty u");
  }
}

namespace {

bool applies(const StringPair& p, std::string_view x) {
  const std::string_view u = p.first;
  const std::string_view v = p.second;
  if (x.size() + v.size() < u.size()) return false;
  const std::size_t in_x = std::min(u.size(), x.size());
  return x.substr(0, in_x) == u.substr(0, in_x) && v.starts_with(u.substr(in_x));
}

// y with u y = x v, if there is one.
std::optional<BitString> yield_one(const StringPair& p, std::string_view x) {
  if (!applies(p, x)) return std::nullopt;
  const std::size_t in_x = std::min(p.first.size(), x.size());
  BitString y;
  y.reserve(x.size() + p.second.size() - p.first.size());
  y.append(x.substr(in_x));
  y.append(std::string_view(p.second).substr(p.first.size() - in_x));
  return y;
}

// The current string as a queue: a yield step drops a prefix and appends a
// suffix, so a forced step costs |u| + |v| instead of a copy of the string.
class Queue {
 public:
  explicit Queue(std::string_view w) : buf_(w) {}

  std::string_view view() const { return std::string_view(buf_).substr(head_); }

  void apply(const StringPair& p) {
    const std::size_t len = buf_.size() - head_;
    const std::size_t in_x = std::min(p.first.size(), len);
    head_ += in_x;
    buf_.append(std::string_view(p.second).substr(p.first.size() - in_x));
    if (head_ > 4096 && head_ * 2 > buf_.size()) {
      buf_.erase(0, head_);
      head_ = 0;
    }
  }

  void assign(BitString w) {
    buf_ = std::move(w);
    head_ = 0;
  }

 private:
  BitString buf_;
  std::size_t head_ = 0;
};

}  // namespace

std::vector<YieldStep> yield_successors(const PairList& g, std::string_view x) {
  std::vector<YieldStep> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (auto y = yield_one(g.pairs()[i], x)) out.push_back({i, std::move(*y)});
  }
  return out;
}

SuccessorFn successor_fn(const PairList& g) {
  return [&g](std::string_view x) {
    std::vector<Successor> out;
    for (auto& s : yield_successors(g, x)) out.push_back({s.pair_index, 0, std::move(s.result)});
    return out;
  };
}

ClosureOutcome pcp_det_closure(const PairList& g, std::string_view x, std::size_t budget,
                               const DeterminismPolicy& policy, const ClosureOptions& options) {
  // Same loop as det_closure. Only steps where two or more pairs apply go
  // through det_step; with a single applicable pair every policy steps.
  ClosureOutcome out;
  Queue current(x);
  const SuccessorFn successors = successor_fn(g);
  BitString checkpoint(x);
  std::size_t power = 1;
  std::size_t since_checkpoint = 0;

  auto stop = [&](ClosureOutcome::Reason reason) {
    out.status = ClosureOutcome::Status::NotTerminal;
    out.reason = reason;
    out.result = BitString(current.view());
    return out;
  };

  for (;;) {
    const std::string_view w = current.view();
    if (options.abandon && options.abandon(w, budget - out.steps)) return stop(ClosureOutcome::Reason::Abandoned);

    std::size_t first = g.size();
    std::size_t count = 0;
    for (std::size_t i = 0; i < g.size() && count < 2; ++i) {
      if (applies(g.pairs()[i], w)) {
        if (count == 0) first = i;
        ++count;
      }
    }
    if (count == 0) {
      out.status = ClosureOutcome::Status::Terminal;
      out.result = BitString(w);
      return out;
    }
    std::optional<Successor> chosen;
    if (count > 1) {
      StepOutcome s = det_step(successors, w, policy, options.accept_length);
      if (s.kind == StepOutcome::Kind::Ambiguous) {
        out.ambiguity = s.count;
        return stop(ClosureOutcome::Reason::Ambiguous);
      }
      if (s.kind == StepOutcome::Kind::BranchOverflow) return stop(ClosureOutcome::Reason::BranchOverflow);
      chosen = std::move(s.next);
    }
    if (out.steps >= budget) return stop(ClosureOutcome::Reason::BudgetExceeded);

    std::size_t index = first;
    if (chosen) {
      index = chosen->rule;
      current.assign(std::move(chosen->result));
    } else {
      current.apply(g.pairs()[first]);
    }
    ++out.steps;
    const std::string_view next = current.view();
    if (options.record_trace) out.trace.push_back({out.steps, index, 0, next.size()});

    if (options.detect_cycles) {
      if (next == checkpoint) return stop(ClosureOutcome::Reason::BudgetExceeded);
      if (++since_checkpoint == power) {
        checkpoint = BitString(next);
        power *= 2;
        since_checkpoint = 0;
      }
    }
  }
}

bool verify_witness(const PairList& g, std::string_view x, const std::vector<std::size_t>& indices, BitString* end) {
  BitString cur(x);
  for (std::size_t i : indices) {
    if (i >= g.size()) return false;
    auto y = yield_one(g.pairs()[i], cur);
    if (!y) return false;
    cur = std::move(*y);
  }
  if (end) *end = std::move(cur);
  return true;
}

namespace {

std::optional<Instance> from_pairs(PairInstance p, std::string* error) {
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    if (p.pairs[i].first.empty()) {
      if (error) *error = "pair " + std::to_string(i) + " has an empty u";
      return std::nullopt;
    }
  }
  return Instance{PairList(std::move(p.pairs)), std::move(p.payload)};
}

}  // namespace

BitString serialize_instance(const Instance& inst) {
  return serialize_pairs(PairInstance{inst.pairs.pairs(), inst.payload});
}

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
  auto inst = from_pairs(read_pair_text(text, "PCP", "pairs"), &error);
  if (!inst) throw Error(error);
  return std::move(*inst);
}

std::string write_text(const Instance& inst) {
  return write_pair_text(PairInstance{inst.pairs.pairs(), inst.payload}, "PCP", "pairs");
}

std::size_t ptf_budget(std::size_t n) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t out = 1;
  for (int i = 0; i < 4; ++i) {
    if (n != 0 && out > kMax / n) return kMax;
    out *= n;
  }
  return out;
}

ClosureOutcome ptf_closure(const Instance& inst, const DeterminismPolicy& policy, bool record_trace) {
  const std::size_t n = inst.payload.size();
  std::size_t max_shrink = 0;
  for (const StringPair& p : inst.pairs.pairs()) {
    if (p.first.size() > p.second.size()) max_shrink = std::max(max_shrink, p.first.size() - p.second.size());
  }
  ClosureOptions opts;
  opts.record_trace = record_trace;
  opts.abandon = [n, max_shrink](std::string_view w, std::size_t left) {
    return w.size() > n && w.size() - n > left * max_shrink;
  };
  opts.accept_length = n;
  return pcp_det_closure(inst.pairs, inst.payload, ptf_budget(n), policy, opts);
}

BitString ptf(std::string_view input, const DeterminismPolicy& policy) {
  auto inst = parse_instance(input);
  if (!inst) return BitString(input);
  const ClosureOutcome out = ptf_closure(*inst, policy);
  if (!out.terminal() || out.result.size() != inst->payload.size()) return BitString(input);
  inst->payload = out.result;
  return serialize_instance(*inst);
}

PcpCompilation compile_pcp(const Machine& m, std::size_t n, std::uint64_t salt_seed) {
  PcpCompilation c;
  c.start = m.state_name(m.start());
  c.halt = m.state_name(m.halt());

  std::vector<std::string> alphabet = {"0", "1", "B", c.marker};
  for (const auto& q : m.states()) {
    if (std::find(alphabet.begin(), alphabet.end(), q) != alphabet.end()) {
      throw Error("state name collides with a tape symbol: " + q);
    }
    alphabet.push_back(q);
  }
  c.table = build_code_table(std::move(alphabet), n, {}, salt_seed);

  const CodeTable& t = c.table;
  auto code = [&](std::string_view s) -> const BitString& { return t.code(s); };
  const BitString& end = code(c.marker);

  std::vector<StringPair> pairs;
  for (const char* sym : {"0", "1", "B", "$"}) pairs.push_back({code(sym), code(sym)});
  c.families.copy = pairs.size();

  for (int q = 0; q < static_cast<int>(m.state_count()); ++q) {
    if (q == m.halt()) continue;
    const BitString& cq = code(m.state_name(q));
    for (Symbol a : kTapeSymbols) {
      const Transition& tr = m.transition(q, a);
      const BitString& ca = code(symbol_name(a));
      const BitString& cb = code(symbol_name(tr.write));
      const BitString& cp = code(m.state_name(tr.next));
      if (tr.move == Direction::Right) {
        pairs.push_back({cq + ca, cb + cp});
        ++c.families.right;
        if (a == Symbol::Blank) {
          pairs.push_back({cq + end, cb + cp + end});
          ++c.families.right_end;
        }
      } else {
        for (Symbol d : kTapeSymbols) {
          const BitString& cd = code(symbol_name(d));
          pairs.push_back({cd + cq + ca, cp + cd + cb});
          ++c.families.left;
          if (a == Symbol::Blank) {
            // Writing a blank past the end leaves the tape as it was.
            pairs.push_back({cd + cq + end, tr.write == Symbol::Blank ? cp + cd + end : cp + cd + cb + end});
            ++c.families.left_end;
          }
        }
      }
    }
  }
  c.pairs = PairList(std::move(pairs));
  return c;
}

BitString pcp_encode_input(const PcpCompilation& c, const BitString& x) {
  require_bits(x, "payload");
  BitString out = c.table.code(c.start);
  for (char ch : x) out += c.table.code(std::string_view(&ch, 1));
  out += c.table.code(c.marker);
  return out;
}

std::optional<BitString> pcp_decode_output(const PcpCompilation& c, std::string_view w) {
  const std::size_t l = static_cast<std::size_t>(c.table.l);
  if (w.empty() || w.size() % l != 0) return std::nullopt;
  std::vector<std::string_view> syms;
  for (std::size_t i = 0; i < w.size(); i += l) {
    auto idx = c.table.lookup(w.substr(i, l));
    if (!idx) return std::nullopt;
    syms.push_back(c.table.alphabet[*idx]);
  }
  if (syms.front() != c.halt) return std::nullopt;
  std::optional<std::size_t> end;
  for (std::size_t i = 1; i < syms.size(); ++i) {
    const std::string_view s = syms[i];
    if (s == c.marker) {
      if (end) return std::nullopt;
      end = i;
    } else if (s != "0" && s != "1" && s != "B") {
      return std::nullopt;
    }
  }
  if (!end) return std::nullopt;

  BitString tape;
  for (std::size_t i = *end + 1; i < syms.size(); ++i) tape += syms[i];
  for (std::size_t i = 1; i < *end; ++i) tape += syms[i];
  while (!tape.empty() && tape.back() == 'B') tape.pop_back();
  if (tape.find('B') != BitString::npos) return std::nullopt;
  return tape;
}

}  // namespace owf::pcp
