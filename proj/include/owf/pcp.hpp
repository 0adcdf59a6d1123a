#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owf/bits.hpp"
#include "owf/coding.hpp"
#include "owf/derivation.hpp"
#include "owf/instance_codec.hpp"
#include "owf/machine.hpp"

namespace owf::pcp {

// Ordered pairs <u, v>; every u is nonempty.
class PairList {
 public:
  PairList() = default;
  explicit PairList(std::vector<StringPair> pairs);

  const std::vector<StringPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  friend bool operator==(const PairList&, const PairList&) = default;

 private:
  std::vector<StringPair> pairs_;
};

// x yields y under <u, v> when u y = x v.
struct YieldStep {
  std::size_t pair_index = 0;
  BitString result;
};

// One entry per applicable pair, in pair order.
std::vector<YieldStep> yield_successors(const PairList& g, std::string_view x);
SuccessorFn successor_fn(const PairList& g);

// det_closure over the yield relation; the same outcome, with forced steps
// taken in time |u| + |v|.
ClosureOutcome pcp_det_closure(const PairList& g, std::string_view x, std::size_t budget,
                               const DeterminismPolicy& policy, const ClosureOptions& options = {});

// True iff the pairs at `indices` can be applied one after another from x.
// The final string goes to *end when given.
bool verify_witness(const PairList& g, std::string_view x, const std::vector<std::size_t>& indices,
                    BitString* end = nullptr);

struct Instance {
  PairList pairs;
  BitString payload;
};

BitString serialize_instance(const Instance& inst);
std::optional<Instance> parse_instance(std::string_view bits, std::string* error = nullptr);

// "PCP v1" text files.
Instance read_text(std::string_view text);
std::string write_text(const Instance& inst);

// n^4, saturating.
std::size_t ptf_budget(std::size_t n);

// The closure ptf runs on a parsed instance (see staf_closure).
ClosureOutcome ptf_closure(const Instance& inst, const DeterminismPolicy& policy, bool record_trace = false);

// The Post-correspondence one-way function: like staf, with the yield
// relation as the step and budget |x|^4.
BitString ptf(std::string_view input, const DeterminismPolicy& policy = DeterminismPolicy::paper_pcp());

struct FamilySizes {
  std::size_t copy = 0;        // <c, c>
  std::size_t right = 0;       // <q a, b p>
  std::size_t right_end = 0;   // <q $, b p $>
  std::size_t left = 0;        // <c q a, p c b>
  std::size_t left_end = 0;    // <c q $, p c b $> or <c q $, p c $> when b is blank
};

struct PcpCompilation {
  PairList pairs;
  CodeTable table;
  FamilySizes families;
  std::string start;
  std::string halt;
  std::string marker = "$";
};

// Pairs over coded symbols that simulate M by rotating the configuration
// string  cells[0..head) q cells[head..) $  one symbol at a time. The end
// marker $ is a symbol of its own so a blank read inside the tape is not
// mistaken for the end of the tape.
PcpCompilation compile_pcp(const Machine& m, std::size_t n, std::uint64_t salt_seed = 0);

// code(s) . coded x . code($); length (|x| + 2) * l.
BitString pcp_encode_input(const PcpCompilation& c, const BitString& x);

// For a rotation  h A $ C  of a halted configuration returns the tape C A
// with trailing blanks removed; nullopt when w is not of that form or a blank
// remains among the output bits.
std::optional<BitString> pcp_decode_output(const PcpCompilation& c, std::string_view w);

}  // namespace owf::pcp
