#include "owf/verify.hpp"

#include <cmath>
#include <sstream>

#include "owf/coding.hpp"
#include "owf/pcp.hpp"
#include "owf/sampler.hpp"
#include "owf/stcompile.hpp"
#include "owf/tiling.hpp"

namespace owf::verify {

bool Report::ok() const {
  for (const auto& c : checks) {
    if (!c.pass && !c.expected_fail) return false;
  }
  return true;
}

std::string Report::table() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    const char* tag = c.pass ? "PASS" : c.expected_fail ? "EXPECTED-FAIL" : "FAIL";
    out << tag << "  " << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
  }
  return out.str();
}

std::string zigzag_source() {
  return "TM v1\n"
         "start: s\n"
         "halt: h\n"
         "s 0 -> p0 B R\n"
         "s 1 -> p1 B R\n"
         "s B -> h B R\n"
         "p0 0 -> p0 0 L\n"
         "p0 1 -> p0 1 L\n"
         "p0 B -> h 0 R\n"
         "p1 0 -> p1 0 L\n"
         "p1 1 -> p1 1 L\n"
         "p1 B -> h 1 R\n";
}

namespace {

std::string count(std::size_t ok, std::size_t total) { return std::to_string(ok) + "/" + std::to_string(total); }

std::optional<BitString> oracle(const Machine& m, const BitString& x) {
  const RunResult r = run(m, x, 1u << 20);
  if (const auto* h = std::get_if<Halted>(&r)) return h->output;
  return std::nullopt;
}

}  // namespace

Report lemma_suite(const Machine& m, std::size_t n_max, const DeterminismPolicy& st_policy, unsigned backends) {
  Report rep;
  std::optional<stcompile::StCompilation> st;
  std::optional<pcp::PcpCompilation> pc;
  std::optional<tiling::TileCompilation> tc;
  if (backends & kSemithue) st = stcompile::compile_semithue(m, n_max);
  if (backends & kPcp) pc = pcp::compile_pcp(m, n_max);
  if (backends & kTiling) tc = tiling::compile_tileset(m);

  for (std::size_t n = 1; n <= n_max; ++n) {
    std::size_t st_ok = 0, st_total = 0, pc_ok = 0, tc_ok = 0;
    std::string st_first, pc_first, tc_first;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      const BitString x = to_binary(v, static_cast<int>(n));
      const auto want = oracle(m, x);

      if (st && block_decompose(x)) {
        ++st_total;
        const BitString w = stcompile::st_encode_input(*st, x);
        ClosureOptions o;
        o.record_trace = false;
        o.accept_length = w.size();
        const auto out = semithue::det_closure(st->system, w, stcompile::st_budget(w.size()), st_policy, o);
        const auto y = out.terminal() ? stcompile::st_decode_output(*st, out.result) : std::nullopt;
        if (y && y == want) {
          ++st_ok;
        } else if (st_first.empty()) {
          st_first = "first miss x=" + x + ": " + to_string(out.reason) + " after " + std::to_string(out.steps);
        }
      }
      if (pc) {
        const BitString w = pcp::pcp_encode_input(*pc, x);
        ClosureOptions o;
        o.accept_length = w.size();
        const auto out =
            pcp::pcp_det_closure(pc->pairs, w, pcp::ptf_budget(w.size()), DeterminismPolicy::paper_pcp(), o);
        std::vector<std::size_t> idx;
        for (const auto& t : out.trace) idx.push_back(t.rule);
        BitString replayed;
        const bool replays = pcp::verify_witness(pc->pairs, w, idx, &replayed) && replayed == out.result;
        const auto y = out.terminal() ? pcp::pcp_decode_output(*pc, out.result) : std::nullopt;
        if (y && y == want && replays) {
          ++pc_ok;
        } else if (pc_first.empty()) {
          pc_first = "first miss x=" + x + ": " + to_string(out.reason);
        }
      }
      if (tc) {
        const auto r = tiling::tile_closure(tc->tiles, tiling::bottom_row(*tc, x), n * n + 2);
        const auto y = r.status == tiling::ClosureResult::Status::Completed ? tiling::decode_top(*tc, r.top, n)
                                                                             : std::nullopt;
        if (y && y == want) {
          ++tc_ok;
        } else if (tc_first.empty()) {
          tc_first = "first miss x=" + x + ": " + tiling::to_string(r.status) + " after " +
                     std::to_string(r.advances) + " rows";
        }
      }
    }
    const std::size_t all = std::size_t{1} << n;
    if (st) {
      rep.checks.push_back({"semithue lemma n=" + std::to_string(n) + " (" + st_policy.to_string() + ")",
                            st_ok == st_total, count(st_ok, st_total) + (st_first.empty() ? "" : "; " + st_first)});
    }
    if (pc) {
      rep.checks.push_back({"pcp lemma n=" + std::to_string(n), pc_ok == all,
                            count(pc_ok, all) + (pc_first.empty() ? "" : "; " + pc_first)});
    }
    if (tc) {
      rep.checks.push_back({"tiling lemma n=" + std::to_string(n), tc_ok == all,
                            count(tc_ok, all) + (tc_first.empty() ? "" : "; " + tc_first)});
    }
  }
  return rep;
}

Report coding_suite(const Machine& m, std::size_t n, std::size_t trials, std::uint64_t seed) {
  Report rep;
  const auto c = stcompile::compile_semithue(m, n, seed);
  const std::vector<std::string>& alphabet = c.table.alphabet;
  sampler::Rng rng(seed);
  std::size_t p1 = 0, p2 = 0, p3 = 0, p4 = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const BitString x = sampler::uniform_bits(rng, n);
    const BitString y = sampler::uniform_bits(rng, n);
    const auto table = build_code_table(alphabet, n, {}, rng());
    const PropertyReport r = verify_properties(table, x, y);
    p1 += r.equal_length.pass;
    p2 += r.distinguishable.pass;
    p3 += r.self_aligning.pass;
    bool structural = true;
    for (const auto& b : kBlocks) {
      for (const auto& code : table.codes) structural = structural && !code.starts_with(b);
    }
    p4 += structural;
  }
  const double bound = 2.0 * static_cast<double>(alphabet.size()) * static_cast<double>(n) /
                       std::ldexp(1.0, code_payload_bits(alphabet.size(), n));
  const double p = std::min(bound, 1.0);
  const double allowed = trials * p + 2.326 * std::sqrt(trials * p * (1 - p));
  const std::size_t fails2 = trials - p2;
  rep.checks.push_back({"property 1: equal lengths", p1 == trials, count(p1, trials)});
  rep.checks.push_back({"property 2: codes absent from payloads", fails2 <= allowed,
                        std::to_string(fails2) + " failures, allowed " + std::to_string(allowed)});
  rep.checks.push_back({"property 3: self-aligning", p3 == trials, count(p3, trials)});
  rep.checks.push_back({"property 4: no block prefixes a code", p4 == trials, count(p4, trials)});
  return rep;
}

Report determinism_suite(const Machine& m) {
  Report rep;

  {
    const auto c = stcompile::compile_semithue(m, 5);
    const BitString x = "10001";
    const BitString in = semithue::serialize_instance({c.system, stcompile::st_encode_input(c, x)});
    const auto strict = semithue::staf_closure({c.system, stcompile::st_encode_input(c, x)},
                                               DeterminismPolicy::strict());
    const bool strict_identity = semithue::staf(in, DeterminismPolicy::strict()) == in;
    rep.checks.push_back({"strict staf returns its input on x=10001", strict_identity,
                          to_string(strict.reason) + " at step " + std::to_string(strict.steps)});
    const bool la = semithue::staf(in, DeterminismPolicy::lookahead(8)) != in;
    // Known to fail: the shuttle can read into the end-marker code.
    rep.checks.push_back({"lookahead:8 staf succeeds on x=10001", la, "", true});
    const auto acc = DeterminismPolicy::lookahead_accept(2 * c.table.l);
    rep.checks.push_back({acc.to_string() + " staf succeeds on x=10001", semithue::staf(in, acc) != in, ""});
  }

  {
    const auto c = pcp::compile_pcp(m, 4);
    std::size_t left = 0, left_ok = 0, right = 0, right_ok = 0;
    const std::string rest = c.table.code("0") + c.table.code("$");
    for (int q = 0; q < static_cast<int>(m.state_count()); ++q) {
      if (q == m.halt()) continue;
      for (Symbol a : kTapeSymbols) {
        const Transition& tr = m.transition(q, a);
        const BitString qa = c.table.code(m.state_name(q)) + c.table.code(symbol_name(a));
        if (tr.move == Direction::Left) {
          for (Symbol d : kTapeSymbols) {
            const BitString w = c.table.code(symbol_name(d)) + qa + rest;
            const auto succ = pcp::yield_successors(c.pairs, w);
            ++left;
            bool ok = succ.size() == 2;
            if (ok) {
              // The copy pair rotates d to the back; nothing applies after that.
              for (const auto& s : succ) {
                if (s.pair_index < c.families.copy) ok = ok && pcp::yield_successors(c.pairs, s.result).empty();
              }
            }
            left_ok += ok;
          }
        } else {
          ++right;
          right_ok += pcp::yield_successors(c.pairs, qa + rest).size() == 1;
        }
      }
    }
    rep.checks.push_back({"pcp left-move configurations: 2 successors, rotation stuck", left_ok == left,
                          count(left_ok, left)});
    rep.checks.push_back({"pcp right-move configurations: 1 successor", right_ok == right, count(right_ok, right)});
  }

  {
    const Machine z = parse_machine(zigzag_source());
    const auto split = tiling::compile_tileset(z, true);
    const auto unsplit = tiling::compile_tileset(z, false);
    const BitString x = "10";
    const auto rs = tiling::tile_closure(split.tiles, tiling::bottom_row(split, x), 6);
    const auto ru = tiling::tile_closure(unsplit.tiles, tiling::bottom_row(unsplit, x), 6);
    rep.checks.push_back({"unsplit tiling of a two-direction machine is ambiguous",
                          ru.status == tiling::ClosureResult::Status::AmbiguousRow, tiling::to_string(ru.status)});
    rep.checks.push_back({"split tiling of the same machine completes",
                          rs.status == tiling::ClosureResult::Status::Completed, tiling::to_string(rs.status)});
  }
  return rep;
}

}  // namespace owf::verify
