// One line per acceptance criterion, then informational lines. Exit status is
// 0 only when every criterion passes.
#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "owf/coding.hpp"
#include "owf/inverter.hpp"
#include "owf/pcp.hpp"
#include "owf/sampler.hpp"
#include "owf/semithue.hpp"
#include "owf/stcompile.hpp"
#include "owf/tiling.hpp"
#include "owf/verify.hpp"

using namespace owf;
using Clock = std::chrono::steady_clock;

namespace {

// The sample machines' functions, written directly on strings.
BitString g(std::string_view name, const BitString& x) {
  BitString y = x;
  if (name == "not") {
    for (char& c : y) c = c == '0' ? '1' : '0';
  } else if (name == "rot-pair") {
    for (std::size_t i = 0; i + 1 < y.size(); i += 2) std::swap(y[i], y[i + 1]);
  }
  return y;
}

std::vector<BitString> all_inputs(std::size_t n_max, bool decomposable_only) {
  std::vector<BitString> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      BitString x = to_binary(v, static_cast<int>(n));
      if (!decomposable_only || block_decompose(x)) out.push_back(std::move(x));
    }
  }
  return out;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string frac(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

std::string fmt(double v, int prec = 3) {
  std::ostringstream o;
  o.precision(prec);
  o << v;
  return o.str();
}

struct Line {
  std::string id;
  bool pass;
  std::string detail;
};

std::vector<Line> results;
std::vector<std::string> infos;

void report(const std::string& id, bool pass, const std::string& detail) {
  results.push_back({id, pass, detail});
  std::printf("criterion %-2s %s  %s\n", id.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

void info(const std::string& text) {
  infos.push_back(text);
  std::printf("info  %s\n", text.c_str());
  std::fflush(stdout);
}

// ---- 1 and 2 --------------------------------------------------------------

struct StRun {
  std::size_t cases = 0, exact = 0, step_ok = 0, budget_ok = 0, r1_ok = 0;
  std::size_t worst_slack = 0;  // largest steps - (T + 2|x| + 2|y| + 2)
  std::string first_miss;
};

StRun semithue_runs(const DeterminismPolicy& policy, bool per_machine_depth) {
  StRun s;
  for (const char* name : {"id", "not", "rot-pair"}) {
    const Machine m = library_machine(name);
    const auto c = stcompile::compile_semithue(m, 6);
    const DeterminismPolicy p = per_machine_depth ? DeterminismPolicy::lookahead_accept(2 * c.table.l) : policy;
    const BitString end = c.table.code(c.marker);
    for (const auto& x : all_inputs(6, true)) {
      ++s.cases;
      const BitString w = stcompile::st_encode_input(c, x);
      const BitString y = g(name, x);
      ClosureOptions o;
      o.accept_length = w.size();
      const auto out = semithue::det_closure(c.system, w, stcompile::st_budget(w.size()), p, o);
      if (!out.terminal() || out.result != end + y + end) {
        if (s.first_miss.empty()) {
          s.first_miss = std::string(name) + " x=" + x + " " + to_string(out.reason) + " at step " +
                         std::to_string(out.steps);
        }
        continue;
      }
      ++s.exact;
      const auto t = std::get<Halted>(run(m, x, 1u << 20)).steps;
      const std::size_t base = t + 2 * x.size() + 2 * y.size() + 2;
      s.step_ok += out.steps <= base + t;
      if (out.steps > base) s.worst_slack = std::max(s.worst_slack, out.steps - base);
      s.budget_ok += out.steps <= stcompile::st_budget(w.size());
      const std::size_t r1 = std::count_if(out.trace.begin(), out.trace.end(),
                                           [&](const TraceEntry& e) { return e.rule < c.phases.conversion; });
      s.r1_ok += r1 == stcompile::conversion_steps(x);
    }
  }
  return s;
}

void criteria_1_2() {
  auto t0 = Clock::now();
  const auto faithful = semithue_runs(DeterminismPolicy::lookahead(8), false);
  const double secs = seconds_since(t0);
  report("1", faithful.exact == faithful.cases && secs < 60,
         "lookahead:8 exact " + frac(faithful.exact, faithful.cases) + ", " + fmt(secs) + " s" +
             (faithful.first_miss.empty() ? "" : "; first miss " + faithful.first_miss));

  const bool all2 = faithful.exact == faithful.cases && faithful.step_ok == faithful.cases &&
                    faithful.budget_ok == faithful.cases && faithful.r1_ok == faithful.cases;
  report("2", all2,
         "on lookahead:8 runs: terminal " + frac(faithful.exact, faithful.cases) + ", step bound " +
             frac(faithful.step_ok, faithful.cases) + ", st_budget " + frac(faithful.budget_ok, faithful.cases) +
             ", R1 exact " + frac(faithful.r1_ok, faithful.cases));

  t0 = Clock::now();
  const auto acc = semithue_runs({}, true);
  info("1 under lookahead-accept:2l: exact " + frac(acc.exact, acc.cases) + ", " + fmt(seconds_since(t0)) + " s" +
       (acc.first_miss.empty() ? "" : "; first miss " + acc.first_miss));
  info("2 under lookahead-accept:2l: step bound " + frac(acc.step_ok, acc.cases) + " (largest slack used " +
       std::to_string(acc.worst_slack) + "), st_budget " + frac(acc.budget_ok, acc.cases) + ", R1 exact " +
       frac(acc.r1_ok, acc.cases));
}

// ---- 3 ----------------------------------------------------------------------

void criterion_3() {
  const auto t0 = Clock::now();
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> by_n;  // n -> (ok, total)
  std::string first_miss;
  for (const char* name : {"id", "not"}) {
    const auto c = tiling::compile_tileset(library_machine(name));
    for (const auto& x : all_inputs(5, false)) {
      const std::size_t n = x.size();
      const auto bottom = tiling::bottom_row(c, x);
      const auto r = tiling::tile_closure(c.tiles, bottom, n * n + 2);
      const bool ok = r.status == tiling::ClosureResult::Status::Completed && bottom.size() == n * n + 2 &&
                      tiling::decode_top(c, r.top, n) == g(name, x);
      auto& [good, total] = by_n[n];
      ++total;
      good += ok;
      if (!ok && first_miss.empty()) {
        first_miss = std::string(name) + " x=" + x + " " + tiling::to_string(r.status) + " after " +
                     std::to_string(r.advances) + " rows";
      }
    }
  }
  const double secs = seconds_since(t0);
  std::size_t good = 0, total = 0;
  std::string per_n;
  for (const auto& [n, p] : by_n) {
    good += p.first;
    total += p.second;
    per_n += " n=" + std::to_string(n) + ":" + frac(p.first, p.second);
  }
  report("3", good == total && secs < 60,
         "exact " + frac(good, total) + " (" + per_n.substr(1) + "), " + fmt(secs) + " s" +
             (first_miss.empty() ? "" : "; first miss " + first_miss));
  bool rest = true;
  for (const auto& [n, p] : by_n) rest = rest && (n == 1 || p.first == p.second);
  info(std::string("3 restricted to n=2..5: ") + (rest ? "all exact" : "misses remain"));
}

// ---- 4 ----------------------------------------------------------------------

void criterion_4() {
  const auto t0 = Clock::now();
  std::size_t good = 0, total = 0;
  std::string first_miss;
  for (const char* name : {"id", "not"}) {
    const auto c = pcp::compile_pcp(library_machine(name), 5);
    for (const auto& x : all_inputs(5, false)) {
      ++total;
      const BitString w = pcp::pcp_encode_input(c, x);
      const std::size_t bound = pcp::ptf_budget(w.size());
      ClosureOptions o;
      o.accept_length = w.size();
      const auto out = pcp::pcp_det_closure(c.pairs, w, bound, DeterminismPolicy::paper_pcp(), o);
      std::vector<std::size_t> idx;
      for (const auto& e : out.trace) idx.push_back(e.rule);
      BitString end;
      const bool ok = out.terminal() && out.steps <= bound && pcp::verify_witness(c.pairs, w, idx, &end) &&
                      end == out.result && pcp::pcp_decode_output(c, out.result) == g(name, x);
      good += ok;
      if (!ok && first_miss.empty()) first_miss = std::string(name) + " x=" + x + " " + to_string(out.reason);
    }
  }
  const double secs = seconds_since(t0);
  report("4", good == total && secs < 120,
         "paper-pcp exact " + frac(good, total) + ", " + fmt(secs) + " s" +
             (first_miss.empty() ? "" : "; first miss " + first_miss));
}

// ---- 5 ----------------------------------------------------------------------

void criterion_5() {
  const auto t0 = Clock::now();
  const auto rep = verify::coding_suite(library_machine("not"), 256, 1000, 2024);
  const double secs = seconds_since(t0);
  std::string detail;
  for (const auto& c : rep.checks) detail += c.name.substr(0, c.name.find(':')) + " " + (c.pass ? "ok" : "FAIL") +
                                             " (" + c.detail + "); ";
  report("5", rep.ok() && secs < 30, detail + fmt(secs) + " s");
}

// ---- 6 ----------------------------------------------------------------------

void criterion_6() {
  const auto t0 = Clock::now();
  const auto la = DeterminismPolicy::lookahead(8);
  sampler::Rng rng(6);
  std::size_t length_bad = 0, idem_bad = 0, inputs = 0;
  auto check = [&](const BitString& x) {
    ++inputs;
    const BitString s = semithue::staf(x, la);
    const BitString p = pcp::ptf(x);
    const BitString t = tiling::tiling_f(x);
    length_bad += (s.size() != x.size()) + (p.size() != x.size()) + (t.size() != x.size());
    idem_bad += (semithue::staf(s, la) != s) + (pcp::ptf(p) != p);
  };
  std::uniform_int_distribution<std::size_t> len(0, 128);
  for (int i = 0; i < 10000; ++i) check(sampler::uniform_bits(rng, len(rng)));
  const sampler::DefaultUniform d;
  for (int i = 0; i < 1000; ++i) {
    check(semithue::serialize_instance(sampler::sample_sts_instance(d, rng).instance));
    check(pcp::serialize_instance(sampler::sample_pcp_instance(d, rng).instance));
    check(tiling::serialize_instance(sampler::sample_tiling_instance(d, rng)));
  }
  report("6", length_bad == 0 && idem_bad == 0,
         std::to_string(inputs) + " inputs, length violations " + std::to_string(length_bad) +
             ", idempotence violations " + std::to_string(idem_bad) + ", " + fmt(seconds_since(t0)) + " s");
}

// ---- 7 ----------------------------------------------------------------------

void criterion_7() {
  const auto rep = verify::determinism_suite(library_machine("not"));
  // The suite marks the lookahead:8 check as a known failure; the criterion
  // itself requires it, so it counts here.
  bool all = true;
  std::string detail;
  for (const auto& c : rep.checks) {
    const bool counts = c.name.find("lookahead-accept") == std::string::npos;
    if (counts) {
      all = all && c.pass;
      detail += std::string(c.pass ? "ok" : "FAIL") + ": " + c.name + "; ";
    } else {
      info(std::string("7 ") + c.name + ": " + (c.pass ? "yes" : "no"));
    }
  }
  report("7", all, detail.substr(0, detail.size() - 2));
}

// ---- 8 ----------------------------------------------------------------------

void criterion_8() {
  const auto t0 = Clock::now();
  const Machine m = library_machine("not");
  const auto policy = DeterminismPolicy::paper_pcp();
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  constexpr int kTargets = 50;
  bool sound = true, mean_ok = true;
  std::string detail;
  double forward_s = 0, invert_s = 0;
  for (std::size_t n : {8u, 10u, 12u}) {
    const auto frame = inverter::compiled_frame(inverter::Kind::Ptf, m, n, 8);
    sampler::Rng rng(800 + n);
    double sum = 0;
    std::size_t recovered = 0;
    for (int i = 0; i < kTargets; ++i) {
      const BitString x = sampler::uniform_bits(rng, n);
      const BitString target = inverter::evaluate(inverter::Kind::Ptf, frame.embed(x), policy);
      const auto r = inverter::brute_invert(inverter::Kind::Ptf, target, frame, policy, {0, jobs});
      recovered += r.x == x;
      sum += static_cast<double>(r.attempts);
      if (n <= 10 && i < 3) {
        // Uniqueness by forward enumeration of the whole frame.
        std::size_t hits = 0;
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
          hits += inverter::evaluate(inverter::Kind::Ptf, frame.embed(to_binary(v, static_cast<int>(n))), policy) ==
                  target;
        }
        sound = sound && hits == 1;
      }
    }
    sound = sound && recovered == kTargets;
    const double big = std::ldexp(1.0, static_cast<int>(n));
    const double mean = sum / kTargets;
    const double sigma = std::sqrt((big * big - 1) / 12.0 / kTargets);
    const double z = (mean - (big + 1) / 2) / sigma;
    mean_ok = mean_ok && std::abs(z) <= 3;
    detail += "n=" + std::to_string(n) + ": " + frac(recovered, kTargets) + " recovered, mean attempts " +
              fmt(mean, 5) + " (z=" + fmt(z, 2) + "); ";

    if (n == 12) {
      constexpr int kReps = 20;
      const BitString input = frame.embed(sampler::uniform_bits(rng, n));
      BitString target;
      auto f0 = Clock::now();
      for (int r = 0; r < kReps; ++r) target = inverter::evaluate(inverter::Kind::Ptf, input, policy);
      forward_s = seconds_since(f0) / kReps;
      // Timed single-threaded so the comparison is per core.
      constexpr int kInversions = 3;
      f0 = Clock::now();
      for (int r = 0; r < kInversions; ++r) {
        const BitString x = sampler::uniform_bits(rng, n);
        const BitString y = inverter::evaluate(inverter::Kind::Ptf, frame.embed(x), policy);
        inverter::brute_invert(inverter::Kind::Ptf, y, frame, policy, {0, 1});
      }
      invert_s = seconds_since(f0) / kInversions;
    }
  }
  const double ratio = invert_s / forward_s;
  report("8", sound && mean_ok && ratio >= 100,
         detail + "forward " + fmt(forward_s * 1e6) + " us vs inversion " + fmt(invert_s * 1e3) + " ms at n=12 (x" +
             fmt(ratio) + "), " + fmt(seconds_since(t0)) + " s");
}

// ---- 9 ----------------------------------------------------------------------

// Pearson statistic over bins with expected counts >= 5; the tail is pooled
// into the last bin. Returns the upper-tail p-value.
double chi_squared_p(const std::vector<double>& probs, const std::vector<std::size_t>& counts, std::size_t draws,
                     std::size_t* dof) {
  std::vector<double> e;
  std::vector<double> o;
  double pe = 0, po = 0, cum = 0;
  const double n = static_cast<double>(draws);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    pe += probs[i] * n;
    po += static_cast<double>(counts[i]);
    cum += probs[i];
    // Close a bin once it and everything after it both expect at least 5.
    if (pe >= 5 && (1 - cum) * n >= 5) {
      e.push_back(pe);
      o.push_back(po);
      pe = po = 0;
    }
  }
  if (e.empty()) {
    e.push_back(0);
    o.push_back(0);
  }
  e.back() += pe;
  o.back() += po;
  double stat = 0;
  for (std::size_t i = 0; i < e.size(); ++i) stat += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
  *dof = e.size() - 1;
  return boost::math::gamma_q(static_cast<double>(*dof) / 2, stat / 2);
}

void criterion_9() {
  constexpr std::size_t kDraws = 100000;
  const sampler::DefaultUniform d;
  sampler::Rng rng(9);

  // Integers: exact 1/n^2 weights as the reference, computed here.
  double z = 0;
  for (std::uint64_t n = 1; n <= d.max_int(); ++n) z += 1.0 / (double(n) * double(n));
  std::vector<double> pi(d.max_int());
  for (std::uint64_t n = 1; n <= d.max_int(); ++n) pi[n - 1] = 1.0 / (double(n) * double(n)) / z;
  std::vector<std::size_t> ci(d.max_int(), 0);
  for (std::size_t i = 0; i < kDraws; ++i) ++ci[d.sample_int(rng) - 1];
  std::size_t dof_i = 0;
  const double p_int = chi_squared_p(pi, ci, kDraws, &dof_i);

  // Strings: P(u) ~ 2^-|u| / |u|^2, i.e. length ~ 1/l^2 and bits uniform.
  // Bins are (length, value) for lengths up to 3 and length alone beyond.
  double zl = 0;
  for (std::size_t l = 1; l <= d.max_len(); ++l) zl += 1.0 / double(l * l);
  std::vector<double> ps;
  std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> bin_of;
  for (std::size_t l = 1; l <= d.max_len(); ++l) {
    const double pl = 1.0 / double(l * l) / zl;
    if (l <= 3) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << l); ++v) {
        bin_of[{l, v}] = ps.size();
        ps.push_back(pl / double(std::uint64_t{1} << l));
      }
    } else {
      bin_of[{l, 0}] = ps.size();
      ps.push_back(pl);
    }
  }
  std::vector<std::size_t> cs(ps.size(), 0);
  for (std::size_t i = 0; i < kDraws; ++i) {
    const BitString s = d.sample_string(rng);
    ++cs[bin_of.at({s.size(), s.size() <= 3 ? from_binary(s) : 0})];
  }
  std::size_t dof_s = 0;
  const double p_str = chi_squared_p(ps, cs, kDraws, &dof_s);

  report("9", p_int > 0.001 && p_str > 0.001,
         "integers p=" + fmt(p_int) + " (dof " + std::to_string(dof_i) + "), strings p=" + fmt(p_str) + " (dof " +
             std::to_string(dof_s) + ")");
}

}  // namespace

int main() {
  criteria_1_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::size_t passed = std::count_if(results.begin(), results.end(), [](const Line& l) { return l.pass; });
  std::printf("summary %zu/%zu criteria pass\n", passed, results.size());
  return passed == results.size() ? 0 : 1;
}
