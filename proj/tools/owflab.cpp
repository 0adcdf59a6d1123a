#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "owf/error.hpp"
#include "owf/inverter.hpp"
#include "owf/pcp.hpp"
#include "owf/sampler.hpp"
#include "owf/semithue.hpp"
#include "owf/stcompile.hpp"
#include "owf/tiling.hpp"
#include "owf/verify.hpp"

namespace fs = std::filesystem;
using namespace owf;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

DeterminismPolicy semantics_for(inverter::Kind kind, const std::string& text) {
  if (!text.empty()) return DeterminismPolicy::parse(text);
  return kind == inverter::Kind::Ptf ? DeterminismPolicy::paper_pcp() : DeterminismPolicy::lookahead(8);
}

const std::vector<std::string> kBackends = {"semithue", "pcp", "tiling"};

// ---- compile ----------------------------------------------------------------

struct CompileArgs {
  std::string backend, machine, out, input;
  std::size_t n = 0;
  std::uint64_t salt = 0;
};

int cmd_compile(const CompileArgs& a) {
  const Machine m = load_machine(a.machine);
  fs::create_directories(a.out);
  const inverter::Kind kind = inverter::parse_kind(a.backend);
  switch (kind) {
    case inverter::Kind::Staf: {
      const auto c = stcompile::compile_semithue(m, a.n, a.salt);
      const BitString payload = a.input.empty() ? BitString() : stcompile::st_encode_input(c, a.input);
      write_file(fs::path(a.out) / "system.sts", semithue::write_text({c.system, payload}));
      write_file(fs::path(a.out) / "codes.json", c.table.to_json().dump(2) + "\n");
      std::cout << "rules: " << c.system.size() << " (conversion " << c.phases.conversion << ", machine "
                << c.phases.machine << ", decoding " << c.phases.decoding << ")\n"
                << "code length: " << c.table.l << " (m=" << c.table.m << ", salt=" << c.table.salt << ")\n";
      break;
    }
    case inverter::Kind::Ptf: {
      const auto c = pcp::compile_pcp(m, a.n, a.salt);
      const BitString payload = a.input.empty() ? BitString() : pcp::pcp_encode_input(c, a.input);
      write_file(fs::path(a.out) / "system.pcp", pcp::write_text({c.pairs, payload}));
      write_file(fs::path(a.out) / "codes.json", c.table.to_json().dump(2) + "\n");
      const auto& f = c.families;
      std::cout << "pairs: " << c.pairs.size() << " (copy " << f.copy << ", right " << f.right << ", right-end "
                << f.right_end << ", left " << f.left << ", left-end " << f.left_end << ")\n"
                << "code length: " << c.table.l << " (m=" << c.table.m << ", salt=" << c.table.salt << ")\n";
      break;
    }
    case inverter::Kind::Tiling: {
      const auto c = tiling::compile_tileset(m);
      const BitString x = a.input.empty() ? BitString(std::max<std::size_t>(a.n, 1), '0') : a.input;
      write_file(fs::path(a.out) / "system.tiles", tiling::write_text({c.tiles, tiling::bottom_row(c, x)}));
      std::cout << "tiles: " << c.tiles.tiles().size() << " (symbols " << c.tiles.symbol_count() << ")\n";
      break;
    }
  }
  return kOk;
}

// ---- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string backend, instance, semantics, trace;
  bool bits = false;
};

int cmd_eval(const EvalArgs& a) {
  const inverter::Kind kind = inverter::parse_kind(a.backend);
  const DeterminismPolicy policy = semantics_for(kind, a.semantics);
  const std::string text = slurp(a.instance);

  // Pure-string inputs are total: anything that fails to parse is its own image.
  if (a.bits) {
    const BitString in = trim(text);
    require_bits(in, "instance");
    const BitString out = inverter::evaluate(kind, in, policy);
    std::cout << out << '\n';
    if (out == in) std::cerr << "note: identity\n";
    return kOk;
  }

  std::ofstream trace;
  if (!a.trace.empty()) {
    trace.open(a.trace);
    if (!trace) throw Error("cannot write " + a.trace);
  }

  auto report = [&](const ClosureOutcome& out, std::size_t n) {
    if (trace.is_open()) trace << trace_to_jsonl(out.trace);
    if (!out.terminal()) {
      std::cerr << "note: identity (" << to_string(out.reason);
      if (out.reason == ClosureOutcome::Reason::Ambiguous) {
        std::cerr << " at step " << out.steps << ", " << out.ambiguity << " live branches";
      }
      std::cerr << ")\n";
      return false;
    }
    if (out.result.size() != n) {
      std::cerr << "note: identity (terminal after " << out.steps << " steps has length " << out.result.size()
                << ", not " << n << ")\n";
      return false;
    }
    std::cerr << "note: terminal after " << out.steps << " steps\n";
    return true;
  };

  switch (kind) {
    case inverter::Kind::Staf: {
      auto inst = semithue::read_text(text);
      const auto out = semithue::staf_closure(inst, policy, trace.is_open());
      if (report(out, inst.payload.size())) inst.payload = out.result;
      std::cout << semithue::write_text(inst);
      break;
    }
    case inverter::Kind::Ptf: {
      auto inst = pcp::read_text(text);
      const auto out = pcp::ptf_closure(inst, policy, trace.is_open());
      if (report(out, inst.payload.size())) inst.payload = out.result;
      std::cout << pcp::write_text(inst);
      break;
    }
    case inverter::Kind::Tiling: {
      auto inst = tiling::read_text(text);
      const auto r = tiling::tile_closure(inst.tiles, inst.row, inst.row.size(), trace.is_open());
      if (trace.is_open()) {
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
          nlohmann::json row = nlohmann::json::array();
          for (int s : r.rows[i]) row.push_back(inst.tiles.symbol_name(s));
          trace << nlohmann::json{{"row", i}, {"symbols", row}}.dump() << '\n';
        }
      }
      if (r.status == tiling::ClosureResult::Status::Completed) {
        inst.row = r.top;
        std::cerr << "note: completed after " << r.advances << " rows\n";
      } else {
        std::cerr << "note: identity (" << tiling::to_string(r.status) << " after " << r.advances << " rows)\n";
      }
      std::cout << tiling::write_text(inst);
      break;
    }
  }
  return kOk;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string suite, machine = "not", semantics = "lookahead:8";
  std::size_t n_max = 4, n = 256, trials = 1000;
  std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs& a) {
  const Machine m = load_machine(a.machine);
  verify::Report rep;
  auto add = [&](const verify::Report& r) { rep.checks.insert(rep.checks.end(), r.checks.begin(), r.checks.end()); };
  if (a.suite == "lemma" || a.suite == "all") add(verify::lemma_suite(m, a.n_max, DeterminismPolicy::parse(a.semantics)));
  if (a.suite == "coding" || a.suite == "all") add(verify::coding_suite(m, a.n, a.trials, a.seed));
  if (a.suite == "determinism" || a.suite == "all") add(verify::determinism_suite(m));
  std::cout << rep.table();
  return rep.ok() ? kOk : kFailed;
}

// ---- sample -----------------------------------------------------------------

struct SampleArgs {
  std::string kind = "string";
  std::size_t count = 1, max_len = 64;
  std::uint64_t seed = 0, max_int = 65536;
  bool bits = false;
};

int cmd_sample(const SampleArgs& a) {
  const sampler::DefaultUniform d(a.max_int, a.max_len);
  sampler::Rng rng(a.seed);
  for (std::size_t i = 0; i < a.count; ++i) {
    if (a.kind == "int") {
      std::cout << d.sample_int(rng) << '\n';
    } else if (a.kind == "string") {
      std::cout << d.sample_string(rng) << '\n';
    } else if (a.kind == "sts") {
      const auto s = sampler::sample_sts_instance(d, rng);
      std::cout << (a.bits ? semithue::serialize_instance(s.instance) + "\n" : semithue::write_text(s.instance));
    } else if (a.kind == "pcp") {
      const auto s = sampler::sample_pcp_instance(d, rng);
      std::cout << (a.bits ? pcp::serialize_instance(s.instance) + "\n" : pcp::write_text(s.instance));
    } else {
      const auto s = sampler::sample_tiling_instance(d, rng);
      std::cout << (a.bits ? tiling::serialize_instance(s) + "\n" : tiling::write_text(s));
    }
  }
  return kOk;
}

// ---- invert -----------------------------------------------------------------

struct InvertArgs {
  std::string backend, instance, machine, x, semantics;
  std::size_t n = 0;
  std::uint64_t limit = 0, salt = 0;
  unsigned jobs = 1;
  bool bits = false;
};

int cmd_invert(const InvertArgs& a) {
  using Clock = std::chrono::steady_clock;
  const inverter::Kind kind = inverter::parse_kind(a.backend);
  const DeterminismPolicy policy = semantics_for(kind, a.semantics);
  inverter::InvertOptions opts;
  opts.limit = a.limit;
  opts.jobs = a.jobs;

  inverter::InvertResult r;
  const auto t0 = Clock::now();
  if (!a.machine.empty()) {
    if (a.x.empty()) throw Error("--machine needs --x (the input whose image is inverted)");
    require_bits(a.x, "--x");
    const auto frame = inverter::compiled_frame(kind, load_machine(a.machine), a.x.size(), a.salt);
    const BitString target = inverter::evaluate(kind, frame.embed(a.x), policy);
    r = inverter::brute_invert(kind, target, frame, policy, opts);
  } else {
    if (a.instance.empty()) throw Error("give either --instance or --machine with --x");
    const std::string text = slurp(a.instance);
    BitString target;
    if (a.bits) {
      target = trim(text);
    } else if (kind == inverter::Kind::Staf) {
      target = semithue::serialize_instance(semithue::read_text(text));
    } else if (kind == inverter::Kind::Ptf) {
      target = pcp::serialize_instance(pcp::read_text(text));
    } else {
      target = tiling::serialize_instance(tiling::read_text(text));
    }
    r = inverter::brute_invert(kind, target, policy, opts);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();

  std::cout << "status: " << inverter::to_string(r.status) << "\nattempts: " << r.attempts << "\n";
  if (r.x) std::cout << "x: " << *r.x << "\n";
  std::cout << "seconds: " << secs << "\n";
  return r.status == inverter::InvertResult::Status::Found ? kOk : kFailed;
}

// ---- experiment -------------------------------------------------------------

struct ExperimentArgs {
  std::string machine = "not", out;
  std::vector<std::string> kinds = {"staf", "ptf", "tiling"};
  std::vector<std::string> semantics = {"lookahead:8"};
  std::vector<std::size_t> ns = {4, 6, 8};
  std::vector<std::uint64_t> seeds = {1};
  std::size_t samples = 1000, max_len = 64;
  std::uint64_t max_int = 65536;
  unsigned jobs = 1;
};

int cmd_experiment(const ExperimentArgs& a) {
  inverter::ExperimentConfig cfg;
  cfg.kinds.clear();
  for (const auto& k : a.kinds) cfg.kinds.push_back(inverter::parse_kind(k));
  cfg.policies.clear();
  for (const auto& s : a.semantics) cfg.policies.push_back(DeterminismPolicy::parse(s));
  cfg.machine = a.machine;
  cfg.ns = a.ns;
  cfg.seeds = a.seeds;
  cfg.identity_samples = a.samples;
  cfg.max_int = a.max_int;
  cfg.max_len = a.max_len;
  cfg.jobs = a.jobs;
  const std::string csv = inverter::to_csv(inverter::owf_experiment(cfg));
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_file(a.out, csv);
  }
  std::cerr << "truncation: max_int=" << a.max_int << " max_len=" << a.max_len << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile Turing machines into rewriting, Post and tiling systems and evaluate the resulting functions."};
  app.require_subcommand(1);
  const std::string semantics_help = "strict, lookahead:D, lookahead-accept:D or paper-pcp";

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "Compile a machine and write the system plus its code table");
  compile->add_option("--backend", ca.backend, "semithue, pcp or tiling")->required()->check(CLI::IsMember(kBackends));
  compile->add_option("--machine", ca.machine, "Machine file, library name or lib:NAME")->required();
  compile->add_option("--n", ca.n, "Payload length the codes must stay distinct from")->required();
  compile->add_option("--salt-seed", ca.salt, "Seed for the code salt");
  compile->add_option("--out", ca.out, "Output directory")->required();
  compile->add_option("--input", ca.input, "Encode this input as the instance payload (tiling: the bottom row)");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate the function on an instance file and print the image");
  eval->add_option("--backend", ea.backend, "semithue, pcp or tiling")->required()->check(CLI::IsMember(kBackends));
  eval->add_option("--instance", ea.instance, "STS v1, PCP v1 or TILES v1 file")->required();
  eval->add_option("--semantics", ea.semantics, semantics_help + " (default lookahead:8; paper-pcp for pcp)");
  eval->add_option("--trace", ea.trace, "Write the derivation as JSON lines");
  eval->add_flag("--bits", ea.bits, "The file holds a pure bit string instead of text");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run an invariant suite and print a pass/fail table");
  verify->add_option("--suite", va.suite, "coding, lemma, determinism or all")
      ->required()
      ->check(CLI::IsMember({"coding", "lemma", "determinism", "all"}));
  verify->add_option("--machine", va.machine, "Machine file or library name")->capture_default_str();
  verify->add_option("--n-max", va.n_max, "Longest input for the lemma suite")->capture_default_str();
  verify->add_option("--semantics", va.semantics, "Semi-Thue policy for the lemma suite")->capture_default_str();
  verify->add_option("--n", va.n, "Payload length for the coding suite")->capture_default_str();
  verify->add_option("--trials", va.trials, "Random pairs for the coding suite")->capture_default_str();
  verify->add_option("--seed", va.seed, "Seed for the coding suite")->capture_default_str();

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw from the default-uniform samplers");
  sample->add_option("--kind", sa.kind, "int, string, sts, pcp or tiling")
      ->check(CLI::IsMember({"int", "string", "sts", "pcp", "tiling"}))
      ->capture_default_str();
  sample->add_option("--count", sa.count, "Number of draws")->capture_default_str();
  sample->add_option("--seed", sa.seed, "Generator seed")->capture_default_str();
  sample->add_option("--max-int", sa.max_int, "Truncation bound for integers")->capture_default_str();
  sample->add_option("--max-len", sa.max_len, "Truncation bound for string lengths")->capture_default_str();
  sample->add_flag("--bits", sa.bits, "Print instances as pure bit strings");

  InvertArgs ia;
  auto* invert = app.add_subcommand("invert", "Find a preimage by exhaustive search");
  invert->add_option("--backend", ia.backend, "semithue, pcp or tiling")->required()->check(CLI::IsMember(kBackends));
  invert->add_option("--instance", ia.instance, "Target instance file; the search runs over its payload");
  invert->add_option("--machine", ia.machine, "Search over inputs of this compiled machine");
  invert->add_option("--x", ia.x, "With --machine: the input whose image becomes the target");
  invert->add_option("--salt-seed", ia.salt, "With --machine: code salt seed");
  invert->add_option("--semantics", ia.semantics, semantics_help);
  invert->add_option("--limit", ia.limit, "Stop after this many candidates (0: all)");
  invert->add_option("--jobs", ia.jobs, "Worker threads")->capture_default_str();
  invert->add_flag("--bits", ia.bits, "The instance file holds a pure bit string");

  ExperimentArgs xa;
  auto* experiment = app.add_subcommand("experiment", "Forward cost, inversion cost and identity rates as CSV");
  experiment->add_option("--machine", xa.machine, "Machine file or library name")->capture_default_str();
  experiment->add_option("--kinds", xa.kinds, "Any of staf, ptf, tiling")->delimiter(',')->capture_default_str();
  experiment->add_option("--semantics", xa.semantics, "Policies for staf and ptf")->delimiter(',')->capture_default_str();
  experiment->add_option("--n", xa.ns, "Input lengths")->delimiter(',')->capture_default_str();
  experiment->add_option("--seeds", xa.seeds, "Seeds")->delimiter(',')->capture_default_str();
  experiment->add_option("--samples", xa.samples, "Sampled instances per identity rate")->capture_default_str();
  experiment->add_option("--max-int", xa.max_int, "Sampler integer bound")->capture_default_str();
  experiment->add_option("--max-len", xa.max_len, "Sampler length bound")->capture_default_str();
  experiment->add_option("--jobs", xa.jobs, "Worker threads for inversion")->capture_default_str();
  experiment->add_option("--out", xa.out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compile) return cmd_compile(ca);
    if (*eval) return cmd_eval(ea);
    if (*verify) return cmd_verify(va);
    if (*sample) return cmd_sample(sa);
    if (*invert) return cmd_invert(ia);
    if (*experiment) return cmd_experiment(xa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
