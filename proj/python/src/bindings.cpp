#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "owf/error.hpp"
#include "owf/inverter.hpp"
#include "owf/pcp.hpp"
#include "owf/sampler.hpp"
#include "owf/semithue.hpp"
#include "owf/stcompile.hpp"
#include "owf/tiling.hpp"
#include "owf/verify.hpp"

namespace py = pybind11;
using namespace owf;

namespace {

DeterminismPolicy semantics_for(inverter::Kind kind, const std::optional<std::string>& text) {
  if (text) return DeterminismPolicy::parse(*text);
  return kind == inverter::Kind::Ptf ? DeterminismPolicy::paper_pcp() : DeterminismPolicy::lookahead(8);
}

std::optional<BitString> run_machine(const std::string& spec, const BitString& x, std::uint64_t budget) {
  require_bits(x, "x");
  const RunResult r = run(load_machine(spec), x, budget);
  if (const auto* h = std::get_if<Halted>(&r)) return h->output;
  return std::nullopt;
}

BitString evaluate(const std::string& kind, const BitString& input, const std::optional<std::string>& semantics) {
  const auto k = inverter::parse_kind(kind);
  return inverter::evaluate(k, input, semantics_for(k, semantics));
}

// The compiled instance for input x, as a pure bit string and as text.
py::dict compile(const std::string& backend, const std::string& machine, const BitString& x,
                 std::uint64_t salt_seed) {
  require_bits(x, "x");
  const Machine m = load_machine(machine);
  py::dict out;
  switch (inverter::parse_kind(backend)) {
    case inverter::Kind::Staf: {
      const auto c = stcompile::compile_semithue(m, x.size(), salt_seed);
      const semithue::Instance inst{c.system, stcompile::st_encode_input(c, x)};
      out["bits"] = semithue::serialize_instance(inst);
      out["text"] = semithue::write_text(inst);
      out["codes"] = c.table.to_json().dump();
      out["count"] = c.system.size();
      break;
    }
    case inverter::Kind::Ptf: {
      const auto c = pcp::compile_pcp(m, x.size(), salt_seed);
      const pcp::Instance inst{c.pairs, pcp::pcp_encode_input(c, x)};
      out["bits"] = pcp::serialize_instance(inst);
      out["text"] = pcp::write_text(inst);
      out["codes"] = c.table.to_json().dump();
      out["count"] = c.pairs.size();
      break;
    }
    case inverter::Kind::Tiling: {
      const auto c = tiling::compile_tileset(m);
      const tiling::Instance inst{c.tiles, tiling::bottom_row(c, x)};
      out["bits"] = tiling::serialize_instance(inst);
      out["text"] = tiling::write_text(inst);
      out["count"] = c.tiles.tiles().size();
      break;
    }
  }
  return out;
}

py::dict invert(const std::string& kind, const std::string& machine, const BitString& x,
                const std::optional<std::string>& semantics, std::uint64_t limit, unsigned jobs,
                std::uint64_t salt_seed) {
  require_bits(x, "x");
  const auto k = inverter::parse_kind(kind);
  const auto policy = semantics_for(k, semantics);
  const auto frame = inverter::compiled_frame(k, load_machine(machine), x.size(), salt_seed);
  const BitString target = inverter::evaluate(k, frame.embed(x), policy);
  inverter::InvertResult r;
  {
    py::gil_scoped_release release;
    r = inverter::brute_invert(k, target, frame, policy, {limit, jobs});
  }
  py::dict out;
  out["status"] = inverter::to_string(r.status);
  out["attempts"] = r.attempts;
  out["x"] = r.x;
  return out;
}

using CheckRow = std::tuple<std::string, std::string, std::string>;

std::vector<CheckRow> run_suite(const std::string& suite, const std::string& machine, std::size_t n_max,
                                const std::string& semantics, std::size_t n, std::size_t trials,
                                std::uint64_t seed) {
  const Machine m = load_machine(machine);
  verify::Report rep;
  if (suite == "lemma") {
    rep = verify::lemma_suite(m, n_max, DeterminismPolicy::parse(semantics));
  } else if (suite == "coding") {
    rep = verify::coding_suite(m, n, trials, seed);
  } else if (suite == "determinism") {
    rep = verify::determinism_suite(m);
  } else {
    throw Error("unknown suite \"" + suite + "\" (use lemma, coding or determinism)");
  }
  std::vector<CheckRow> out;
  for (const auto& c : rep.checks) {
    out.emplace_back(c.name, c.pass ? "pass" : c.expected_fail ? "expected-fail" : "fail", c.detail);
  }
  return out;
}

std::vector<std::string> sample(const std::string& kind, std::size_t count, std::uint64_t seed,
                                std::uint64_t max_int, std::size_t max_len) {
  const sampler::DefaultUniform d(max_int, max_len);
  sampler::Rng rng(seed);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (kind == "int") {
      out.push_back(std::to_string(d.sample_int(rng)));
    } else if (kind == "string") {
      out.push_back(d.sample_string(rng));
    } else if (kind == "sts") {
      out.push_back(semithue::serialize_instance(sampler::sample_sts_instance(d, rng).instance));
    } else if (kind == "pcp") {
      out.push_back(pcp::serialize_instance(sampler::sample_pcp_instance(d, rng).instance));
    } else if (kind == "tiling") {
      out.push_back(tiling::serialize_instance(sampler::sample_tiling_instance(d, rng)));
    } else {
      throw Error("unknown sample kind \"" + kind + "\" (use int, string, sts, pcp or tiling)");
    }
  }
  return out;
}

std::string experiment(const std::vector<std::string>& kinds, const std::string& machine,
                       const std::vector<std::size_t>& ns, const std::vector<std::uint64_t>& seeds,
                       const std::vector<std::string>& semantics, std::size_t samples, unsigned jobs) {
  inverter::ExperimentConfig cfg;
  cfg.kinds.clear();
  for (const auto& k : kinds) cfg.kinds.push_back(inverter::parse_kind(k));
  cfg.policies.clear();
  for (const auto& s : semantics) cfg.policies.push_back(DeterminismPolicy::parse(s));
  cfg.machine = machine;
  cfg.ns = ns;
  cfg.seeds = seeds;
  cfg.identity_samples = samples;
  cfg.jobs = jobs;
  py::gil_scoped_release release;
  return inverter::to_csv(inverter::owf_experiment(cfg));
}

std::optional<std::vector<std::string>> decompose(const BitString& x) {
  const auto d = block_decompose(x);
  if (!d) return std::nullopt;
  return std::vector<std::string>(d->begin(), d->end());
}

}  // namespace

PYBIND11_MODULE(_owflab, m) {
  m.doc() = "Turing machines compiled into rewriting, Post and tiling systems, and the functions they define";
  py::register_exception<Error>(m, "OwfError", PyExc_ValueError);

  m.def("library_names", &library_names, "Names of the built-in machines");
  m.def("run_machine", &run_machine, py::arg("machine"), py::arg("x"), py::arg("budget") = 1u << 20,
        "Output of a machine on x, or None if it does not halt within the budget");
  m.def("evaluate", &evaluate, py::arg("kind"), py::arg("input"), py::arg("semantics") = py::none(),
        "staf, ptf or tiling on a bit string");
  m.def("compile", &compile, py::arg("backend"), py::arg("machine"), py::arg("x"), py::arg("salt_seed") = 0,
        "Compiled instance for input x: bits, text, codes and rule/pair/tile count");
  m.def("invert", &invert, py::arg("kind"), py::arg("machine"), py::arg("x"), py::arg("semantics") = py::none(),
        py::arg("limit") = 0, py::arg("jobs") = 1, py::arg("salt_seed") = 0,
        "Exhaustive search for a preimage of the compiled image of x");
  m.def("verify", &run_suite, py::arg("suite"), py::arg("machine") = "not", py::arg("n_max") = 4,
        py::arg("semantics") = "lookahead:8", py::arg("n") = 256, py::arg("trials") = 1000, py::arg("seed") = 1,
        "Run an invariant suite; one (name, status, detail) tuple per check");
  m.def("sample", &sample, py::arg("kind"), py::arg("count") = 1, py::arg("seed") = 0, py::arg("max_int") = 65536,
        py::arg("max_len") = 64, "Draws from the default-uniform samplers");
  m.def("experiment", &experiment, py::arg("kinds") = std::vector<std::string>{"staf", "ptf", "tiling"},
        py::arg("machine") = "not", py::arg("ns") = std::vector<std::size_t>{4, 6, 8},
        py::arg("seeds") = std::vector<std::uint64_t>{1},
        py::arg("semantics") = std::vector<std::string>{"lookahead:8"}, py::arg("samples") = 1000,
        py::arg("jobs") = 1, "Experiment table as CSV text");
  m.def("block_decompose", &decompose, py::arg("x"), "Split into blocks 1, 10, 100, 000, or None");
}
