#include <set>
#include "doctest.h"
#include "owf/error.hpp"
#include "owf/inverter.hpp"
#include "owf/pcp.hpp"
#include "owf/tiling.hpp"

using namespace owf;
using inverter::Kind;

TEST_CASE("brute_invert returns the least preimage found by plain enumeration") {
  const Machine m = library_machine("not");
  for (Kind kind : {Kind::Ptf, Kind::Tiling}) {
    const std::size_t n = 5;
    const auto frame = inverter::compiled_frame(kind, m, n, 1);
    const auto policy = DeterminismPolicy::paper_pcp();
    for (std::uint64_t v : {0u, 7u, 19u, 31u}) {
      const BitString target = inverter::evaluate(kind, frame.embed(to_binary(v, n)), policy);
      std::optional<std::uint64_t> least;
      for (std::uint64_t i = 0; i < 32 && !least; ++i) {
        if (inverter::evaluate(kind, frame.embed(to_binary(i, n)), policy) == target) least = i;
      }
      REQUIRE(least);
      for (unsigned jobs : {1u, 4u}) {
        const auto r = inverter::brute_invert(kind, target, frame, policy, {0, jobs});
        CHECK(r.status == inverter::InvertResult::Status::Found);
        CHECK(r.x == to_binary(*least, n));
        CHECK(r.attempts == *least + 1);
      }
    }
  }
}

TEST_CASE("limits and misses are reported") {
  const Machine m = library_machine("not");
  const auto frame = inverter::compiled_frame(Kind::Ptf, m, 4);
  const auto policy = DeterminismPolicy::paper_pcp();
  const BitString target = inverter::evaluate(Kind::Ptf, frame.embed("1111"), policy);
  const auto limited = inverter::brute_invert(Kind::Ptf, target, frame, policy, {3, 1});
  CHECK(limited.status == inverter::InvertResult::Status::LimitExceeded);
  CHECK(limited.attempts == 3);
  const auto miss = inverter::brute_invert(Kind::Ptf, "0", frame, policy);
  CHECK(miss.status == inverter::InvertResult::Status::NotFound);
  CHECK(miss.attempts == 16);
}

TEST_CASE("an unparseable target is its own preimage") {
  const auto r = inverter::brute_invert(Kind::Staf, "1", DeterminismPolicy::lookahead(8));
  CHECK(r.status == inverter::InvertResult::Status::Found);
  CHECK(r.preimage == "1");
}

TEST_CASE("payload frames search the tail of the target") {
  const pcp::Instance inst{pcp::PairList(std::vector<StringPair>{{"0", "1"}, {"1", "0"}}), "0110"};
  const BitString target = pcp::serialize_instance(inst);
  const auto frame = inverter::payload_frame(Kind::Ptf, target);
  REQUIRE(frame);
  CHECK(frame->n == 4);
  CHECK(frame->embed("0110") == target);
}

TEST_CASE("backward search finds the predecessors of a rewrite") {
  const semithue::RewriteSystem sys(std::vector<semithue::Rule>{{"10", "01"}});
  const auto pre = inverter::backward_search(sys, "0011", 4);
  CHECK(pre.count("0011"));
  CHECK(pre.count("0101"));
  CHECK(pre.count("1100"));
  CHECK_FALSE(pre.count("1111"));
}

TEST_CASE("experiment CSV has the fixed header and one row per cell") {
  inverter::ExperimentConfig cfg;
  cfg.kinds = {Kind::Ptf, Kind::Tiling};
  cfg.ns = {3, 4};
  cfg.identity_samples = 20;
  cfg.policies = {DeterminismPolicy::paper_pcp()};
  const auto rows = inverter::owf_experiment(cfg);
  CHECK(rows.size() == 4);
  const std::string csv = inverter::to_csv(rows);
  CHECK(csv.starts_with(std::string(inverter::kExperimentHeader) + "\n"));
  for (const auto& r : rows) CHECK(r.found);
}

TEST_CASE("kind names parse") {
  CHECK(inverter::parse_kind("semithue") == Kind::Staf);
  CHECK(inverter::parse_kind("pcp") == Kind::Ptf);
  CHECK_THROWS_AS(inverter::parse_kind("sat"), Error);
}
