#include "doctest.h"
#include "owf/coding.hpp"
#include "owf/stcompile.hpp"

using namespace owf;

TEST_CASE("conversion phase has 17 rules and the budget formula holds") {
  for (const auto& name : library_names()) {
    const auto c = stcompile::compile_semithue(library_machine(name), 6);
    CHECK(c.phases.conversion == 17);
    CHECK(c.phases.conversion + c.phases.machine + c.phases.decoding == c.system.size());
  }
  for (std::size_t n : {1u, 5u, 40u}) CHECK(stcompile::st_budget(n) == n * n + 4 * n + 2);
}

TEST_CASE("conversion takes two steps per block plus one") {
  CHECK(stcompile::conversion_steps("1") == 3);
  CHECK(stcompile::conversion_steps("000100") == 5);
  for (const BitString x : {"1", "10", "000", "1011", "100000"}) {
    CHECK(stcompile::conversion_steps(x) == 2 * block_decompose(x)->size() + 1);
  }
}

TEST_CASE("encoded input is start code, raw payload, end code") {
  const auto c = stcompile::compile_semithue(library_machine("not"), 8);
  const BitString x = "1001";
  const BitString w = stcompile::st_encode_input(c, x);
  CHECK(w == c.table.code(c.start) + x + c.table.code(c.marker));
  CHECK(w.size() == x.size() + 2 * static_cast<std::size_t>(c.table.l));
}

TEST_CASE("decoding reads the raw bits between two end codes") {
  const auto c = stcompile::compile_semithue(library_machine("id"), 8);
  const BitString end = c.table.code(c.marker);
  CHECK(stcompile::st_decode_output(c, end + "0110" + end) == BitString("0110"));
  CHECK_FALSE(stcompile::st_decode_output(c, end + "0110").has_value());
}

TEST_CASE("compiled identity runs to the expected terminal under accepting lookahead") {
  const auto c = stcompile::compile_semithue(library_machine("id"), 4);
  const auto policy = DeterminismPolicy::lookahead_accept(2 * c.table.l);
  for (const BitString x : {"1", "10", "11", "1101"}) {
    const semithue::Instance inst{c.system, stcompile::st_encode_input(c, x)};
    const auto out = semithue::staf_closure(inst, policy);
    REQUIRE(out.terminal());
    CHECK(stcompile::st_decode_output(c, out.result) == x);
  }
}
