#include <functional>
#include <set>

#include "doctest.h"
#include "owf/error.hpp"
#include "owf/sampler.hpp"
#include "owf/tiling.hpp"

using namespace owf;
using tiling::Tile;
using tiling::TileSet;

namespace {

// Every row of width |south| by exhaustive product over the tiles.
std::set<tiling::TileRow> brute_rows(const TileSet& ts, const tiling::SymbolRow& south) {
  std::set<tiling::TileRow> out;
  tiling::TileRow row(south.size());
  const std::size_t t = ts.tiles().size();
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == south.size()) {
      out.insert(row);
      return;
    }
    for (std::size_t k = 0; k < t; ++k) {
      const Tile& tile = ts.tiles()[k];
      if (tile.south != south[i]) continue;
      if (i > 0 && ts.tiles()[row[i - 1]].east != tile.west) continue;
      row[i] = k;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

TileSet random_tileset(sampler::Rng& rng, int k, int t) {
  std::set<Tile> tiles;
  while (static_cast<int>(tiles.size()) < t) {
    tiles.insert({int(rng() % k), int(rng() % k), int(rng() % k), int(rng() % k)});
  }
  return TileSet(static_cast<std::size_t>(k), std::vector<Tile>(tiles.begin(), tiles.end()));
}

}  // namespace

TEST_CASE("next_rows finds exactly the rows of the exhaustive product, in both scans") {
  sampler::Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const TileSet ts = random_tileset(rng, k, 1 + static_cast<int>(rng() % 10));
    tiling::SymbolRow south(1 + rng() % 5);
    for (int& s : south) s = static_cast<int>(rng() % k);
    const auto want = brute_rows(ts, south);
    for (auto scan : {tiling::Scan::LeftToRight, tiling::Scan::RightToLeft}) {
      const auto got = tiling::next_rows(ts, south, 1000000, scan);
      CHECK(std::set<tiling::TileRow>(got.begin(), got.end()) == want);
      CHECK(got.size() == want.size());
      const auto capped = tiling::next_rows(ts, south, 2, scan);
      CHECK(capped.size() == std::min<std::size_t>(2, want.size()));
    }
  }
}

TEST_CASE("tile sets reject duplicates and out-of-range symbols") {
  CHECK_THROWS_AS(TileSet(2, {{0, 0, 0, 0}, {0, 0, 0, 0}}), Error);
  CHECK_THROWS_AS(TileSet(2, {{0, 0, 2, 0}}), Error);
}

TEST_CASE("compiled tilings compute id and not") {
  for (const char* name : {"id", "not", "rot-pair", "parity-mark"}) {
    const Machine m = library_machine(name);
    const auto c = tiling::compile_tileset(m);
    for (int n = 2; n <= 4; ++n) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        const BitString x = to_binary(v, n);
        const auto bottom = tiling::bottom_row(c, x);
        CHECK(bottom.size() == static_cast<std::size_t>(n * n + 2));
        const auto r = tiling::tile_closure(c.tiles, bottom, bottom.size());
        REQUIRE(r.status == tiling::ClosureResult::Status::Completed);
        CHECK(r.advances == bottom.size() - 1);
        CHECK(tiling::decode_top(c, r.top, n) == std::get<Halted>(run(m, x, 10000)).output);
      }
    }
  }
}

TEST_CASE("a second tile for one instruction makes the row ambiguous") {
  const auto c = tiling::compile_tileset(library_machine("not"));
  const auto bottom = tiling::bottom_row(c, "10");
  std::vector<Tile> tiles = c.tiles.tiles();
  // Copy the tile that reads the head cell and give it another north edge.
  const int head = bottom[1];
  for (const Tile& t : c.tiles.tiles()) {
    if (t.south != head) continue;
    Tile extra = t;
    extra.north = c.tiles.require_symbol("#");
    tiles.push_back(extra);
    break;
  }
  const TileSet corrupted(c.tiles.names(), tiles);
  const auto r = tiling::tile_closure(corrupted, bottom, bottom.size());
  CHECK(r.status == tiling::ClosureResult::Status::AmbiguousRow);
  CHECK(r.advances == 0);
}

TEST_CASE("instances round-trip through both forms") {
  const auto c = tiling::compile_tileset(library_machine("not"));
  const tiling::Instance inst{c.tiles, tiling::bottom_row(c, "101")};
  const auto back = tiling::parse_instance(tiling::serialize_instance(inst));
  REQUIRE(back);
  CHECK(back->tiles.tiles() == inst.tiles.tiles());
  CHECK(back->row == inst.row);
  const auto text = tiling::read_text(tiling::write_text(inst));
  CHECK(text.tiles.tiles() == inst.tiles.tiles());
  CHECK(text.row == inst.row);
}

TEST_CASE("tiling_f is total and length-preserving on random strings") {
  sampler::Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    const BitString x = sampler::uniform_bits(rng, rng() % 64);
    CHECK(tiling::tiling_f(x).size() == x.size());
  }
}
