#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "owf/bits.hpp"
#include "owf/machine.hpp"

namespace owf::tiling {

struct Tile {
  int north = 0;
  int east = 0;
  int south = 0;
  int west = 0;

  friend bool operator==(const Tile&, const Tile&) = default;
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

// Edge symbols are ids in [0, symbol_count); tiles are distinct. Names are
// optional: sets read from the pure-string form only know the count.
class TileSet {
 public:
  TileSet() = default;
  TileSet(std::vector<std::string> names, std::vector<Tile> tiles);
  TileSet(std::size_t symbol_count, std::vector<Tile> tiles);

  std::size_t symbol_count() const { return count_; }
  const std::vector<std::string>& names() const { return names_; }
  std::string symbol_name(int id) const;
  std::optional<int> symbol_id(std::string_view name) const;
  int require_symbol(std::string_view name) const;  // throws on unknown names
  const std::vector<Tile>& tiles() const { return tiles_; }
  // Indices of the tiles whose south edge is `s`.
  const std::vector<std::size_t>& with_south(int s) const;

 private:
  void index();

  std::size_t count_ = 0;
  std::vector<std::string> names_;
  std::vector<Tile> tiles_;
  std::unordered_map<int, std::vector<std::size_t>> by_south_;
};

using SymbolRow = std::vector<int>;        // edge symbols, one per column
using TileRow = std::vector<std::size_t>;  // tile indices, one per column

SymbolRow north_of(const TileSet& ts, const TileRow& row);

// Names used by the compiler.
inline constexpr std::string_view kBlankEdge = "-";
inline constexpr std::string_view kLeftEnd = "$";
inline constexpr std::string_view kRightEnd = "#";
std::string pair_symbol(std::string_view state, Symbol a);  // "(q,a)"

struct TileCompilation {
  TileSet tiles;
  std::string start;  // the start state as it appears in the bottom row
  std::vector<std::string> halt_variants;
  bool split = true;
};

// Tiles simulating M one row per step. With `split`, every state p becomes
// p_L or p_R after the direction of the move that produced it, and the start
// state keeps its plain name for the bottom row. Without it the state names
// are used as they are (kept for the ambiguity regression).
TileCompilation compile_tileset(const Machine& m, bool split = true);

// [$, (s,x1), x2, ..., xn, B x n(n-1), #], width n^2 + 2.
SymbolRow bottom_row(const TileCompilation& c, const BitString& x);

enum class Scan { LeftToRight, RightToLeft };

// Rows of tiles sitting on `south` whose side edges agree between neighbours,
// at most `cap` of them. Columns at the outer boundary are unconstrained.
std::vector<TileRow> next_rows(const TileSet& ts, const SymbolRow& south, std::size_t cap,
                               Scan scan = Scan::LeftToRight);

struct ClosureResult {
  enum class Status { Completed, Stalled, AmbiguousRow };

  Status status = Status::Stalled;
  SymbolRow top;            // north symbols of the last row placed (the bottom row if none)
  std::size_t advances = 0; // rows placed
  std::vector<SymbolRow> rows;  // every row including the bottom, if requested
};

std::string to_string(ClosureResult::Status s);

// Places rows one at a time while the next row is unique, until height - 1
// rows sit on the bottom row.
ClosureResult tile_closure(const TileSet& ts, const SymbolRow& bottom, std::size_t height, bool keep_rows = false);

// Reads y off a top row: the cells between $ and #, with the head cell's
// tape symbol, first n cells. nullopt unless a halt variant is present and
// those cells are bits.
std::optional<BitString> decode_top(const TileCompilation& c, const SymbolRow& top, std::size_t n);

struct Instance {
  TileSet tiles;
  SymbolRow row;
};

// gamma(k), gamma(t + 1), each tile as gamma(id + 1) for N, E, S, W, then
// the row with every id written in bit_width_for(k) bits.
BitString serialize_instance(const Instance& inst);
std::optional<Instance> parse_instance(std::string_view bits, std::string* error = nullptr);

// "TILES v1" text: `symbols:` line, `tiles:` section of `N E S W` lines,
// `row:` line.
Instance read_text(std::string_view text);
std::string write_text(const Instance& inst);

// The tiling one-way function: height = width; output length = input length.
BitString tiling_f(std::string_view input);

}  // namespace owf::tiling
