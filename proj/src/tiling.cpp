#include "owf/tiling.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <map>
#include <set>
#include <sstream>

#include "owf/error.hpp"

namespace owf::tiling {

TileSet::TileSet(std::vector<std::string> names, std::vector<Tile> tiles)
    : count_(names.size()), names_(std::move(names)), tiles_(std::move(tiles)) {
  index();
}

TileSet::TileSet(std::size_t symbol_count, std::vector<Tile> tiles) : count_(symbol_count), tiles_(std::move(tiles)) {
  index();
}

void TileSet::index() {
  if (count_ > static_cast<std::size_t>(INT_MAX)) throw Error("too many edge symbols");
  const int k = static_cast<int>(count_);
  std::set<Tile> seen;
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    const Tile& t = tiles_[i];
    for (int e : {t.north, t.east, t.south, t.west}) {
      if (e < 0 || e >= k) throw Error("tile " + std::to_string(i) + " uses an unknown edge symbol");
    }
    if (!seen.insert(t).second) throw Error("tile " + std::to_string(i) + " is a duplicate");
    by_south_[t.south].push_back(i);
  }
}

std::string TileSet::symbol_name(int id) const {
  if (id >= 0 && static_cast<std::size_t>(id) < names_.size()) return names_[static_cast<std::size_t>(id)];
  return "e" + std::to_string(id);
}

std::optional<int> TileSet::symbol_id(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

int TileSet::require_symbol(std::string_view name) const {
  if (auto id = symbol_id(name)) return *id;
  throw Error("unknown edge symbol \"" + std::string(name) + "\"");
}

const std::vector<std::size_t>& TileSet::with_south(int s) const {
  static const std::vector<std::size_t> kNone;
  const auto it = by_south_.find(s);
  return it == by_south_.end() ? kNone : it->second;
}

SymbolRow north_of(const TileSet& ts, const TileRow& row) {
  SymbolRow out;
  out.reserve(row.size());
  for (std::size_t t : row) out.push_back(ts.tiles().at(t).north);
  return out;
}

std::string pair_symbol(std::string_view state, Symbol a) {
  return "(" + std::string(state) + "," + symbol_name(a) + ")";
}

namespace {

class TileBuilder {
 public:
  int id(const std::string& name) {
    auto [it, fresh] = ids_.emplace(name, static_cast<int>(names_.size()));
    if (fresh) names_.push_back(name);
    return it->second;
  }

  void add(const std::string& n, const std::string& e, const std::string& s, const std::string& w) {
    Tile t{id(n), id(e), id(s), id(w)};
    if (seen_.insert(t).second) tiles_.push_back(t);
  }

  TileSet finish() { return TileSet(std::move(names_), std::move(tiles_)); }

 private:
  std::map<std::string, int> ids_;
  std::vector<std::string> names_;
  std::set<Tile> seen_;
  std::vector<Tile> tiles_;
};

std::string variant(const std::string& state, Direction d, bool split) {
  if (!split) return state;
  return state + (d == Direction::Left ? "_L" : "_R");
}

}  // namespace

TileCompilation compile_tileset(const Machine& m, bool split) {
  TileCompilation c;
  c.split = split;
  c.start = m.state_name(m.start());

  // Every name a state can carry on the tiles.
  std::vector<std::set<std::string>> names(m.state_count());
  names[static_cast<std::size_t>(m.start())].insert(c.start);
  for (int q = 0; q < static_cast<int>(m.state_count()); ++q) {
    if (q == m.halt()) continue;
    for (Symbol a : kTapeSymbols) {
      const Transition& tr = m.transition(q, a);
      names[static_cast<std::size_t>(tr.next)].insert(variant(m.state_name(tr.next), tr.move, split));
    }
  }

  const std::string blank(kBlankEdge);
  TileBuilder b;
  for (const char* sym : {"$", "#", "-", "0", "1", "B"}) b.id(sym);

  for (Symbol a : kTapeSymbols) b.add(symbol_name(a), blank, symbol_name(a), blank);
  for (const auto& h : names[static_cast<std::size_t>(m.halt())]) {
    c.halt_variants.push_back(h);
    for (Symbol a : kTapeSymbols) b.add(pair_symbol(h, a), blank, pair_symbol(h, a), blank);
  }

  for (int q = 0; q < static_cast<int>(m.state_count()); ++q) {
    if (q == m.halt()) continue;
    for (Symbol a : kTapeSymbols) {
      const Transition& tr = m.transition(q, a);
      const std::string p = variant(m.state_name(tr.next), tr.move, split);
      const std::string w = symbol_name(tr.write);
      for (const auto& qv : names[static_cast<std::size_t>(q)]) {
        if (tr.move == Direction::Right) {
          b.add(w, p, pair_symbol(qv, a), blank);
        } else {
          b.add(w, blank, pair_symbol(qv, a), p);
        }
      }
      for (Symbol cell : kTapeSymbols) {
        const std::string cs = symbol_name(cell);
        if (tr.move == Direction::Right) {
          b.add(pair_symbol(p, cell), blank, cs, p);
        } else {
          b.add(pair_symbol(p, cell), p, cs, blank);
        }
      }
    }
  }

  b.add("$", blank, "$", "$");
  b.add("#", "#", "#", blank);
  c.tiles = b.finish();
  return c;
}

SymbolRow bottom_row(const TileCompilation& c, const BitString& x) {
  require_bits(x, "input");
  if (x.empty()) throw Error("bottom row needs a nonempty input");
  const std::size_t n = x.size();
  const TileSet& ts = c.tiles;
  SymbolRow row;
  row.reserve(n * n + 2);
  row.push_back(ts.require_symbol(kLeftEnd));
  row.push_back(ts.require_symbol(pair_symbol(c.start, symbol_from_char(x[0]))));
  for (std::size_t i = 1; i < n; ++i) row.push_back(ts.require_symbol(std::string(1, x[i])));
  const int blank_cell = ts.require_symbol("B");
  for (std::size_t i = 0; i < n * (n - 1); ++i) row.push_back(blank_cell);
  row.push_back(ts.require_symbol(kRightEnd));
  return row;
}

std::vector<TileRow> next_rows(const TileSet& ts, const SymbolRow& south, std::size_t cap, Scan scan) {
  std::vector<TileRow> out;
  const std::size_t n = south.size();
  if (n == 0 || cap == 0) return out;
  const bool rev = scan == Scan::RightToLeft;
  const auto& tiles = ts.tiles();
  // Positions are visited in scan order; `ahead` is the edge shared with the
  // next position and `behind` the one shared with the previous.
  auto col = [&](std::size_t k) { return rev ? n - 1 - k : k; };
  auto ahead = [&](std::size_t t) { return rev ? tiles[t].west : tiles[t].east; };
  auto behind = [&](std::size_t t) { return rev ? tiles[t].east : tiles[t].west; };

  // live[k]: candidates at position k that extend to a full row.
  std::vector<std::vector<std::size_t>> live(n);
  std::set<int> need;  // `behind` edges available at position k + 1
  for (std::size_t k = n; k-- > 0;) {
    std::set<int> next_need;
    for (std::size_t t : ts.with_south(south[col(k)])) {
      if (k + 1 < n && !need.count(ahead(t))) continue;
      live[k].push_back(t);
      next_need.insert(behind(t));
    }
    if (live[k].empty()) return out;
    need = std::move(next_need);
  }

  TileRow path;
  std::vector<std::size_t> cursor(n, 0);
  std::size_t k = 0;
  while (true) {
    bool placed = false;
    while (cursor[k] < live[k].size()) {
      const std::size_t t = live[k][cursor[k]++];
      if (k > 0 && behind(t) != ahead(path.back())) continue;
      path.push_back(t);
      placed = true;
      break;
    }
    if (placed) {
      if (path.size() == n) {
        TileRow row(n);
        for (std::size_t i = 0; i < n; ++i) row[col(i)] = path[i];
        out.push_back(std::move(row));
        if (out.size() >= cap) return out;
        path.pop_back();
      } else {
        cursor[++k] = 0;
      }
      continue;
    }
    if (k == 0) return out;
    --k;
    path.pop_back();
  }
}

std::string to_string(ClosureResult::Status s) {
  switch (s) {
    case ClosureResult::Status::Completed: return "completed";
    case ClosureResult::Status::Stalled: return "stalled";
    case ClosureResult::Status::AmbiguousRow: return "ambiguous-row";
  }
  return "?";
}

ClosureResult tile_closure(const TileSet& ts, const SymbolRow& bottom, std::size_t height, bool keep_rows) {
  if (height == 0) throw Error("height must be at least 1");
  ClosureResult out;
  out.top = bottom;
  if (keep_rows) out.rows.push_back(bottom);
  while (out.advances + 1 < height) {
    const auto rows = next_rows(ts, out.top, 2);
    if (rows.empty()) {
      out.status = ClosureResult::Status::Stalled;
      return out;
    }
    if (rows.size() > 1) {
      out.status = ClosureResult::Status::AmbiguousRow;
      return out;
    }
    out.top = north_of(ts, rows.front());
    ++out.advances;
    if (keep_rows) out.rows.push_back(out.top);
  }
  out.status = ClosureResult::Status::Completed;
  return out;
}

std::optional<BitString> decode_top(const TileCompilation& c, const SymbolRow& top, std::size_t n) {
  const TileSet& ts = c.tiles;
  if (top.size() < 2 || ts.symbol_name(top.front()) != kLeftEnd || ts.symbol_name(top.back()) != kRightEnd) {
    return std::nullopt;
  }
  BitString tape;
  bool halted = false;
  for (std::size_t i = 1; i + 1 < top.size(); ++i) {
    const std::string name = ts.symbol_name(top[i]);
    if (name == "0" || name == "1" || name == "B") {
      tape += name;
      continue;
    }
    if (halted || name.size() < 5 || name.front() != '(' || name.back() != ')') return std::nullopt;
    const std::size_t comma = name.rfind(',');
    const std::string state = name.substr(1, comma - 1);
    if (std::find(c.halt_variants.begin(), c.halt_variants.end(), state) == c.halt_variants.end()) {
      return std::nullopt;
    }
    halted = true;
    tape += name.substr(comma + 1, name.size() - comma - 2);
  }
  if (!halted || tape.size() < n) return std::nullopt;
  tape.resize(n);
  if (!is_bit_string(tape)) return std::nullopt;
  return tape;
}

BitString serialize_instance(const Instance& inst) {
  const TileSet& ts = inst.tiles;
  BitString out;
  append_gamma(out, ts.symbol_count());
  append_gamma(out, ts.tiles().size() + 1);
  for (const Tile& t : ts.tiles()) {
    for (int e : {t.north, t.east, t.south, t.west}) append_gamma(out, static_cast<std::uint64_t>(e) + 1);
  }
  const int width = bit_width_for(ts.symbol_count());
  for (int s : inst.row) out += to_binary(static_cast<std::uint64_t>(s), width);
  return out;
}

std::optional<Instance> parse_instance(std::string_view bits, std::string* error) {
  auto fail = [&](const char* why) -> std::optional<Instance> {
    if (error) *error = why;
    return std::nullopt;
  };
  BitReader r(bits);
  const auto k = r.read_gamma();
  if (!k) return fail("truncated symbol count");
  if (*k > static_cast<std::uint64_t>(INT_MAX)) return fail("symbol count out of range");
  const auto t1 = r.read_gamma();
  if (!t1) return fail("truncated tile count");
  const std::uint64_t t = *t1 - 1;
  if (t > r.remaining() / 4) return fail("tile count exceeds the input");

  std::vector<Tile> tiles;
  tiles.reserve(static_cast<std::size_t>(t));
  std::set<Tile> seen;
  for (std::uint64_t i = 0; i < t; ++i) {
    int e[4];
    for (int& v : e) {
      const auto g = r.read_gamma();
      if (!g) return fail("truncated tile");
      if (*g > *k) return fail("tile edge out of range");
      v = static_cast<int>(*g - 1);
    }
    Tile tile{e[0], e[1], e[2], e[3]};
    if (!seen.insert(tile).second) return fail("duplicate tile");
    tiles.push_back(tile);
  }

  const std::size_t width = static_cast<std::size_t>(bit_width_for(*k));
  if (r.remaining() == 0 || r.remaining() % width != 0) return fail("row length is not a whole number of cells");
  SymbolRow row;
  while (r.remaining() > 0) {
    const std::uint64_t s = from_binary(*r.read(width));
    if (s >= *k) return fail("row symbol out of range");
    row.push_back(static_cast<int>(s));
  }
  return Instance{TileSet(static_cast<std::size_t>(*k), std::move(tiles)), std::move(row)};
}

namespace {

std::vector<std::pair<std::string, std::size_t>> words(std::string_view line) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.emplace_back(std::string(line.substr(start, i - start)), start + 1);
  }
  return out;
}

std::size_t parse_count(const std::string& s, std::size_t line, std::size_t col) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad count", line, col);
  return v;
}

}  // namespace

Instance read_text(std::string_view text) {
  enum class Expect { Header, Symbols, Count, Tiles, Row, Done } expect = Expect::Header;
  std::vector<std::string> names;
  std::map<std::string, int> ids;
  std::vector<Tile> tiles;
  SymbolRow row;
  std::size_t remaining = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto lookup = [&](const std::pair<std::string, std::size_t>& w) {
    const auto it = ids.find(w.first);
    if (it == ids.end()) throw ParseError("unknown symbol \"" + w.first + "\"", line_no, w.second);
    return it->second;
  };

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    // '#' is a symbol here, so comments start with "//".
    if (const auto c = line.find("//"); c != std::string_view::npos) line = line.substr(0, c);
    const auto w = words(line);
    if (w.empty()) continue;
    switch (expect) {
      case Expect::Header:
        if (w.size() != 2 || w[0].first != "TILES" || w[1].first != "v1") {
          throw ParseError("expected header \"TILES v1\"", line_no, w[0].second);
        }
        expect = Expect::Symbols;
        break;
      case Expect::Symbols:
        if (w[0].first != "symbols:") throw ParseError("expected \"symbols: <names>\"", line_no, w[0].second);
        for (std::size_t i = 1; i < w.size(); ++i) {
          if (!ids.emplace(w[i].first, static_cast<int>(names.size())).second) {
            throw ParseError("duplicate symbol \"" + w[i].first + "\"", line_no, w[i].second);
          }
          names.push_back(w[i].first);
        }
        expect = Expect::Count;
        break;
      case Expect::Count:
        if (w.size() != 2 || w[0].first != "tiles:") throw ParseError("expected \"tiles: <count>\"", line_no, w[0].second);
        remaining = parse_count(w[1].first, line_no, w[1].second);
        expect = remaining == 0 ? Expect::Row : Expect::Tiles;
        break;
      case Expect::Tiles:
        if (w.size() != 4) throw ParseError("expected four edge symbols N E S W", line_no, w[0].second);
        tiles.push_back({lookup(w[0]), lookup(w[1]), lookup(w[2]), lookup(w[3])});
        if (--remaining == 0) expect = Expect::Row;
        break;
      case Expect::Row:
        if (w[0].first != "row:" || w.size() < 2) throw ParseError("expected \"row: <symbols>\"", line_no, w[0].second);
        for (std::size_t i = 1; i < w.size(); ++i) row.push_back(lookup(w[i]));
        expect = Expect::Done;
        break;
      case Expect::Done:
        throw ParseError("unexpected content after row line", line_no, w[0].second);
    }
  }
  if (expect == Expect::Tiles) throw ParseError("fewer tiles than declared", line_no, 1);
  if (expect != Expect::Done) throw ParseError("missing \"row:\" line", line_no, 1);
  if (names.empty()) throw ParseError("empty symbol table", 1, 1);
  return Instance{TileSet(std::move(names), std::move(tiles)), std::move(row)};
}

std::string write_text(const Instance& inst) {
  const TileSet& ts = inst.tiles;
  std::ostringstream out;
  out << "TILES v1\nsymbols:";
  for (std::size_t i = 0; i < ts.symbol_count(); ++i) out << ' ' << ts.symbol_name(static_cast<int>(i));
  out << "\ntiles: " << ts.tiles().size() << '\n';
  for (const Tile& t : ts.tiles()) {
    out << ts.symbol_name(t.north) << ' ' << ts.symbol_name(t.east) << ' ' << ts.symbol_name(t.south) << ' '
        << ts.symbol_name(t.west) << '\n';
  }
  out << "row:";
  for (int s : inst.row) out << ' ' << ts.symbol_name(s);
  out << '\n';
  return out.str();
}

BitString tiling_f(std::string_view input) {
  auto inst = parse_instance(input);
  if (!inst) return BitString(input);
  const ClosureResult r = tile_closure(inst->tiles, inst->row, inst->row.size());
  if (r.status != ClosureResult::Status::Completed) return BitString(input);
  inst->row = r.top;
  return serialize_instance(*inst);
}

}  // namespace owf::tiling
