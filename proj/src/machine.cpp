#include "owf/machine.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "owf/error.hpp"

namespace owf {

char symbol_char(Symbol s) {
  switch (s) {
    case Symbol::Zero: return '0';
    case Symbol::One: return '1';
    case Symbol::Blank: return 'B';
  }
  return '?';
}

Symbol symbol_from_char(char c) {
  switch (c) {
    case '0': return Symbol::Zero;
    case '1': return Symbol::One;
    case 'B': return Symbol::Blank;
    default: throw Error(std::string("not a tape symbol: '") + c + "'");
  }
}

std::string symbol_name(Symbol s) { return std::string(1, symbol_char(s)); }

Machine::Machine(std::vector<std::string> states, int start, int halt,
                 std::vector<std::array<Transition, 3>> table)
    : states_(std::move(states)), start_(start), halt_(halt), table_(std::move(table)) {
  const int n = static_cast<int>(states_.size());
  if (start_ < 0 || start_ >= n || halt_ < 0 || halt_ >= n) throw Error("start/halt state out of range");
  if (start_ == halt_) throw Error("start state must differ from the halt state");
  if (table_.size() != states_.size()) throw Error("transition table does not cover every state");
  for (int q = 0; q < n; ++q) {
    if (q == halt_) continue;
    for (const Transition& t : table_[static_cast<std::size_t>(q)]) {
      if (t.next < 0 || t.next >= n) throw Error("transition to unknown state");
    }
  }
}

int Machine::state_index(std::string_view name) const {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

const Transition& Machine::transition(int q, Symbol a) const {
  if (q == halt_) throw Error("the halt state has no transitions");
  return table_.at(static_cast<std::size_t>(q))[static_cast<std::size_t>(a)];
}

std::string Machine::to_text() const {
  std::ostringstream out;
  out << "TM v1\nstart: " << states_[static_cast<std::size_t>(start_)]
      << "\nhalt: " << states_[static_cast<std::size_t>(halt_)] << '\n';
  for (int q = 0; q < static_cast<int>(states_.size()); ++q) {
    if (q == halt_) continue;
    for (Symbol a : kTapeSymbols) {
      const Transition& t = transition(q, a);
      out << state_name(q) << ' ' << symbol_char(a) << " -> " << state_name(t.next) << ' '
          << symbol_char(t.write) << ' ' << (t.move == Direction::Left ? 'L' : 'R') << '\n';
    }
  }
  return out.str();
}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({std::string(line.substr(begin, i - begin)), begin + 1});
  }
  return out;
}

std::optional<Symbol> parse_symbol(const std::string& s) {
  if (s.size() != 1) return std::nullopt;
  switch (s[0]) {
    case '0': return Symbol::Zero;
    case '1': return Symbol::One;
    case 'B': return Symbol::Blank;
    default: return std::nullopt;
  }
}

}  // namespace

Machine parse_machine(std::string_view text) {
  struct Pending {
    std::string from;
    Symbol read;
    std::string to;
    Symbol write;
    Direction move;
    std::size_t line;
  };

  std::vector<std::string> names;
  std::map<std::string, int, std::less<>> index;
  auto intern = [&](const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(names.size());
    names.push_back(name);
    index.emplace(name, id);
    return id;
  };

  std::optional<std::string> start;
  std::optional<std::string> halt;
  std::vector<Pending> pending;
  bool saw_header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::vector<Token> tok = tokenize(line);
    if (tok.empty()) continue;

    if (!saw_header) {
      if (tok.size() != 2 || tok[0].text != "TM" || tok[1].text != "v1") {
        throw ParseError("expected header \"TM v1\"", line_no, tok[0].column);
      }
      saw_header = true;
      continue;
    }
    if (tok[0].text == "start:" || tok[0].text == "halt:") {
      if (tok.size() != 2) throw ParseError("expected exactly one state name", line_no, tok[0].column);
      auto& slot = tok[0].text == "start:" ? start : halt;
      if (slot) throw ParseError("duplicate " + tok[0].text + " line", line_no, tok[0].column);
      slot = tok[1].text;
      intern(tok[1].text);
      continue;
    }
    if (tok.size() != 6 || tok[2].text != "->") {
      throw ParseError("expected \"<q> <a> -> <p> <b> <L|R>\"", line_no, tok[0].column);
    }
    const auto read = parse_symbol(tok[1].text);
    if (!read) throw ParseError("tape symbol must be 0, 1 or B", line_no, tok[1].column);
    const auto write = parse_symbol(tok[4].text);
    if (!write) throw ParseError("tape symbol must be 0, 1 or B", line_no, tok[4].column);
    if (tok[5].text != "L" && tok[5].text != "R") throw ParseError("move must be L or R", line_no, tok[5].column);
    pending.push_back({tok[0].text, *read, tok[3].text, *write,
                       tok[5].text == "L" ? Direction::Left : Direction::Right, line_no});
    intern(tok[0].text);
    intern(tok[3].text);
  }

  if (!saw_header) throw ParseError("empty machine file", line_no, 1);
  if (!start) throw ParseError("missing \"start:\" line", line_no, 1);
  if (!halt) throw ParseError("missing \"halt:\" line", line_no, 1);
  if (*start == *halt) throw ParseError("start state must differ from the halt state", line_no, 1);

  const int halt_id = index.at(*halt);
  std::vector<std::array<std::optional<Transition>, 3>> table(names.size());
  for (const Pending& p : pending) {
    const int q = index.at(p.from);
    if (q == halt_id) throw ParseError("the halt state may not have transitions", p.line, 1);
    auto& slot = table[static_cast<std::size_t>(q)][static_cast<std::size_t>(p.read)];
    if (slot) throw ParseError("duplicate transition for (" + p.from + "," + symbol_char(p.read) + ")", p.line, 1);
    slot = Transition{index.at(p.to), p.write, p.move};
  }

  std::vector<std::array<Transition, 3>> total(names.size());
  for (std::size_t q = 0; q < names.size(); ++q) {
    if (static_cast<int>(q) == halt_id) continue;
    for (Symbol a : kTapeSymbols) {
      const auto& slot = table[q][static_cast<std::size_t>(a)];
      if (!slot) {
        throw ParseError("partial transition table: no transition for (" + names[q] + "," + symbol_char(a) + ")",
                         line_no, 1);
      }
      total[q][static_cast<std::size_t>(a)] = *slot;
    }
  }
  return Machine(std::move(names), index.at(*start), halt_id, std::move(total));
}

Configuration initial_configuration(const Machine& m, const BitString& input) {
  require_bits(input, "machine input");
  Configuration c;
  c.tape.reserve(input.size());
  for (char ch : input) c.tape.push_back(symbol_from_char(ch));
  c.state = m.start();
  return c;
}

StepResult step(const Machine& m, const Configuration& c) {
  if (c.state == m.halt()) return Crashed{"step from the halt state"};
  const Transition& t = m.transition(c.state, c.read());
  if (t.move == Direction::Left && c.head == 0) return Crashed{"left off tape"};
  Configuration next = c;
  if (next.head == next.tape.size()) next.tape.push_back(Symbol::Blank);
  next.tape[next.head] = t.write;
  next.head = t.move == Direction::Left ? next.head - 1 : next.head + 1;
  next.state = t.next;
  ++next.steps;
  return next;
}

RunResult run(const Machine& m, const BitString& input, std::uint64_t budget) {
  Configuration c = initial_configuration(m, input);
  while (c.state != m.halt()) {
    if (c.steps >= budget) return BudgetExceeded{};
    StepResult r = step(m, c);
    if (auto* crash = std::get_if<Crashed>(&r)) return *crash;
    c = std::move(std::get<Configuration>(r));
  }
  Halted h;
  h.head = c.head;
  h.steps = c.steps;
  for (std::size_t i = 0; i < input.size(); ++i) {
    h.output += symbol_char(i < c.tape.size() ? c.tape[i] : Symbol::Blank);
  }
  h.tape = std::move(c.tape);
  return h;
}

namespace {

// Builds TM v1 source line by line.
class Source {
 public:
  Source(const std::string& start, const std::string& halt) {
    out_ << "TM v1\nstart: " << start << "\nhalt: " << halt << '\n';
  }
  void add(const std::string& q, char a, const std::string& p, char b, char move) {
    out_ << q << ' ' << a << " -> " << p << ' ' << b << ' ' << move << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string bit(int b) { return b ? "1" : "0"; }

// Shared tail: walk left over bits until the blank at cell 0, write the
// remembered bit there and step right into h.
void add_return(Source& src, const std::string& state, char remembered) {
  src.add(state, '0', state, '0', 'L');
  src.add(state, '1', state, '1', 'L');
  src.add(state, 'B', "h", remembered, 'R');
}

std::string id_source() {
  Source src("s", "h");
  for (char a : {'0', '1', 'B'}) src.add("s", a, "h", a, 'R');
  return src.str();
}

std::string not_source() {
  Source src("s", "h");
  src.add("s", '0', "r1", 'B', 'R');
  src.add("s", '1', "r0", 'B', 'R');
  src.add("s", 'B', "h", 'B', 'R');
  for (char b : {'0', '1'}) {
    const std::string sweep = std::string("r") + b;
    const std::string back = std::string("l") + b;
    src.add(sweep, '0', sweep, '1', 'R');
    src.add(sweep, '1', sweep, '0', 'R');
    src.add(sweep, 'B', back, 'B', 'L');
    add_return(src, back, b);
  }
  return src.str();
}

std::string rot_pair_source() {
  // Cell 0 holds the blank marker; the bit owed to cell 0 (x1) rides along in
  // the suffix _d of every state.
  Source src("s", "h");
  src.add("s", '0', "f0", 'B', 'R');
  src.add("s", '1', "f1", 'B', 'R');
  src.add("s", 'B', "h", 'B', 'R');
  for (int c = 0; c < 2; ++c) {
    // At cell 1 holding x0 = c: write it, remember x1 for cell 0.
    const std::string f = "f" + bit(c);
    src.add(f, '0', "e_0", bit(c)[0], 'R');
    src.add(f, '1', "e_1", bit(c)[0], 'R');
    src.add(f, 'B', "ret_" + bit(c), 'B', 'L');
  }
  for (int d = 0; d < 2; ++d) {
    const std::string sd = "_" + bit(d);
    // e: at an even cell, start of a pair
    for (int c = 0; c < 2; ++c) src.add("e" + sd, bit(c)[0], "o" + bit(c) + sd, bit(c)[0], 'R');
    src.add("e" + sd, 'B', "ret" + sd, 'B', 'L');
    // o<c>: at the odd cell; write c here, carry this cell's bit back left
    for (int c = 0; c < 2; ++c) {
      const std::string o = "o" + bit(c) + sd;
      for (int e = 0; e < 2; ++e) src.add(o, bit(e)[0], "w" + bit(e) + sd, bit(c)[0], 'L');
      src.add(o, 'B', "ret" + sd, 'B', 'L');
    }
    // w<e>: back at the even cell, store e and skip the finished odd cell
    for (int e = 0; e < 2; ++e) {
      const std::string w = "w" + bit(e) + sd;
      for (char a : {'0', '1', 'B'}) src.add(w, a, "k" + sd, bit(e)[0], 'R');
    }
    for (char a : {'0', '1', 'B'}) src.add("k" + sd, a, "e" + sd, a, 'R');
    add_return(src, "ret" + sd, bit(d)[0]);
  }
  return src.str();
}

std::string parity_mark_source() {
  // State p<f><q>: f = value owed to cell 0 (x0), q = running parity.
  Source src("s", "h");
  src.add("s", '0', "p00", 'B', 'R');
  src.add("s", '1', "p11", 'B', 'R');
  src.add("s", 'B', "h", 'B', 'R');
  for (int f = 0; f < 2; ++f) {
    for (int q = 0; q < 2; ++q) {
      const std::string p = "p" + bit(f) + bit(q);
      for (int c = 0; c < 2; ++c) {
        const int next = q ^ c;
        src.add(p, bit(c)[0], "p" + bit(f) + bit(next), bit(next)[0], 'R');
      }
      src.add(p, 'B', "l" + bit(f), 'B', 'L');
    }
    add_return(src, "l" + bit(f), bit(f)[0]);
  }
  return src.str();
}

}  // namespace

std::vector<std::string> library_names() { return {"id", "not", "rot-pair", "parity-mark"}; }

std::string library_source(std::string_view name) {
  if (name == "id") return id_source();
  if (name == "not") return not_source();
  if (name == "rot-pair") return rot_pair_source();
  if (name == "parity-mark") return parity_mark_source();
  throw Error("unknown library machine: " + std::string(name));
}

Machine library_machine(std::string_view name) { return parse_machine(library_source(name)); }

Machine load_machine(const std::string& spec) {
  std::string_view name = spec;
  if (name.starts_with("lib:")) return library_machine(name.substr(4));
  std::ifstream in(spec);
  if (!in) {
    for (const auto& lib : library_names()) {
      if (lib == spec) return library_machine(spec);
    }
    throw Error("cannot open machine file: " + spec);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str());
}

}  // namespace owf
