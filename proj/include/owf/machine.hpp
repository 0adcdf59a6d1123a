#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "owf/bits.hpp"

namespace owf {

enum class Symbol : std::uint8_t { Zero = 0, One = 1, Blank = 2 };
enum class Direction : std::uint8_t { Left, Right };

inline constexpr std::array<Symbol, 3> kTapeSymbols = {Symbol::Zero, Symbol::One, Symbol::Blank};

char symbol_char(Symbol s);
Symbol symbol_from_char(char c);  // throws on anything but 0/1/B
std::string symbol_name(Symbol s);

struct Transition {
  int next = 0;
  Symbol write = Symbol::Blank;
  Direction move = Direction::Right;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Deterministic single-tape machine over {0,1,B} with a semi-infinite tape.
// The transition table is total on every non-halting state.
class Machine {
 public:
  Machine(std::vector<std::string> states, int start, int halt,
          std::vector<std::array<Transition, 3>> table);

  const std::vector<std::string>& states() const { return states_; }
  std::size_t state_count() const { return states_.size(); }
  int start() const { return start_; }
  int halt() const { return halt_; }
  const std::string& state_name(int q) const { return states_.at(static_cast<std::size_t>(q)); }
  int state_index(std::string_view name) const;  // -1 if unknown

  const Transition& transition(int q, Symbol a) const;

  // TM v1 text that parse_machine() maps back to an equal machine.
  std::string to_text() const;

 private:
  std::vector<std::string> states_;
  int start_;
  int halt_;
  std::vector<std::array<Transition, 3>> table_;
};

// Reads the "TM v1" text format. Throws ParseError (syntax, partial table,
// unknown state).
Machine parse_machine(std::string_view text);

struct Configuration {
  std::vector<Symbol> tape;  // explicit region; cells beyond are blank
  std::size_t head = 0;
  int state = 0;
  std::uint64_t steps = 0;

  Symbol read() const { return head < tape.size() ? tape[head] : Symbol::Blank; }
};

Configuration initial_configuration(const Machine& m, const BitString& input);

struct Halted {
  std::string output;  // tape cells 0..|input|-1 as 0/1/B characters
  std::size_t head = 0;
  std::uint64_t steps = 0;
  std::vector<Symbol> tape;
};
struct BudgetExceeded {};
struct Crashed {
  std::string reason;
};

using StepResult = std::variant<Configuration, Crashed>;
using RunResult = std::variant<Halted, BudgetExceeded, Crashed>;

StepResult step(const Machine& m, const Configuration& c);
RunResult run(const Machine& m, const BitString& input, std::uint64_t budget);

// Sample machines standing in for a quadratic-time length-preserving g:
//   id          - the identity, one step
//   not         - complements every bit
//   rot-pair    - swaps adjacent pairs, a trailing odd symbol stays put
//   parity-mark - running parity: cell i becomes x0 ^ ... ^ xi
// All of them halt in state h with the head on cell 1, using a temporary
// blank at cell 0 to find the left end on the way back.
std::vector<std::string> library_names();
std::string library_source(std::string_view name);
Machine library_machine(std::string_view name);

// Reads a machine from a file path, or from the library when `spec` names a
// library machine (optionally written as "lib:NAME").
Machine load_machine(const std::string& spec);

}  // namespace owf
