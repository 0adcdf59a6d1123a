#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace owf {

// Bit strings are std::strings over the characters '0' and '1'. Substring
// search, hashing and slicing then come for free from the standard library.
using BitString = std::string;

bool is_bit_string(std::string_view s);

// Throws owf::Error naming `what` if `s` contains anything but 0/1.
void require_bits(std::string_view s, std::string_view what);

// Fixed-width big-endian binary rendering of v.
BitString to_binary(std::uint64_t v, int width);
std::uint64_t from_binary(std::string_view bits);

// Number of bits needed to write every value in [0, count).
int bit_width_for(std::uint64_t count);

// Elias gamma code of v >= 1: floor(log2 v) zeros followed by v in binary.
void append_gamma(BitString& out, std::uint64_t v);

// Sequential reader over a bit string. All reads return nullopt instead of
// running past the end, so malformed inputs are rejected without throwing.
class BitReader {
 public:
  explicit BitReader(std::string_view bits) : bits_(bits) {}

  std::optional<std::uint64_t> read_gamma();
  std::optional<std::string_view> read(std::size_t n);

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bits_.size() - pos_; }
  std::string_view rest() const { return bits_.substr(pos_); }

 private:
  std::string_view bits_;
  std::size_t pos_ = 0;
};

}  // namespace owf
