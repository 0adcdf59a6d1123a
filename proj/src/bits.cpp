#include "owf/bits.hpp"

#include <bit>

#include "owf/error.hpp"

namespace owf {

bool is_bit_string(std::string_view s) {
  for (char c : s) {
    if (c != '0' && c != '1') return false;
  }
  return true;
}

void require_bits(std::string_view s, std::string_view what) {
  if (!is_bit_string(s)) {
    throw Error(std::string(what) + " must be a 0/1 string, got \"" + std::string(s) + "\"");
  }
}

BitString to_binary(std::uint64_t v, int width) {
  BitString out(static_cast<std::size_t>(width), '0');
  for (int i = width - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = (v & 1U) ? '1' : '0';
    v >>= 1U;
  }
  return out;
}

std::uint64_t from_binary(std::string_view bits) {
  std::uint64_t v = 0;
  for (char c : bits) v = (v << 1U) | static_cast<std::uint64_t>(c == '1');
  return v;
}

int bit_width_for(std::uint64_t count) {
  if (count <= 2) return 1;
  return static_cast<int>(std::bit_width(count - 1));
}

void append_gamma(BitString& out, std::uint64_t v) {
  if (v == 0) throw Error("gamma code is defined for positive integers only");
  const int width = static_cast<int>(std::bit_width(v));
  out.append(static_cast<std::size_t>(width - 1), '0');
  out += to_binary(v, width);
}

std::optional<std::uint64_t> BitReader::read_gamma() {
  std::size_t zeros = 0;
  while (pos_ + zeros < bits_.size() && bits_[pos_ + zeros] == '0') ++zeros;
  // 63 leading zeros would already overflow a 64-bit value.
  if (zeros >= 63 || pos_ + 2 * zeros + 1 > bits_.size()) return std::nullopt;
  const std::uint64_t v = from_binary(bits_.substr(pos_ + zeros, zeros + 1));
  pos_ += 2 * zeros + 1;
  return v;
}

std::optional<std::string_view> BitReader::read(std::size_t n) {
  if (n > remaining()) return std::nullopt;
  std::string_view out = bits_.substr(pos_, n);
  pos_ += n;
  return out;
}

}  // namespace owf
