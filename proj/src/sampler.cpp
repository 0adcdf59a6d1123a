#include "owf/sampler.hpp"

#include <algorithm>
#include <set>

#include "owf/error.hpp"

namespace owf::sampler {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BitString uniform_bits(Rng& rng, std::size_t length) {
  BitString out;
  out.reserve(length);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < length; ++i) {
    if (i % 64 == 0) word = rng();
    out += (word >> (63 - i % 64)) & 1 ? '1' : '0';
  }
  return out;
}

namespace {

std::vector<double> inverse_square_cdf(std::uint64_t max) {
  std::vector<double> cdf(static_cast<std::size_t>(max));
  double total = 0;
  for (std::uint64_t n = 1; n <= max; ++n) {
    total += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    cdf[static_cast<std::size_t>(n - 1)] = total;
  }
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;
  return cdf;
}

// Smallest n with cdf[n - 1] > u.
std::uint64_t invert(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), std::ssize(cdf) - 1)) + 1;
}

double mass(const std::vector<double>& cdf, std::uint64_t n) {
  if (n == 0 || n > cdf.size()) return 0.0;
  const auto i = static_cast<std::size_t>(n - 1);
  return i == 0 ? cdf[0] : cdf[i] - cdf[i - 1];
}

}  // namespace

DefaultUniform::DefaultUniform(std::uint64_t max_int, std::size_t max_len)
    : max_int_(max_int), max_len_(max_len) {
  if (max_int < 1 || max_len < 1) throw Error("truncation bounds must be at least 1");
  if (max_int > (std::uint64_t{1} << 26)) throw Error("max_int above 2^26 is not supported");
  int_cdf_ = inverse_square_cdf(max_int);
  len_cdf_ = inverse_square_cdf(max_len);
}

std::uint64_t DefaultUniform::sample_int(Rng& rng) const { return invert(int_cdf_, uniform01(rng)); }

std::size_t DefaultUniform::sample_length(Rng& rng) const {
  return static_cast<std::size_t>(invert(len_cdf_, uniform01(rng)));
}

BitString DefaultUniform::sample_string(Rng& rng) const { return uniform_bits(rng, sample_length(rng)); }

double DefaultUniform::p_int(std::uint64_t n) const { return mass(int_cdf_, n); }
double DefaultUniform::p_length(std::size_t len) const { return mass(len_cdf_, len); }

double DefaultUniform::truncated_mass() const {
  // pi^2/6 minus the partial sum, in relative terms.
  constexpr double kZeta2 = 1.6449340668482264;
  double partial = 0;
  for (std::uint64_t n = max_int_; n >= 1; --n) partial += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  return (kZeta2 - partial) / kZeta2;
}

namespace {

std::uint64_t pairs_size(const std::vector<StringPair>& pairs) {
  std::uint64_t s = 0;
  for (const auto& p : pairs) s += p.first.size() + p.second.size();
  return s;
}

std::vector<StringPair> sample_pairs(const DefaultUniform& d, Rng& rng) {
  const std::uint64_t m = d.sample_int(rng);
  std::vector<StringPair> pairs;
  pairs.reserve(static_cast<std::size_t>(m));
  for (std::uint64_t i = 0; i < m; ++i) {
    BitString g = d.sample_string(rng);
    BitString h = d.sample_string(rng);
    pairs.push_back({std::move(g), std::move(h)});
  }
  return pairs;
}

}  // namespace

std::uint64_t StsSample::size() const {
  std::uint64_t s = n + instance.payload.size() + target.size();
  for (const auto& r : instance.system.rules()) s += r.lhs.size() + r.rhs.size();
  return s;
}

std::uint64_t PcpSample::size() const {
  return n + instance.payload.size() + target.size() + pairs_size(instance.pairs.pairs());
}

StsSample sample_sts_instance(const DefaultUniform& d, Rng& rng) {
  StsSample s;
  s.n = d.sample_int(rng);
  std::vector<semithue::Rule> rules;
  for (auto& p : sample_pairs(d, rng)) rules.push_back({std::move(p.first), std::move(p.second)});
  s.instance.system = semithue::RewriteSystem(std::move(rules));
  s.instance.payload = d.sample_string(rng);
  s.target = d.sample_string(rng);
  return s;
}

PcpSample sample_pcp_instance(const DefaultUniform& d, Rng& rng) {
  PcpSample s;
  s.n = d.sample_int(rng);
  s.instance.pairs = pcp::PairList(sample_pairs(d, rng));
  s.instance.payload = d.sample_string(rng);
  s.target = d.sample_string(rng);
  return s;
}

tiling::Instance sample_tiling_instance(const DefaultUniform& d, Rng& rng) {
  const std::uint64_t k = d.sample_int(rng);
  std::uint64_t t = d.sample_int(rng);
  if (k < 256) t = std::min(t, k * k * k * k);
  auto edge = [&] { return static_cast<int>(static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(k))); };
  std::set<tiling::Tile> seen;
  std::vector<tiling::Tile> tiles;
  while (tiles.size() < t) {
    tiling::Tile tile{edge(), edge(), edge(), edge()};
    if (seen.insert(tile).second) tiles.push_back(tile);
  }
  tiling::SymbolRow row(d.sample_length(rng));
  for (int& s : row) s = edge();
  return tiling::Instance{tiling::TileSet(static_cast<std::size_t>(k), std::move(tiles)), std::move(row)};
}

}  // namespace owf::sampler
