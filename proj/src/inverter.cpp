#include "owf/inverter.hpp"

#include <atomic>
#include <chrono>
#include <deque>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include "owf/error.hpp"
#include "owf/pcp.hpp"
#include "owf/sampler.hpp"
#include "owf/stcompile.hpp"
#include "owf/tiling.hpp"

namespace owf::inverter {

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Staf: return "staf";
    case Kind::Ptf: return "ptf";
    case Kind::Tiling: return "tiling";
  }
  return "?";
}

Kind parse_kind(std::string_view text) {
  if (text == "staf" || text == "semithue") return Kind::Staf;
  if (text == "ptf" || text == "pcp") return Kind::Ptf;
  if (text == "tiling") return Kind::Tiling;
  throw Error("unknown function kind \"" + std::string(text) + "\" (use staf, ptf or tiling)");
}

BitString evaluate(Kind kind, std::string_view input, const DeterminismPolicy& policy) {
  switch (kind) {
    case Kind::Staf: return semithue::staf(input, policy);
    case Kind::Ptf: return pcp::ptf(input, policy);
    case Kind::Tiling: return tiling::tiling_f(input);
  }
  return BitString(input);
}

std::optional<Frame> payload_frame(Kind kind, std::string_view target) {
  std::size_t n = 0;
  switch (kind) {
    case Kind::Staf: {
      auto inst = semithue::parse_instance(target);
      if (!inst) return std::nullopt;
      n = inst->payload.size();
      break;
    }
    case Kind::Ptf: {
      auto inst = pcp::parse_instance(target);
      if (!inst) return std::nullopt;
      n = inst->payload.size();
      break;
    }
    case Kind::Tiling: {
      auto inst = tiling::parse_instance(target);
      if (!inst) return std::nullopt;
      n = inst->row.size() * static_cast<std::size_t>(bit_width_for(inst->tiles.symbol_count()));
      break;
    }
  }
  // The payload (or row) is the tail of every serialization.
  auto prefix = std::make_shared<const BitString>(target.substr(0, target.size() - n));
  return Frame{n, [prefix](const BitString& x) { return *prefix + x; }};
}

Frame compiled_frame(Kind kind, const Machine& m, std::size_t n, std::uint64_t salt_seed) {
  switch (kind) {
    case Kind::Staf: {
      auto c = std::make_shared<const stcompile::StCompilation>(stcompile::compile_semithue(m, n, salt_seed));
      return Frame{n, [c](const BitString& x) {
                     // Built by hand so that inputs without a block split still
                     // have an image (the identity, in practice).
                     const BitString w = c->table.code(c->start) + x + c->table.code(c->marker);
                     return semithue::serialize_instance({c->system, w});
                   }};
    }
    case Kind::Ptf: {
      auto c = std::make_shared<const pcp::PcpCompilation>(pcp::compile_pcp(m, n, salt_seed));
      return Frame{n, [c](const BitString& x) {
                     return pcp::serialize_instance({c->pairs, pcp::pcp_encode_input(*c, x)});
                   }};
    }
    case Kind::Tiling: {
      auto c = std::make_shared<const tiling::TileCompilation>(tiling::compile_tileset(m));
      return Frame{n, [c](const BitString& x) {
                     return tiling::serialize_instance({c->tiles, tiling::bottom_row(*c, x)});
                   }};
    }
  }
  throw Error("unknown kind");
}

std::string to_string(InvertResult::Status s) {
  switch (s) {
    case InvertResult::Status::Found: return "found";
    case InvertResult::Status::NotFound: return "not-found";
    case InvertResult::Status::LimitExceeded: return "limit-exceeded";
  }
  return "?";
}

InvertResult brute_invert(Kind kind, std::string_view target, const DeterminismPolicy& policy,
                          const InvertOptions& options) {
  auto frame = payload_frame(kind, target);
  if (!frame) {
    InvertResult r;
    r.status = InvertResult::Status::Found;
    r.preimage = BitString(target);
    r.attempts = 1;
    return r;
  }
  return brute_invert(kind, target, *frame, policy, options);
}

InvertResult brute_invert(Kind kind, std::string_view target, const Frame& frame, const DeterminismPolicy& policy,
                          const InvertOptions& options) {
  if (frame.n > 62) throw Error("frame too large for exhaustive search");
  const std::uint64_t total = std::uint64_t{1} << frame.n;
  const std::uint64_t limit = options.limit == 0 ? total : std::min(options.limit, total);
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  constexpr std::uint64_t kChunk = 64;

  std::atomic<std::uint64_t> best{kNone};
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  const int width = static_cast<int>(frame.n);

  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t start = next.fetch_add(kChunk);
        if (start >= limit || start > best.load() || failed.load()) return;
        const std::uint64_t stop = std::min(start + kChunk, limit);
        for (std::uint64_t i = start; i < stop && i < best.load(); ++i) {
          const BitString x = width == 0 ? BitString() : to_binary(i, width);
          if (evaluate(kind, frame.embed(x), policy) != target) continue;
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
    } catch (...) {
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  InvertResult r;
  if (best.load() != kNone) {
    const std::uint64_t i = best.load();
    r.status = InvertResult::Status::Found;
    r.x = width == 0 ? BitString() : to_binary(i, width);
    r.preimage = frame.embed(*r.x);
    r.attempts = i + 1;
  } else if (limit < total) {
    r.status = InvertResult::Status::LimitExceeded;
    r.attempts = limit;
  } else {
    r.status = InvertResult::Status::NotFound;
    r.attempts = total;
  }
  return r;
}

std::set<BitString> backward_search(const semithue::RewriteSystem& sys, std::string_view y, std::size_t budget,
                                    std::size_t cap) {
  std::set<BitString> seen = {BitString(y)};
  std::deque<std::pair<BitString, std::size_t>> queue = {{BitString(y), 0}};
  while (!queue.empty() && seen.size() < cap) {
    auto [s, depth] = std::move(queue.front());
    queue.pop_front();
    if (depth == budget) continue;
    for (const auto& r : sys.rules()) {
      for (std::size_t pos = s.find(r.rhs); pos != BitString::npos; pos = s.find(r.rhs, pos + 1)) {
        BitString prev = s.substr(0, pos) + r.lhs + s.substr(pos + r.rhs.size());
        if (seen.insert(prev).second) {
          queue.emplace_back(std::move(prev), depth + 1);
          if (seen.size() >= cap) return seen;
        }
      }
    }
  }
  return seen;
}

namespace {

BitString sample_instance(Kind kind, const sampler::DefaultUniform& d, sampler::Rng& rng) {
  switch (kind) {
    case Kind::Staf: return semithue::serialize_instance(sampler::sample_sts_instance(d, rng).instance);
    case Kind::Ptf: return pcp::serialize_instance(sampler::sample_pcp_instance(d, rng).instance);
    case Kind::Tiling: return tiling::serialize_instance(sampler::sample_tiling_instance(d, rng));
  }
  return {};
}

}  // namespace

std::vector<ExperimentRow> owf_experiment(const ExperimentConfig& config) {
  using Clock = std::chrono::steady_clock;
  const Machine m = load_machine(config.machine);
  const sampler::DefaultUniform d(config.max_int, config.max_len);
  std::vector<ExperimentRow> rows;

  for (Kind kind : config.kinds) {
    const bool uses_policy = kind != Kind::Tiling;
    const std::vector<DeterminismPolicy> policies =
        uses_policy ? config.policies : std::vector<DeterminismPolicy>{config.policies.front()};
    for (const DeterminismPolicy& policy : policies) {
      for (std::uint64_t seed : config.seeds) {
        sampler::Rng rng(seed);
        std::size_t identities = 0;
        for (std::size_t i = 0; i < config.identity_samples; ++i) {
          const BitString inst = sample_instance(kind, d, rng);
          if (evaluate(kind, inst, policy) == inst) ++identities;
        }
        const double identity_rate =
            config.identity_samples == 0 ? 0.0 : static_cast<double>(identities) / config.identity_samples;

        for (std::size_t n : config.ns) {
          const Frame frame = compiled_frame(kind, m, n, seed);
          BitString x;
          do {
            x = sampler::uniform_bits(rng, n);
          } while (kind == Kind::Staf && !block_decompose(x));
          const BitString input = frame.embed(x);

          constexpr int kReps = 3;
          BitString target;
          const auto t0 = Clock::now();
          for (int r = 0; r < kReps; ++r) target = evaluate(kind, input, policy);
          const double us = std::chrono::duration<double, std::micro>(Clock::now() - t0).count() / kReps;

          InvertOptions opts;
          opts.jobs = config.jobs;
          const InvertResult inv = brute_invert(kind, target, frame, policy, opts);

          ExperimentRow row;
          row.kind = kind;
          row.machine = config.machine;
          row.n = n;
          row.seed = seed;
          row.forward_us = us;
          row.attempts = inv.attempts;
          row.found = inv.status == InvertResult::Status::Found;
          row.identity_rate = identity_rate;
          row.policy = uses_policy ? policy.to_string() : "rows";
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::string to_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << kExperimentHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.kind) << ',' << r.machine << ',' << r.n << ',' << r.seed << ',' << r.forward_us << ','
        << r.attempts << ',' << (r.found ? 1 : 0) << ',' << r.identity_rate << ',' << r.policy << '\n';
  }
  return out.str();
}

}  // namespace owf::inverter
