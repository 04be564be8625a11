#include "spinsim/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "spinsim/types.hpp"

namespace spinsim {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

std::size_t block_length(std::size_t n, std::size_t block) {
  return std::min(kBlockSize, n - block * kBlockSize);
}

// Runs body(block) for every block, spreading blocks over workers.
template <typename Body>
void for_each_block(std::size_t blocks, unsigned workers, Body&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t b = next++; b < blocks; b = next++) body(b);
    });
  }
  for (auto& t : pool) t.join();
}

std::size_t count_plus(const PartitionSpec& spec, std::size_t n, std::uint64_t seed,
                       SamplerOptions opts) {
  const std::size_t blocks = block_count(n);
  std::vector<std::size_t> counts(blocks, 0);
  for_each_block(blocks, opts.workers, [&](std::size_t b) {
    std::mt19937_64 engine(substream_seed(seed, b));
    const std::size_t len = block_length(n, b);
    std::size_t c = 0;
    for (std::size_t i = 0; i < len; ++i) {
      c += classify(inverse_cdf(uniform01(engine)), spec) > 0;
    }
    counts[b] = c;
  });
  std::size_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

void require_positive(std::size_t n) {
  if (n == 0) throw std::invalid_argument("sample count must be at least 1");
}

}  // namespace

const char* to_string(Mode m) { return m == Mode::Single ? "single" : "bipartite"; }

Mode parse_mode(const std::string& s) {
  if (s == "single") return Mode::Single;
  if (s == "bipartite") return Mode::Bipartite;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(splitmix64(parent) ^ splitmix64(~index));
}

double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double pdf(double phi) { return (phi >= 0 && phi <= kPi) ? 0.5 * std::sin(phi) : 0.0; }

double cdf(double phi) {
  if (phi <= 0) return 0;
  if (phi >= kPi) return 1;
  return 0.5 * (1 - std::cos(phi));
}

double inverse_cdf(double u) { return std::acos(1 - 2 * u); }

double fold_to_pi(double theta) {
  const double w = wrap_two_pi(theta);
  return w > kPi ? 2 * kPi - w : w;
}

PartitionSpec::PartitionSpec(Mode mode, double theta_ab) : mode_(mode), theta_(fold_to_pi(theta_ab)) {}

int classify(double phi, const PartitionSpec& spec) {
  const int single = phi >= spec.theta() ? 1 : -1;
  return spec.mode() == Mode::Single ? single : -single;
}

PhiSample make_sample(double phi, const PartitionSpec& spec) {
  return {phi, spec.theta(), classify(phi, spec)};
}

std::vector<double> sample_phi(std::uint64_t seed, std::size_t n) {
  require_positive(n);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t b = 0; b < block_count(n); ++b) {
    std::mt19937_64 engine(substream_seed(seed, b));
    const std::size_t len = block_length(n, b);
    for (std::size_t i = 0; i < len; ++i) out.push_back(inverse_cdf(uniform01(engine)));
  }
  return out;
}

PartitionProbabilities partition_probabilities(const PartitionSpec& spec, std::size_t n,
                                               std::uint64_t seed, SamplerOptions opts) {
  require_positive(n);
  // Both modes share the single-mode fraction so that they swap exactly and
  // each pair sums to exactly one.
  const PartitionSpec single(Mode::Single, spec.theta());
  const std::size_t above = count_plus(single, n, seed, opts);
  const double q = static_cast<double>(above) / static_cast<double>(n);
  if (spec.mode() == Mode::Single) return {q, 1.0 - q, above, n};
  return {1.0 - q, q, n - above, n};
}

CorrelationEstimate estimate_from_counts(std::size_t count_plus, std::size_t n, std::uint64_t seed) {
  require_positive(n);
  const auto nd = static_cast<double>(n);
  const auto plus = static_cast<double>(count_plus);
  const auto minus = static_cast<double>(n - count_plus);
  CorrelationEstimate e;
  e.n = n;
  e.seed = seed;
  e.mean = (plus - minus) / nd;
  if (n > 1) {
    // sum of squares of +-1 values is n
    const double var = std::max(0.0, (nd - nd * e.mean * e.mean) / (nd - 1));
    e.std_error = std::sqrt(var / nd);
  }
  return e;
}

CorrelationEstimate estimate_correlation(const PartitionSpec& spec, std::size_t n,
                                         std::uint64_t seed, SamplerOptions opts) {
  require_positive(n);
  return estimate_from_counts(count_plus(spec, n, seed, opts), n, seed);
}

std::vector<CorrelationEstimate> fresh_context_estimates(std::span<const double> thetas, Mode mode,
                                                         std::size_t n, std::uint64_t seed,
                                                         SamplerOptions opts) {
  std::vector<CorrelationEstimate> out;
  out.reserve(thetas.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    out.push_back(estimate_correlation(PartitionSpec(mode, thetas[k]), n,
                                       substream_seed(seed, k), opts));
  }
  return out;
}

std::vector<CorrelationEstimate> shared_stream_estimates(std::span<const double> thetas, Mode mode,
                                                         std::size_t n, std::uint64_t seed,
                                                         SamplerOptions opts) {
  std::vector<CorrelationEstimate> out;
  out.reserve(thetas.size());
  for (double theta : thetas) {
    out.push_back(estimate_correlation(PartitionSpec(mode, theta), n, seed, opts));
  }
  return out;
}

std::pair<double, double> numeric_partition_integrals(double theta) {
  if (!(theta >= 0 && theta <= kPi)) {
    throw std::invalid_argument("theta must lie in [0, pi]");
  }
  const double i_plus = integrate(pdf, theta, kPi);
  const double i_minus = integrate(pdf, 0.0, theta);
  return {i_plus, i_minus};
}

}  // namespace spinsim
