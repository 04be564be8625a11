#include "spinsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "spinsim/bipartite.hpp"

namespace spinsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMinSamples = 1000;

void require_min_samples(std::size_t n, const char* what) {
  if (n < kMinSamples) {
    throw std::invalid_argument(std::string(what) + " requires n >= 1000");
  }
}

}  // namespace

double SweepReport::max_abs_z() const {
  double m = 0;
  for (const auto& r : rows) {
    if (r.z_score) m = std::max(m, std::abs(*r.z_score));
  }
  return m;
}

bool SweepReport::degenerate_rows_exact(double tol) const {
  return std::all_of(rows.begin(), rows.end(), [tol](const SweepRow& r) {
    return r.z_score || std::abs(r.sampled_mean - r.exact) <= tol;
  });
}

bool SweepReport::flagged() const {
  return max_abs_z() > kFlagThreshold || !degenerate_rows_exact();
}

double exact_correlation(Mode mode, double theta) {
  const double c = std::cos(theta);
  return mode == Mode::Single ? c : -c;
}

SweepReport agreement_sweep(Mode mode, std::size_t grid_size, std::size_t n, std::uint64_t seed,
                            SamplerOptions opts) {
  if (grid_size < 2) throw std::invalid_argument("grid_size must be at least 2");
  require_min_samples(n, "agreement_sweep");

  std::vector<double> grid(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    grid[i] = kPi * static_cast<double>(i) / static_cast<double>(grid_size - 1);
  }
  grid.back() = kPi;

  const auto estimates = fresh_context_estimates(grid, mode, n, seed, opts);
  SweepReport report;
  report.n = n;
  report.seed = seed;
  report.mode = mode;
  report.rows.reserve(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    SweepRow row{grid[i], exact_correlation(mode, grid[i]), estimates[i].mean,
                 estimates[i].std_error, std::nullopt};
    if (row.std_error > 0) row.z_score = (row.sampled_mean - row.exact) / row.std_error;
    report.rows.push_back(row);
  }
  return report;
}

const char* to_string(Engine e) { return e == Engine::Exact ? "exact" : "sampled"; }

Engine parse_engine(const std::string& s) {
  if (s == "exact") return Engine::Exact;
  if (s == "sampled") return Engine::Sampled;
  throw std::invalid_argument("unknown engine '" + s + "'");
}

ChshAngles canonical_chsh_angles() { return {0.0, kPi / 2, kPi / 4, 3 * kPi / 4}; }

double chsh_combination(const std::array<double, 4>& e) {
  return std::abs(e[0] - e[1] + e[2] + e[3]);
}

ChshResult chsh(const ChshAngles& angles, Engine engine, std::size_t n, std::uint64_t seed,
                bool shared_stream, SamplerOptions opts) {
  using D = Direction<double>;
  const std::array<std::array<double, 2>, 4> pairs{{
      {angles.a, angles.b},
      {angles.a, angles.b_prime},
      {angles.a_prime, angles.b},
      {angles.a_prime, angles.b_prime},
  }};

  ChshResult r;
  r.angles = angles;
  r.engine = engine;
  r.seed = seed;
  r.shared_stream = shared_stream;

  if (engine == Engine::Exact) {
    for (std::size_t k = 0; k < 4; ++k) {
      r.correlations[k] = -std::cos(pairs[k][1] - pairs[k][0]);
    }
  } else {
    require_min_samples(n, "sampled chsh");
    r.n = n;
    std::array<double, 4> thetas{};
    for (std::size_t k = 0; k < 4; ++k) thetas[k] = context_angle(D(pairs[k][0]), D(pairs[k][1]));
    const auto est = shared_stream ? shared_stream_estimates(thetas, Mode::Bipartite, n, seed, opts)
                                   : fresh_context_estimates(thetas, Mode::Bipartite, n, seed, opts);
    double var = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      r.correlations[k] = est[k].mean;
      r.std_errors[k] = est[k].std_error;
      var += est[k].std_error * est[k].std_error;
    }
    r.s_std_error = std::sqrt(var);
  }
  r.s_value = chsh_combination(r.correlations);
  return r;
}

double chsh_random_search(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  double best = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    ChshAngles a;
    a.a = 2 * kPi * uniform01(engine);
    a.a_prime = 2 * kPi * uniform01(engine);
    a.b = 2 * kPi * uniform01(engine);
    a.b_prime = 2 * kPi * uniform01(engine);
    best = std::max(best, chsh(a, Engine::Exact, 0, seed).s_value);
  }
  return best;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic needs samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const auto di = static_cast<double>(i);
    d = std::max({d, (di + 1) / n - f, f - di / n});
  }
  return d;
}

double ks_critical_001(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

KsResult ks_test(std::span<const double> samples, std::uint64_t seed) {
  require_min_samples(samples.size(), "ks_test");
  const double d = ks_statistic(samples, [](double x) { return cdf(x); });
  const double crit = ks_critical_001(samples.size());
  return {d, crit, d < crit, samples.size(), seed};
}

KsResult ks_test(std::size_t n, std::uint64_t seed) {
  require_min_samples(n, "ks_test");
  const auto phi = sample_phi(seed, n);
  return ks_test(phi, seed);
}

}  // namespace spinsim
