#ifndef SPINSIM_HARNESS_HPP_
#define SPINSIM_HARNESS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinsim/sampler.hpp"

namespace spinsim {

struct SweepRow {
  double theta;
  double exact;
  double sampled_mean;
  double std_error;
  /// (sampled_mean - exact) / std_error; empty when std_error is zero.
  std::optional<double> z_score;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Mode mode = Mode::Single;

  /// Largest |z| over rows with a defined z score.
  double max_abs_z() const;
  /// Rows with zero standard error must match the exact value.
  bool degenerate_rows_exact(double tol = 1e-12) const;
  /// max |z| above this marks a failed sweep.
  static constexpr double kFlagThreshold = 6.0;
  bool flagged() const;
};

/// Exact correlation of the geometric model at context angle theta:
/// cos(theta) for a single spin, -cos(theta) for the singlet.
double exact_correlation(Mode mode, double theta);

/// Compares sampled and exact correlations on grid_size uniformly spaced
/// angles covering [0, pi], one fresh phi realization per grid point.
SweepReport agreement_sweep(Mode mode, std::size_t grid_size, std::size_t n, std::uint64_t seed,
                            SamplerOptions opts = {});

enum class Engine { Exact, Sampled };

const char* to_string(Engine e);
Engine parse_engine(const std::string& s);

/// Measurement settings (a, a', b, b').
struct ChshAngles {
  double a = 0;
  double a_prime = 0;
  double b = 0;
  double b_prime = 0;
};

/// Settings that maximize the singlet s value: (0, pi/2, pi/4, 3pi/4).
ChshAngles canonical_chsh_angles();

struct ChshResult {
  ChshAngles angles;
  /// E(a,b), E(a,b'), E(a',b), E(a',b')
  std::array<double, 4> correlations{};
  /// Per-context standard errors, zero for the exact engine.
  std::array<double, 4> std_errors{};
  double s_value = 0;
  /// Quadrature sum of the four standard errors.
  double s_std_error = 0;
  Engine engine = Engine::Exact;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool shared_stream = false;
};

/// |E(a,b) - E(a,b') + E(a',b) + E(a',b')|
double chsh_combination(const std::array<double, 4>& e);

/// Singlet CHSH value. The sampled engine draws an independent phi
/// realization per context unless shared_stream is set, which reuses one
/// stream for all four contexts and is not a physical model.
ChshResult chsh(const ChshAngles& angles, Engine engine, std::size_t n, std::uint64_t seed,
                bool shared_stream = false, SamplerOptions opts = {});

/// Largest exact-engine s value over `trials` uniformly random angle sets.
double chsh_random_search(std::size_t trials, std::uint64_t seed);

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Asymptotic critical value at alpha = 0.01.
double ks_critical_001(std::size_t n);

struct KsResult {
  double statistic;
  double critical_001;
  bool pass;
  std::size_t n;
  std::uint64_t seed;
};

/// Sampled phi against the CDF (1 - cos phi) / 2.
KsResult ks_test(std::size_t n, std::uint64_t seed);

/// Same test applied to caller-provided samples.
KsResult ks_test(std::span<const double> samples, std::uint64_t seed = 0);

}  // namespace spinsim

#endif  // SPINSIM_HARNESS_HPP_
