#ifndef SPINSIM_SAMPLER_HPP_
#define SPINSIM_SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spinsim {

/*
 * Hidden-angle engine. phi lies in [0, pi] with density sin(phi) / 2 and is
 * drawn by the inverse CDF phi = acos(1 - 2u).
 *
 * Random streams: every stream is a std::mt19937_64 seeded from a 64-bit
 * value. Child streams are derived with substream_seed(parent, index), a
 * SplitMix64 finalizer over (parent, index). A draw sequence of length n is
 * split into fixed blocks of kBlockSize draws; block b uses the stream
 * substream_seed(seed, b). Results therefore do not depend on how many
 * worker threads process the blocks.
 */

enum class Mode { Single, Bipartite };

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

inline constexpr std::size_t kBlockSize = std::size_t{1} << 16;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t substream_seed(std::uint64_t parent, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
double uniform01(std::mt19937_64& engine);

double pdf(double phi);
double cdf(double phi);
double inverse_cdf(double u);

/// Context for the geometric partition: the angle is folded into [0, pi].
class PartitionSpec {
 public:
  PartitionSpec(Mode mode, double theta_ab);

  Mode mode() const { return mode_; }
  double theta() const { return theta_; }

 private:
  Mode mode_;
  double theta_;
};

/// Folds any finite angle to [0, pi] using cos symmetry.
double fold_to_pi(double theta);

/// +1 when phi >= theta_ab (single); negated in bipartite mode.
int classify(double phi, const PartitionSpec& spec);

struct PhiSample {
  double phi;
  double context_angle;
  int outcome;
};

PhiSample make_sample(double phi, const PartitionSpec& spec);

/// n draws of phi for the given seed, in block order.
std::vector<double> sample_phi(std::uint64_t seed, std::size_t n);

struct SamplerOptions {
  unsigned workers = 1;
};

struct PartitionProbabilities {
  double p_plus;
  double p_minus;
  std::size_t count_plus;
  std::size_t n;
};

PartitionProbabilities partition_probabilities(const PartitionSpec& spec, std::size_t n,
                                               std::uint64_t seed, SamplerOptions opts = {});

struct CorrelationEstimate {
  double mean = 0;
  double std_error = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

/// Builds an estimate from the number of +1 outcomes among n. The standard
/// error uses the (n - 1) sample standard deviation.
CorrelationEstimate estimate_from_counts(std::size_t count_plus, std::size_t n, std::uint64_t seed);

CorrelationEstimate estimate_correlation(const PartitionSpec& spec, std::size_t n,
                                         std::uint64_t seed, SamplerOptions opts = {});

/// One independent phi realization per context: context k draws from
/// substream_seed(seed, k). No draws are shared between contexts.
std::vector<CorrelationEstimate> fresh_context_estimates(std::span<const double> thetas, Mode mode,
                                                         std::size_t n, std::uint64_t seed,
                                                         SamplerOptions opts = {});

/// Non-physical variant: every context reclassifies the one phi stream
/// drawn from seed. Exists only to contrast with fresh_context_estimates.
std::vector<CorrelationEstimate> shared_stream_estimates(std::span<const double> thetas, Mode mode,
                                                         std::size_t n, std::uint64_t seed,
                                                         SamplerOptions opts = {});

/// (1/2) int_theta^pi sin and (1/2) int_0^theta sin by adaptive Simpson.
std::pair<double, double> numeric_partition_integrals(double theta);

/// Adaptive Simpson quadrature of f on [lo, hi] to absolute tolerance tol.
template <typename F>
double integrate(F&& f, double lo, double hi, double tol = 1e-13);

}  // namespace spinsim

#include "spinsim/detail/quadrature.hpp"

#endif  // SPINSIM_SAMPLER_HPP_
