#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "spinsim/sampler.hpp"
#include "spinsim/spin.hpp"

using namespace spinsim;

namespace {

constexpr double kPi = std::numbers::pi;

double cos2_half(double t) { return std::pow(std::cos(t / 2), 2); }
double sin2_half(double t) { return std::pow(std::sin(t / 2), 2); }

}  // namespace

TEST_CASE("density") {
  CHECK(pdf(kPi / 2) == doctest::Approx(0.5));
  CHECK(pdf(0) == 0.0);
  CHECK(pdf(-0.1) == 0.0);
  CHECK(pdf(kPi + 0.1) == 0.0);
  CHECK(std::abs(integrate(pdf, 0.0, kPi) - 1.0) < 1e-10);
  // cdf is the integral of pdf
  for (double t : {0.2, 1.0, 2.5}) CHECK(std::abs(integrate(pdf, 0.0, t) - cdf(t)) < 1e-10);
}

TEST_CASE("inverse cdf endpoints") {
  CHECK(inverse_cdf(0.0) == 0.0);
  CHECK(inverse_cdf(0.5) == doctest::Approx(kPi / 2));
  for (double u : {0.1, 0.37, 0.8}) CHECK(cdf(inverse_cdf(u)) == doctest::Approx(u));
}

TEST_CASE("sampled phi") {
  SUBCASE("range and reproducibility") {
    const auto a = sample_phi(99, 200000);
    const auto b = sample_phi(99, 200000);
    CHECK(a == b);
    CHECK(a != sample_phi(100, 200000));
    for (double x : a) {
      REQUIRE(x >= 0);
      REQUIRE(x <= kPi);
    }
  }
  SUBCASE("prefix of a longer draw is the shorter draw") {
    const auto long_run = sample_phi(5, 3 * kBlockSize + 17);
    const auto short_run = sample_phi(5, kBlockSize + 3);
    CHECK(std::equal(short_run.begin(), short_run.end(), long_run.begin()));
  }
  SUBCASE("mean of cos phi vanishes") {
    const auto phi = sample_phi(2024, 1000000);
    double s = 0, s2 = 0;
    for (double x : phi) {
      const double c = std::cos(x);
      s += c;
      s2 += c * c;
    }
    const double n = static_cast<double>(phi.size());
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / (n - 1));
    CHECK(std::abs(mean) < 4 * se);
  }
  CHECK_THROWS_AS(sample_phi(1, 0), std::invalid_argument);
}

TEST_CASE("partition spec folds the angle") {
  CHECK(PartitionSpec(Mode::Single, 0.5).theta() == doctest::Approx(0.5));
  CHECK(PartitionSpec(Mode::Single, 2 * kPi - 0.5).theta() == doctest::Approx(0.5));
  CHECK(PartitionSpec(Mode::Single, -0.5).theta() == doctest::Approx(0.5));
  CHECK(PartitionSpec(Mode::Single, kPi).theta() == doctest::Approx(kPi));
  CHECK(fold_to_pi(3 * kPi) == doctest::Approx(kPi));
  // folded angle is the context angle of the two directions
  using D = Direction<double>;
  CHECK(context_angle(D(5.0), D(1.0)) == doctest::Approx(fold_to_pi(1.0 - 5.0)));
}

TEST_CASE("classify") {
  CHECK(classify(0.01, PartitionSpec(Mode::Single, 0)) == 1);
  CHECK(classify(0.0, PartitionSpec(Mode::Single, 0)) == 1);
  CHECK(classify(kPi / 6, PartitionSpec(Mode::Single, kPi / 3)) == -1);
  CHECK(classify(kPi / 6, PartitionSpec(Mode::Bipartite, kPi / 3)) == 1);
  // tie on the boundary counts as +1 in single mode
  CHECK(classify(1.0, PartitionSpec(Mode::Single, 1.0)) == 1);
  CHECK(classify(1.0, PartitionSpec(Mode::Bipartite, 1.0)) == -1);
  const auto s = make_sample(2.0, PartitionSpec(Mode::Single, 1.0));
  CHECK(s.outcome == 1);
  CHECK(s.context_angle == 1.0);
  // outcome is the sign of sin(phi - theta) away from the boundary
  for (double phi = 0.013; phi < kPi; phi += 0.05) {
    for (double t = 0.0; t <= kPi; t += 0.1) {
      const int sgn = std::sin(phi - t) > 0 ? 1 : -1;
      if (std::abs(phi - t) > 1e-9) CHECK(classify(phi, PartitionSpec(Mode::Single, t)) == sgn);
    }
  }
}

TEST_CASE("partition probabilities") {
  SUBCASE("repeated measurement is certain") {
    const auto p = partition_probabilities(PartitionSpec(Mode::Single, 0), 5000, 1);
    CHECK(p.p_plus == 1.0);
    CHECK(p.p_minus == 0.0);
  }
  SUBCASE("binomial agreement at n = 1e6") {
    const std::size_t n = 1000000;
    const double sigma_half = std::sqrt(0.25 / n);
    const auto single = partition_probabilities(PartitionSpec(Mode::Single, kPi / 2), n, 8);
    CHECK(std::abs(single.p_plus - 0.5) < 4 * sigma_half);
    const double q = sin2_half(kPi / 3);
    const auto bip = partition_probabilities(PartitionSpec(Mode::Bipartite, kPi / 3), n, 9);
    CHECK(std::abs(bip.p_plus - q) < 4 * std::sqrt(q * (1 - q) / n));
  }
  SUBCASE("modes swap exactly on the same stream") {
    for (double t : {0.3, 1.2, 2.9}) {
      const auto s = partition_probabilities(PartitionSpec(Mode::Single, t), 40000, 77);
      const auto b = partition_probabilities(PartitionSpec(Mode::Bipartite, t), 40000, 77);
      CHECK(s.p_plus == b.p_minus);
      CHECK(s.p_minus == b.p_plus);
      CHECK(s.p_plus + s.p_minus == 1.0);
    }
  }
  SUBCASE("sum is exactly one for every count") {
    for (std::size_t c = 0; c <= 997; ++c) {
      const double p = static_cast<double>(c) / 997.0;
      CHECK(p + (1.0 - p) == 1.0);
    }
  }
}

TEST_CASE("correlation estimate") {
  SUBCASE("degenerate contexts are exact") {
    const auto e = estimate_correlation(PartitionSpec(Mode::Single, 0), 1000, 3);
    CHECK(e.mean == 1.0);
    CHECK(e.std_error == 0.0);
    const auto f = estimate_correlation(PartitionSpec(Mode::Single, kPi), 1000, 3);
    CHECK(f.mean == -1.0);
    CHECK(f.std_error == 0.0);
  }
  SUBCASE("standard error matches a direct sample standard deviation") {
    const PartitionSpec spec(Mode::Single, 1.1);
    const std::size_t n = 5000;
    const auto phi = sample_phi(31, n);
    std::vector<double> x;
    for (double p : phi) x.push_back(classify(p, spec));
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (n - 1)) / std::sqrt(double(n));
    const auto e = estimate_correlation(spec, n, 31);
    CHECK(e.mean == doctest::Approx(mean).epsilon(1e-14));
    CHECK(e.std_error == doctest::Approx(se).epsilon(1e-12));
    CHECK(e.n == n);
    CHECK(e.seed == 31);
  }
  SUBCASE("Monte Carlo vs closed form at n = 1e6") {
    const auto s = estimate_correlation(PartitionSpec(Mode::Single, kPi / 3), 1000000, 12);
    CHECK(std::abs(s.mean - 0.5) < 4 * s.std_error);
    const auto b = estimate_correlation(PartitionSpec(Mode::Bipartite, kPi / 3), 1000000, 13);
    CHECK(std::abs(b.mean + 0.5) < 4 * b.std_error);
  }
  SUBCASE("independent of worker count") {
    const PartitionSpec spec(Mode::Bipartite, 0.9);
    const auto one = estimate_correlation(spec, 5 * kBlockSize + 11, 4, {1});
    const auto many = estimate_correlation(spec, 5 * kBlockSize + 11, 4, {4});
    CHECK(one.mean == many.mean);
    CHECK(one.std_error == many.std_error);
  }
  SUBCASE("single draw has zero standard error") {
    const auto e = estimate_correlation(PartitionSpec(Mode::Single, 1.0), 1, 3);
    CHECK(std::abs(e.mean) == 1.0);
    CHECK(e.std_error == 0.0);
  }
  CHECK_THROWS_AS(estimate_correlation(PartitionSpec(Mode::Single, 1.0), 0, 3), std::invalid_argument);
}

TEST_CASE("fresh context estimates") {
  SUBCASE("repeated angle gets an independent realization") {
    const std::vector<double> thetas{1.0, 1.0};
    const auto e = fresh_context_estimates(thetas, Mode::Single, 100000, 42);
    CHECK(e[0].seed != e[1].seed);
    CHECK(e[0].mean != e[1].mean);
    CHECK(std::abs(e[0].mean - e[1].mean) < 6 * std::hypot(e[0].std_error, e[1].std_error));
  }
  SUBCASE("endpoints are exact") {
    const std::vector<double> thetas{0.0, kPi};
    const auto e = fresh_context_estimates(thetas, Mode::Single, 10000, 1);
    CHECK(e[0].mean == 1.0);
    CHECK(e[1].mean == -1.0);
  }
  SUBCASE("three contexts at n = 1e6") {
    const std::vector<double> thetas{kPi / 4, kPi / 2, 3 * kPi / 4};
    const auto e = fresh_context_estimates(thetas, Mode::Single, 1000000, 42);
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      CHECK(std::abs(e[k].mean - std::cos(thetas[k])) < 4 * e[k].std_error);
    }
  }
  SUBCASE("shared stream reuses one realization") {
    const std::vector<double> thetas{1.0, 1.0};
    const auto e = shared_stream_estimates(thetas, Mode::Single, 20000, 42);
    CHECK(e[0].mean == e[1].mean);
  }
}

TEST_CASE("numeric partition integrals") {
  auto check = [](double t, double plus, double minus) {
    const auto [ip, im] = numeric_partition_integrals(t);
    CHECK(std::abs(ip - plus) < 1e-10);
    CHECK(std::abs(im - minus) < 1e-10);
    CHECK(std::abs(ip + im - 1) < 1e-10);
  };
  check(0, 1, 0);
  check(kPi / 2, 0.5, 0.5);
  check(kPi / 3, 0.75, 0.25);
  check(kPi, 0, 1);
  CHECK_THROWS_AS(numeric_partition_integrals(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(numeric_partition_integrals(4.0), std::invalid_argument);

  SUBCASE("agrees with the single-spin conditional matrix") {
    using D = Direction<double>;
    for (int i = 0; i <= 100; ++i) {
      const double t = kPi * i / 100.0;
      const auto [ip, im] = numeric_partition_integrals(t);
      const auto m = cond_prob_matrix(D(0), D(t));
      CHECK(std::abs(ip - m(Sign::Plus, Sign::Plus)) < 1e-9);
      CHECK(std::abs(im - m(Sign::Plus, Sign::Minus)) < 1e-9);
      CHECK(std::abs(ip - cos2_half(t)) < 1e-10);
    }
  }
}

TEST_CASE("seed derivation") {
  CHECK(substream_seed(1, 0) != substream_seed(1, 1));
  CHECK(substream_seed(1, 0) != substream_seed(2, 0));
  CHECK(substream_seed(7, 3) == substream_seed(7, 3));
  std::mt19937_64 e(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(e);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}
