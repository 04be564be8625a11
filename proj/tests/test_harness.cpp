#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "spinsim/harness.hpp"

using namespace spinsim;

namespace {

constexpr double kPi = std::numbers::pi;

// sup over u in [0, pi] of |u/pi - (1 - cos u)/2| by dense grid search.
double uniform_vs_model_sup() {
  double best = 0;
  for (int i = 0; i <= 2000000; ++i) {
    const double u = kPi * i / 2000000.0;
    best = std::max(best, std::abs(u / kPi - 0.5 * (1 - std::cos(u))));
  }
  return best;
}

}  // namespace

TEST_CASE("agreement sweep") {
  SUBCASE("single mode") {
    const auto r = agreement_sweep(Mode::Single, 50, 100000, 42);
    REQUIRE(r.rows.size() == 50);
    CHECK(r.rows.front().theta == 0.0);
    CHECK(r.rows.back().theta == kPi);
    CHECK_FALSE(r.rows.front().z_score.has_value());
    CHECK_FALSE(r.rows.back().z_score.has_value());
    CHECK(r.rows.front().sampled_mean == 1.0);
    CHECK(r.rows.back().sampled_mean == -1.0);
    CHECK(r.degenerate_rows_exact());
    CHECK(r.max_abs_z() < 5);
    CHECK_FALSE(r.flagged());
    for (const auto& row : r.rows) {
      CHECK(row.exact == std::cos(row.theta));
      if (row.z_score) CHECK(*row.z_score == doctest::Approx((row.sampled_mean - row.exact) / row.std_error));
    }
  }
  SUBCASE("bipartite mirrors single with negated exact column") {
    const auto s = agreement_sweep(Mode::Single, 10, 2000, 3);
    const auto b = agreement_sweep(Mode::Bipartite, 10, 2000, 3);
    for (std::size_t i = 0; i < 10; ++i) {
      CHECK(b.rows[i].exact == -s.rows[i].exact);
      // same per-row seeds, negated outcomes
      CHECK(b.rows[i].sampled_mean == -s.rows[i].sampled_mean);
    }
    CHECK(b.max_abs_z() == doctest::Approx(s.max_abs_z()));
  }
  SUBCASE("a corrupted report is flagged") {
    auto r = agreement_sweep(Mode::Single, 5, 1000, 1);
    r.rows[2].z_score = 7.0;
    CHECK(r.flagged());
    auto q = agreement_sweep(Mode::Single, 5, 1000, 1);
    q.rows[0].sampled_mean = 0.99;
    CHECK(q.flagged());
  }
  CHECK_THROWS_AS(agreement_sweep(Mode::Single, 1, 1000, 1), std::invalid_argument);
  CHECK_THROWS_AS(agreement_sweep(Mode::Single, 10, 999, 1), std::invalid_argument);
}

TEST_CASE("chsh") {
  SUBCASE("exact at the canonical angles") {
    const auto r = chsh(canonical_chsh_angles(), Engine::Exact, 0, 1);
    CHECK(std::abs(r.s_value - 2 * std::sqrt(2.0)) < 1e-12);
    CHECK(r.s_std_error == 0.0);
  }
  SUBCASE("exact at (0, pi/2, 0, pi/2)") {
    const auto r = chsh({0, kPi / 2, 0, kPi / 2}, Engine::Exact, 0, 1);
    // E = -cos of differences (0, pi/2, -pi/2, 0) -> |-1 - 0 + 0 - 1|
    CHECK(std::abs(r.s_value - 2.0) < 1e-12);
  }
  SUBCASE("exact is invariant under a common offset") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ang(0, 2 * kPi);
    for (int i = 0; i < 200; ++i) {
      const ChshAngles a{ang(rng), ang(rng), ang(rng), ang(rng)};
      const double off = ang(rng);
      const ChshAngles b{a.a + off, a.a_prime + off, a.b + off, a.b_prime + off};
      CHECK(std::abs(chsh(a, Engine::Exact, 0, 0).s_value - chsh(b, Engine::Exact, 0, 0).s_value) < 1e-12);
    }
  }
  SUBCASE("random search stays under the Tsirelson bound") {
    CHECK(chsh_random_search(10000, 42) <= 2 * std::sqrt(2.0) + 1e-9);
  }
  SUBCASE("sampled at n = 1e6 per context") {
    const auto r = chsh(canonical_chsh_angles(), Engine::Sampled, 1000000, 42);
    CHECK(r.s_std_error > 0);
    CHECK(std::abs(r.s_value - 2 * std::sqrt(2.0)) < 4 * r.s_std_error);
    const double prop = std::sqrt(r.std_errors[0] * r.std_errors[0] + r.std_errors[1] * r.std_errors[1] +
                                  r.std_errors[2] * r.std_errors[2] + r.std_errors[3] * r.std_errors[3]);
    CHECK(r.s_std_error == doctest::Approx(prop));
  }
  SUBCASE("shared stream differs from independent streams") {
    const auto fresh = chsh(canonical_chsh_angles(), Engine::Sampled, 10000, 5);
    const auto shared = chsh(canonical_chsh_angles(), Engine::Sampled, 10000, 5, true);
    CHECK(shared.shared_stream);
    CHECK(fresh.correlations != shared.correlations);
    // contexts (a,b), (a',b) and (a',b') share the angle pi/4, so one stream
    // gives them identical estimates
    CHECK(shared.correlations[0] == shared.correlations[2]);
    CHECK(shared.correlations[0] == shared.correlations[3]);
  }
  CHECK_THROWS_AS(chsh(canonical_chsh_angles(), Engine::Sampled, 999, 1), std::invalid_argument);
  CHECK(chsh_combination({1, -1, 1, 1}) == 4.0);
}

TEST_CASE("kolmogorov smirnov") {
  SUBCASE("critical value") {
    CHECK(ks_critical_001(10000) == doctest::Approx(0.01628));
  }
  SUBCASE("statistic on a known sample") {
    // uniform CDF on [0,1] against points at the bin midpoints: D = 1/(2n)
    std::vector<double> x;
    for (int i = 0; i < 10; ++i) x.push_back((i + 0.5) / 10);
    CHECK(ks_statistic(x, [](double v) { return v; }) == doctest::Approx(0.05));
  }
  SUBCASE("correct sampler passes") {
    const auto r = ks_test(100000, 42);
    CHECK(r.pass);
    CHECK(r.statistic < r.critical_001);
  }
  SUBCASE("uniform fixture fails") {
    std::mt19937_64 e(42);
    std::vector<double> x(100000);
    for (auto& v : x) v = kPi * uniform01(e);
    const auto r = ks_test(x, 42);
    CHECK_FALSE(r.pass);
    const double sup = uniform_vs_model_sup();
    CHECK(sup == doctest::Approx(0.105256831).epsilon(1e-6));
    CHECK(std::abs(r.statistic - sup) < 3 * r.critical_001);
  }
  CHECK_THROWS_AS(ks_test(999, 1), std::invalid_argument);
}

TEST_CASE("exact correlation by mode") {
  CHECK(exact_correlation(Mode::Single, kPi / 3) == doctest::Approx(0.5));
  CHECK(exact_correlation(Mode::Bipartite, kPi / 3) == doctest::Approx(-0.5));
}
