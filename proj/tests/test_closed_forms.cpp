#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isobound/closed_forms.hpp"
#include "isobound/product_bound.hpp"

using namespace isobound;

namespace {

ConvexMinorant psi_of(Family f, std::size_t m) { return build_minorant(profile_closed_form(f, m)); }

double theorem_power(const ConvexMinorant& psi, std::size_t n, double x) {
  return theorem_bound(std::vector<ConvexMinorant>(n, psi), x).bound_per_vertex;
}

}  // namespace

TEST(Hamming, Examples) {
  EXPECT_NEAR(hamming_bound(2, 3, std::log(3.0)), 2.0, 1e-12);
  for (int t = 0; t <= 7; ++t) EXPECT_NEAR(hamming_bound(7, 2, t * std::log(2.0)), 7.0 - t, 1e-12);
  EXPECT_EQ(hamming_bound(4, 5, 4 * std::log(5.0)), 0.0);
  EXPECT_THROW(hamming_bound(2, 3, -1.0), DomainError);
  EXPECT_THROW(hamming_bound(2, 3, 3.0), DomainError);
  EXPECT_THROW(hamming_bound(0, 3, 0.0), InvalidParameter);
}

TEST(Grid, Examples) {
  EXPECT_NEAR(grid_bound(2, 10, std::log(4.0)), 1.0, 1e-12);
  // log 2 > log 5 - 1, so the linear piece applies; it stays below i_2(P_5) = 1/2.
  EXPECT_NEAR(grid_bound(1, 5, std::log(2.0)), std::numbers::e / 5 * std::log(2.5), 1e-12);
  EXPECT_LE(grid_bound(1, 5, std::log(2.0)), 0.5);
  EXPECT_NEAR(grid_bound(1, 10, std::log(2.0)), 0.5, 1e-12);
  EXPECT_THROW(grid_bound(2, 2, 0.0), InvalidParameter);
  EXPECT_THROW(grid_bound(2, 5, 2 * std::log(5.0) + 1e-6), DomainError);
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{1, 3}, {2, 5}, {3, 7}, {5, 10}, {4, 20}}) {
    const double th = grid_regime_threshold(n, m);
    const double small = static_cast<double>(n) * std::exp(-th / static_cast<double>(n));
    const double large = std::numbers::e / static_cast<double>(m) * (static_cast<double>(n) * std::log(static_cast<double>(m)) - th);
    EXPECT_NEAR(small, large, 1e-12);
    EXPECT_NEAR(grid_bound(n, m, th), static_cast<double>(n) * std::numbers::e / static_cast<double>(m), 1e-12);
    EXPECT_NEAR(grid_bound(n, m, std::nextafter(th, 1e9)), grid_bound(n, m, th), 1e-12);
  }
}

TEST(Torus, Examples) {
  // log 3 > log 6 - 1: linear piece, below i_3(C_6) = 2/3.
  EXPECT_NEAR(torus_bound(1, 6, std::log(3.0)), 2 * std::numbers::e / 6 * std::log(2.0), 1e-12);
  EXPECT_LE(torus_bound(1, 6, std::log(3.0)), 2.0 / 3.0);
  EXPECT_NEAR(torus_bound(1, 9, std::log(3.0)), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(torus_bound(2, 5, 2 * std::log(5.0)), 0.0);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 5, m = 3 + rng() % 10;
    const double x = std::uniform_real_distribution<double>(0, static_cast<double>(n) * std::log(static_cast<double>(m)))(rng);
    EXPECT_EQ(torus_bound(n, m, x), 2.0 * grid_bound(n, m, x));
  }
}

TEST(BollobasLeader, SmallRegimeMatches) {
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{3, 5}, {4, 7}, {5, 10}})
    for (bool torus : {false, true})
      for (int s = 0; s <= 100; ++s) {
        const double x = grid_regime_threshold(n, m) * s / 100.0;
        const auto rep = compare_with_bl(n, m, x, torus);
        EXPECT_NEAR(rep.comparison->bl_bound_per_vertex, rep.bound_per_vertex, 1e-12);
      }
}

TEST(BollobasLeader, LargeRegimeRatio) {
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{3, 5}, {4, 7}, {5, 10}})
    for (bool torus : {false, true}) {
      const double lo = grid_regime_threshold(n, m);
      const double hi = static_cast<double>(n) * std::log(static_cast<double>(m)) - std::log(2.0);
      double worst = 0;
      for (int s = 0; s < 100; ++s) {
        const auto rep = compare_with_bl(n, m, lo + (hi - lo) * s / 99.0, torus);
        EXPECT_GE(rep.comparison->ratio, 1.0 - 1e-12);
        worst = std::max(worst, rep.comparison->ratio);
      }
      EXPECT_LE(worst, 2.0 / (std::numbers::e * std::log(2.0)) + 1e-12);
      EXPECT_LE(worst, 1.062);
    }
}

TEST(BollobasLeader, SingleDimension) {
  // n = 1: only r = 1, value (m/|A|)/m = 1/|A|.
  EXPECT_NEAR(bl_bound(1, 7, std::log(3.0), false), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(bl_bound(1, 7, std::log(3.0), true), 2.0 / 3.0, 1e-12);
}

TEST(RegularProduct, Examples) {
  const std::vector<std::size_t> ones(6, 1), twos(6, 2);
  for (int t = 0; t <= 6; ++t) EXPECT_NEAR(regular_product_bound(ones, twos, t * std::log(2.0)), 6.0 - t, 1e-12);
  const std::vector<std::size_t> d{2, 3}, m{5, 4};
  EXPECT_EQ(regular_product_bound(d, m, 0.0), 5.0);
  EXPECT_NEAR(regular_product_bound(d, m, std::log(4.0)), 2.0, 1e-12);
  EXPECT_EQ(regular_product_bound(d, m, std::log(20.0)), 0.0);  // clamped
  const std::vector<std::size_t> bad_m{2, 4};
  EXPECT_THROW(regular_product_bound(d, bad_m, 0.0), InvalidParameter);
  const std::vector<std::size_t> short_m{5};
  EXPECT_THROW(regular_product_bound(d, short_m, 0.0), InvalidParameter);
}

TEST(ConnectedRegular, Examples) {
  const std::vector<std::size_t> p5{5};
  EXPECT_NEAR(connected_regular_bound(p5, 0.0, std::log(5.0)), std::numbers::e / 5 * std::log(5.0), 1e-12);
  EXPECT_LE(connected_regular_bound(p5, 0.0, std::log(5.0)), 1.0);
  EXPECT_EQ(connected_regular_bound(p5, std::log(5.0), std::log(5.0)), 0.0);
  EXPECT_THROW(connected_regular_bound({}, 0.0, 0.0), InvalidParameter);
}

TEST(RegularPower, Examples) {
  for (std::size_t m = 2; m <= 7; ++m) {
    const auto s = regular_summary(generate(Family::complete, m), profile_closed_form(Family::complete, m));
    for (int i = 0; i <= 10; ++i) {
      const double x = 3 * std::log(static_cast<double>(m)) * i / 10.0;
      EXPECT_NEAR(regular_power_bound(s, m, 3, x), hamming_bound(3, m, x), 1e-12);
    }
  }
  const auto c5 = regular_summary(generate(Family::cycle, 5), profile_closed_form(Family::cycle, 5));
  EXPECT_NEAR(regular_power_bound(c5, 5, 2, std::log(4.0)), 2.0, 1e-12);
  EXPECT_NEAR(homogeneous_bound(psi_of(Family::cycle, 5), 2, std::log(4.0)), 2.0, 1e-12);
  EXPECT_EQ(regular_power_bound(c5, 5, 2, 2 * std::log(5.0)), 0.0);
  EXPECT_THROW(regular_power_bound(c5, 6, 2, 0.0), InvalidParameter);
}

TEST(RegularPower, EqualsHomogeneousOnLastSegment) {
  for (const Graph& g : {petersen(), generate(Family::cycle, 5), generate(Family::cycle, 8), generate(Family::complete, 5)}) {
    const auto p = profile(g);
    const auto psi = build_minorant(p);
    const auto s = regular_summary(g, p);
    const double lo = std::log(static_cast<double>(s.k_star)), hi = psi.domain_end();
    for (std::size_t n = 1; n <= 4; ++n)
      for (int i = 0; i <= 20; ++i) {
        const double x = static_cast<double>(n) * (lo + (hi - lo) * i / 20.0);
        EXPECT_NEAR(regular_power_bound(s, g.vertex_count(), n, x), homogeneous_bound(psi, n, x), 1e-9) << g.label();
      }
  }
}

TEST(Dominance, ClosedFormsNeverExceedTheorem) {
  for (std::size_t m = 3; m <= 9; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      const double vol = static_cast<double>(n) * std::log(static_cast<double>(m));
      const auto kp = psi_of(Family::complete, m), pp = psi_of(Family::path, m), cp = psi_of(Family::cycle, m);
      const auto ks = regular_summary(generate(Family::complete, m), profile_closed_form(Family::complete, m));
      const auto cs = regular_summary(generate(Family::cycle, m), profile_closed_form(Family::cycle, m));
      const std::vector<std::size_t> sizes(n, m), cyc_deg(n, 2), k_deg(n, m - 1);
      for (int i = 0; i <= 50; ++i) {
        const double x = vol * i / 50.0;
        EXPECT_LE(hamming_bound(n, m, x), theorem_power(kp, n, x) + 1e-9);
        EXPECT_LE(grid_bound(n, m, x), theorem_power(pp, n, x) + 1e-9);
        EXPECT_LE(torus_bound(n, m, x), theorem_power(cp, n, x) + 1e-9);
        EXPECT_LE(regular_product_bound(cyc_deg, sizes, x), theorem_power(cp, n, x) + 1e-9);
        EXPECT_LE(regular_product_bound(k_deg, sizes, x), theorem_power(kp, n, x) + 1e-9);
        EXPECT_LE(connected_regular_bound(sizes, x, vol), theorem_power(pp, n, x) + 1e-9);
        EXPECT_LE(connected_regular_bound(sizes, x, vol), theorem_power(cp, n, x) + 1e-9);
        EXPECT_LE(regular_power_bound(ks, m, n, x), theorem_power(kp, n, x) + 1e-9);
        EXPECT_LE(regular_power_bound(cs, m, n, x), theorem_power(cp, n, x) + 1e-9);
      }
    }
}

TEST(Dominance, MixedRegularProducts) {
  // C_5 x K_4 x C_7: degrees 2, 3, 2.
  const std::vector<ConvexMinorant> fs{psi_of(Family::cycle, 5), psi_of(Family::complete, 4), psi_of(Family::cycle, 7)};
  const std::vector<std::size_t> d{2, 3, 2}, m{5, 4, 7};
  const double vol = std::log(140.0);
  for (int i = 0; i <= 100; ++i) {
    const double x = vol * i / 100.0;
    const double th = theorem_bound(fs, x).bound_per_vertex;
    EXPECT_LE(regular_product_bound(d, m, x), th + 1e-9);
    EXPECT_LE(connected_regular_bound(m, x, vol), th + 1e-9);
  }
}
