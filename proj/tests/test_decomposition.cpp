#include <gtest/gtest.h>

#include <cmath>

#include "gaussfactor/closed_form.hpp"
#include "gaussfactor/decomposition.hpp"
#include "oracles.hpp"

using namespace gaussfactor;

namespace {

struct Site {
  double b;
  i64 q;
  u64 r;
};

}  // namespace

TEST(Decomposition, ReproducesDirectSumWithWideTruncation) {
  const WeightProfile w(10.0, 80);
  for (const Site s : {Site{33, 1, 11}, Site{33, 1, 3}, Site{51, 7, 35}, Site{51, 1, 3}}) {
    const ContinuousSpec spec(1.0, s.b);
    const double centre = static_cast<double>(s.q) * s.b / static_cast<double>(s.r);
    for (int k = -25; k <= 25; ++k) {
      const double xi = centre + 0.02 * k;
      EXPECT_LT(std::abs(decomposed_sum(xi, s.q, s.r, spec, w) - continuous_sum(xi, spec, w)), 1e-9)
          << s.b << " " << s.q << "/" << s.r << " xi=" << xi;
    }
  }
}

TEST(Decomposition, DefaultTruncationLeavesTailError) {
  // with M = 4 dm the direct sum misses weight tails of order 1e-5
  const WeightProfile w(10.0);
  const ContinuousSpec spec(1.0, 33.0);
  double worst = 0.0;
  for (int k = -25; k <= 25; ++k) {
    const double xi = 3.0 + 0.02 * k;
    worst = std::max(worst, std::abs(decomposed_sum(xi, 1, 11, spec, w) - continuous_sum(xi, spec, w)));
  }
  EXPECT_GT(worst, 1e-7);
  EXPECT_LT(worst, 1e-3);
}

TEST(Decomposition, NonReducedFractionIsStillExact) {
  const WeightProfile w(10.0, 80);
  const ContinuousSpec spec(1.0, 51.0);
  for (double xi : {10.1, 10.2, 10.25}) {
    EXPECT_LT(std::abs(decomposed_sum(xi, 7, 35, spec, w) - decomposed_sum(xi, 1, 5, spec, w)), 1e-10);
  }
}

TEST(ShapeFunction, MatchesQuadratureOracle) {
  const WeightProfile w(10.0);
  const ContinuousSpec spec(1.0, 51.0);
  const double delta = 3.0 / 35.0;
  const double xi = 7.0 * 51.0 / 35.0 + delta;
  const PeakDescriptor p = make_peak(xi, 7, 35, spec, w);
  for (i64 m = static_cast<i64>(p.m_bar) - 6; m <= static_cast<i64>(p.m_bar) + 6; ++m) {
    const cplx quad = oracle::shape_quadrature(m, 1.0, 51.0, 7, 35, delta, 10.0);
    EXPECT_LT(std::abs(shape_function(m, p) - quad), 1e-9) << m;
    EXPECT_EQ(shape_function(m, p, spec, w), shape_function(m, p));
  }
}

TEST(PeakGeometry, FieldsFollowDefinitions) {
  const WeightProfile w(10.0);
  const ContinuousSpec spec(1.0, 33.0);
  const PeakDescriptor p = make_peak(3.1, 1, 11, spec, w);
  EXPECT_NEAR(p.location_xi, 3.0, 1e-15);
  EXPECT_NEAR(p.delta, 0.1, 1e-12);
  EXPECT_NEAR(p.m_bar, 33.0 + 1.1, 1e-12);
  EXPECT_NEAR(p.sigma0, 11.0 / (std::sqrt(2.0) * std::numbers::pi * 10.0), 1e-15);
  EXPECT_NEAR(p.d_coef, 4.0 * std::numbers::pi * 100.0 / 33.0, 1e-12);
  EXPECT_NEAR(p.sigma, p.sigma0 * std::sqrt(1.0 + std::pow(p.d_coef * p.delta, 2)), 1e-15);
  EXPECT_TRUE(p.integral_m_bar);
  EXPECT_TRUE(make_peak(10.2, 1, 5, ContinuousSpec(1.0, 51.0), w).integral_m_bar);
  EXPECT_THROW(make_peak(1.0, 1, 0, spec, w), std::invalid_argument);
}

TEST(PeakGeometry, SingleTermDominatesSharpPeaks) {
  const WeightProfile w(10.0, 80);
  const ContinuousSpec spec(1.0, 33.0);
  for (u64 r : {1u, 3u, 11u}) {
    const double xi = 33.0 / static_cast<double>(r);
    const PeakDescriptor p = make_peak(xi, 1, r, spec, w);
    ASSERT_LT(p.sigma0, 0.3);
    const cplx full = decomposed_sum(xi, 1, r, spec, w);
    const i64 mb = std::llround(p.m_bar);
    const cplx single = finite_w(1, r, mb) * shape_function(mb, p);
    EXPECT_LT(std::abs(single - full) / std::abs(full), 0.01) << r;
    EXPECT_NEAR(std::abs(full), predict_finite_w_modulus(1, r, mb), 0.01);
  }
}

TEST(LocatePeaks, ReducedFractionsOverOnePeriod) {
  const ContinuousSpec spec(8.0, 51.0);
  const auto peaks = locate_peaks(spec, 7);
  // sum of phi(r) for r = 1..7
  EXPECT_EQ(peaks.size(), 1u + 1 + 2 + 2 + 4 + 2 + 6);
  for (std::size_t i = 1; i < peaks.size(); ++i) EXPECT_LE(peaks[i - 1].location_xi, peaks[i].location_xi);
  EXPECT_NEAR(peaks.back().location_xi, 51.0, 1e-12);
  for (const auto& p : peaks) {
    EXPECT_EQ(std::gcd(static_cast<u64>(p.q), p.r), 1u);
    // q B / A = 51 q / 8 is never integral for q <= 7
    EXPECT_FALSE(p.integral_m_bar);
  }
}

TEST(WeightWidth, ResolutionCondition) {
  EXPECT_NEAR(recommend_weight_width(33, 3.0), 3.0 * 33.0 / std::sqrt(8.0), 1e-12);
  EXPECT_TRUE(weight_width_resolves(recommend_weight_width(33, 3.0), 33));
  EXPECT_FALSE(weight_width_resolves(10.0, 33));
  EXPECT_THROW(recommend_weight_width(33, 0.5), std::invalid_argument);
}
