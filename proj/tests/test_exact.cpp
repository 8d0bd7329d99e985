#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <string>

#include "oracles/oracle_values.hpp"
#include "photostat/errors.hpp"
#include "photostat/exact.hpp"
#include "photostat/quadrature.hpp"
#include "test_util.hpp"

using namespace photostat;

// Largest oracle value of the same distribution, the scale for absolute errors.
double group_peak(const oracle::DistValue& o) {
  double m = 0.0;
  for (const auto& q : oracle::kDist)
    if (std::string(q.source) == o.source && q.a == o.a && q.b == o.b && q.eta == o.eta && q.kind == o.kind && q.n == o.n)
      m = std::max(m, std::abs(q.value));
  return m;
}

TEST(Exact, FrozenDistributionValues) {
  for (const auto& o : oracle::kDist) {
    auto src = testutil::make_source(o.source, o.a, o.b);
    Detector d(o.eta);
    double v = 0.0;
    switch (o.kind) {
      case 'p': v = photocount(src, d, o.n, o.T); break;
      case 'P': v = pn_wait(src, d, o.n, o.T); break;
      default: v = wn_wait(src, d, o.n, o.T); break;
    }
    double tol = 1e-9 * (std::abs(o.value) + group_peak(o));
    EXPECT_NEAR(v, o.value, tol) << o.source << " " << o.kind << o.n << " T=" << o.T << " eta=" << o.eta;
  }
}

TEST(Exact, ZeroDelayCorrelations) {
  for (const auto& o : oracle::kGZero) {
    auto src = testutil::make_source(o.source, o.a, o.b);
    double g = g_zero(src, o.n);
    EXPECT_NEAR(g, o.value, 1e-6 * std::max(1.0, o.value)) << o.source << " n=" << o.n;
  }
}

TEST(Exact, PoissonForCoherent) {
  Coherent c{2.0};
  Detector d(0.5);
  auto p = photocount_range(c, d, 12, 3.0);
  const double m = 3.0;
  for (int k = 0; k <= 12; ++k)
    EXPECT_NEAR(p[k], std::exp(-m + k * std::log(m) - std::lgamma(k + 1.0)), 1e-14);
}

TEST(Exact, ThermalPhotocountIsGeometricInLongWindowLimit) {
  // T << 1/gamma: Bose-Einstein counts with mean 2 gamma eta nbar T, corrections O(gamma T)
  Thermal th{1.0, 5.0};
  Detector d(1.0);
  const double T = 1e-5, m = 10.0 * T;
  auto p = photocount_range(th, d, 3, T);
  for (int k = 0; k <= 3; ++k) EXPECT_NEAR(p[k], std::pow(m, k) / std::pow(1 + m, k + 1), 1e-4 * p[k]);
}

TEST(Exact, DistributionSumsToOne) {
  for (auto src : {SourceParams{Thermal{1.0, 10.0}}, SourceParams{Dpo{1.0, 0.01}}, SourceParams{Rf{1.0, 10.0}}}) {
    auto p = photocount_distribution(src, Detector(0.5), 3.0, 1e-12);
    double s = std::accumulate(p.begin(), p.end(), 0.0);
    EXPECT_NEAR(s, 1.0, 1e-9) << source_name(src);
  }
}

TEST(Exact, WaitRelationsAgree) {
  for (auto src : {SourceParams{Coherent{1.0}}, SourceParams{Thermal{1.0, 1.0}}, SourceParams{Dpo{1.0, 0.5}},
                   SourceParams{Rf{1.0, 4.0}}}) {
    for (int n = 1; n <= 3; ++n) {
      for (double T : {0.2, 1.0, 4.0}) {
        double a = wn_wait(src, Detector(0.8), n, T), b = wn_via_pn(src, Detector(0.8), n, T);
        EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a))) << source_name(src) << " n=" << n << " T=" << T;
      }
    }
  }
}

TEST(Exact, RawWaitValuesMatchSingleCalls) {
  Thermal th{1.0, 2.0};
  Detector d(0.6);
  auto wv = wait_values_raw(th, d, 3, 0.7);
  for (int n = 1; n <= 3; ++n) {
    EXPECT_NEAR(wv.P[n - 1], pn_wait(th, d, n, 0.7), 1e-13);
    EXPECT_NEAR(wv.w[n - 1], wn_wait(th, d, n, 0.7), 1e-13);
  }
}

TEST(Exact, WaitDensitiesNormalize) {
  Dpo dp{1.0, 1.0};
  Detector d(1.0);
  for (int n = 1; n <= 2; ++n) {
    auto P = integrate_density([&](double T) { return pn_wait(dp, d, n, T); }, 40.0);
    auto w = integrate_density([&](double T) { return wn_wait(dp, d, n, T); }, 40.0);
    EXPECT_NEAR(P.value, 1.0, 1e-6) << n;
    EXPECT_NEAR(w.value, 1.0, 1e-6) << n;
  }
}

TEST(Exact, OrderLimits) {
  EXPECT_THROW(wn_wait(Coherent{1.0}, Detector(1.0), 0, 1.0), ConfigError);
  EXPECT_THROW(wn_wait(Coherent{1.0}, Detector(1.0), kMaxWaitOrder + 1, 1.0), ConfigError);
  EXPECT_THROW(photocount(Coherent{1.0}, Detector(1.0), 5, 1.0, 2), ConfigError);
}
