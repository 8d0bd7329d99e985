#include <gtest/gtest.h>

#include <cmath>

#include "photostat/closedform.hpp"
#include "photostat/errors.hpp"
#include "photostat/exact.hpp"
#include "photostat/quadrature.hpp"

using namespace photostat;
using namespace photostat::closedform;

TEST(ClosedForm, RegimeTags) {
  for (auto r : {Regime::SmallNbar, Regime::LargeNbar, Regime::SmallNbarNonUnit}) EXPECT_EQ(parse_regime(regime_tag(r)), r);
  EXPECT_THROW(parse_regime("medium"), ConfigError);
}

TEST(ClosedForm, CoherentGammaLaw) {
  EXPECT_NEAR(coherent_wait(1, 2.0, 1.5, 0.5), 0.75 * std::exp(-1.5), 1e-15);
  EXPECT_NEAR(coherent_wait(3, 2.0, 1.0, 1.0), 4.0 * std::exp(-2.0) / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(coherent_photocount(0, 0.0, 1.0, 1.0), 1.0);
  EXPECT_THROW(coherent_wait(0, 1.0, 1.0, 1.0), ConfigError);
}

TEST(ClosedForm, LargeNbarFormsNormalize) {
  Thermal th{1.0, 10.0};
  Dpo dp{1.0, 10.0};
  Detector d(0.5);
  for (int n = 1; n <= 3; ++n) {
    for (auto kind : {DistKind::UnconditionalWait, DistKind::ConditionalWait}) {
      // Power-law tails: integrate in x = rate T with the substitution T = u / (1 - u)
      auto total = [&](auto f) {
        return integrate([&](double u) { return f(u / (1.0 - u)) / ((1.0 - u) * (1.0 - u)); }, 0.0, 1.0 - 1e-12, 1e-12);
      };
      double a = total([&](double T) { return thermal_approx(Regime::LargeNbar, kind, n, T, th, d); });
      double b = total([&](double T) { return dpo_approx(Regime::LargeNbar, kind, n, T, dp, d); });
      EXPECT_NEAR(a, 1.0, 1e-5) << n;
      EXPECT_NEAR(b, 1.0, 1e-3) << n;
    }
  }
}

TEST(ClosedForm, ZeroDelayRatios) {
  // w1(0)/P1(0) = g2(0); DPO high-degeneracy value is 3/2 times the thermal one
  Thermal th{1.0, 10.0};
  Dpo dp{1.0, 10.0};
  Detector d(1.0);
  double tw = thermal_approx(Regime::LargeNbar, DistKind::ConditionalWait, 1, 0.0, th, d);
  double tp = thermal_approx(Regime::LargeNbar, DistKind::UnconditionalWait, 1, 0.0, th, d);
  double dw = dpo_approx(Regime::LargeNbar, DistKind::ConditionalWait, 1, 0.0, dp, d);
  EXPECT_DOUBLE_EQ(tw / tp, 2.0);
  EXPECT_DOUBLE_EQ(dw / tw, 1.5);
  Thermal ts{1.0, 0.01};
  EXPECT_DOUBLE_EQ(thermal_approx(Regime::SmallNbar, DistKind::ConditionalWait, 1, 0.0, ts, d) /
                       thermal_approx(Regime::SmallNbar, DistKind::UnconditionalWait, 1, 0.0, ts, d),
                   2.0);
}

TEST(ClosedForm, NonUnitDpoReducesToUnit) {
  Dpo dp{1.0, 0.01};
  Detector d(1.0);
  for (auto kind : {DistKind::UnconditionalWait, DistKind::ConditionalWait})
    for (int n = 1; n <= 2; ++n)
      for (double T : {0.0, 0.3, 2.0, 20.0})
        EXPECT_NEAR(dpo_approx(Regime::SmallNbarNonUnit, kind, n, T, dp, d),
                    dpo_approx(Regime::SmallNbar, kind, n, T, dp, d), 1e-14);
  EXPECT_THROW(dpo_approx(Regime::SmallNbar, DistKind::ConditionalWait, 1, 1.0, dp, Detector(0.5)), ConfigError);
  EXPECT_THROW(dpo_approx(Regime::SmallNbarNonUnit, DistKind::ConditionalWait, 3, 1.0, dp, d), ConfigError);
}

TEST(ClosedForm, SmallNbarTracksExact) {
  Thermal th{1.0, 0.01};
  Dpo dp{1.0, 0.01};
  Detector d(1.0);
  for (double T : {0.05, 0.5, 2.0, 10.0}) {
    EXPECT_NEAR(thermal_approx(Regime::SmallNbar, DistKind::ConditionalWait, 1, T, th, d) /
                    wn_wait(th, d, 1, T), 1.0, 0.02);
    EXPECT_NEAR(dpo_approx(Regime::SmallNbar, DistKind::ConditionalWait, 1, T, dp, d) / wn_wait(dp, d, 1, T), 1.0,
                0.1);
  }
  // Pair emission: odd counts suppressed by nbar
  double p2 = dpo_approx(Regime::SmallNbar, DistKind::Photocount, 2, 5.0, dp, d);
  double p3 = dpo_approx(Regime::SmallNbar, DistKind::Photocount, 3, 5.0, dp, d);
  EXPECT_NEAR(p3 / p2, 0.01, 1e-15);
}

TEST(ClosedForm, MostProbableWaitIsTheMaximum) {
  Thermal th{1.0, 10.0};
  Dpo dp{1.0, 10.0};
  Detector d(1.0);
  const double flux = mean_flux(th);
  for (int n = 2; n <= 4; ++n) {
    double tw = most_probable_wait(SourceKind::Thermal, DistKind::ConditionalWait, n, flux, 1.0);
    double tp = most_probable_wait(SourceKind::Thermal, DistKind::UnconditionalWait, n, flux, 1.0);
    double td = most_probable_wait(SourceKind::Dpo, DistKind::ConditionalWait, n, flux, 1.0);
    auto is_peak = [](auto f, double t) {
      const double h = 1e-4 * t;
      return f(t) > f(t - h) && f(t) > f(t + h);
    };
    EXPECT_TRUE(is_peak([&](double T) { return thermal_approx(Regime::LargeNbar, DistKind::ConditionalWait, n, T, th, d); }, tw));
    EXPECT_TRUE(is_peak([&](double T) { return thermal_approx(Regime::LargeNbar, DistKind::UnconditionalWait, n, T, th, d); }, tp));
    EXPECT_TRUE(is_peak([&](double T) { return dpo_approx(Regime::LargeNbar, DistKind::ConditionalWait, n, T, dp, d); }, td));
  }
  EXPECT_NEAR(most_probable_wait(SourceKind::Rf, DistKind::ConditionalWait, 2, 1.0 / 3.0, 1.0), 5.0, 1e-14);
  EXPECT_THROW(most_probable_wait(SourceKind::Dpo, DistKind::Photocount, 2, 1.0, 1.0), ConfigError);
}
