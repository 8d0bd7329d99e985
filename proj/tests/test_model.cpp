#include <gtest/gtest.h>

#include <cmath>

#include "photostat/errors.hpp"
#include "photostat/model.hpp"
#include "photostat/series.hpp"

using namespace photostat;

TEST(Model, MeanFlux) {
  EXPECT_DOUBLE_EQ(mean_flux(Coherent{2.5}), 2.5);
  EXPECT_DOUBLE_EQ(mean_flux(Thermal{1.5, 2.0}), 6.0);
  EXPECT_DOUBLE_EQ(mean_flux(Dpo{1.0, 0.01}), 0.02);
  // beta Omega^2 / (Omega^2 + 2 beta^2)
  EXPECT_NEAR(mean_flux(Rf{1.0, 1.0}), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(mean_flux(Rf{2.0, 10.0}), 2.0 * 100.0 / 108.0, 1e-14);
}

TEST(Model, DpoPumpRatio) {
  Dpo d{1.0, 10.0};
  EXPECT_NEAR(Dpo::nbar_from_r(d.r()), 10.0, 1e-10);
  EXPECT_NEAR(d.lambda1() + d.lambda2(), 2.0, 1e-15);
  EXPECT_LT(d.r(), 1.0);
}

TEST(Model, Validation) {
  EXPECT_THROW(validate(Coherent{0.0}), ConfigError);
  EXPECT_THROW(validate(Thermal{-1.0, 1.0}), ConfigError);
  EXPECT_THROW(validate(Thermal{1.0, -0.1}), ConfigError);
  EXPECT_THROW(validate(Dpo{1.0, NAN}), ConfigError);
  EXPECT_THROW(validate(Rf{0.0, 1.0}), ConfigError);
  EXPECT_NO_THROW(validate(Rf{1.0, 0.0}));
  EXPECT_THROW(Detector(0.0), ConfigError);
  EXPECT_THROW(Detector(1.5), ConfigError);
  EXPECT_NEAR(Detector(0.875).mu(), 0.5, 1e-15);
}

TEST(Model, RequestValidation) {
  DistRequest r;
  r.kind = DistKind::ConditionalWait;
  r.n = 0;
  EXPECT_THROW(r.validate(), ConfigError);
  r.kind = DistKind::Photocount;
  EXPECT_NO_THROW(r.validate());
  r.n = -1;
  EXPECT_THROW(r.validate(), ConfigError);
}

TEST(Model, Tags) {
  EXPECT_EQ(parse_source_kind("dpo"), SourceKind::Dpo);
  EXPECT_THROW(parse_source_kind("laser"), ConfigError);
  for (auto k : {DistKind::Photocount, DistKind::UnconditionalWait, DistKind::ConditionalWait})
    EXPECT_EQ(parse_kind_tag(kind_tag(k)), k);
  EXPECT_THROW(parse_kind_tag("q"), ConfigError);
}

TEST(Model, Scaling) {
  auto s = std::get<Rf>(scale(Rf{1.0, 2.0}, 3.0));
  EXPECT_DOUBLE_EQ(s.beta, 3.0);
  EXPECT_DOUBLE_EQ(s.rabi, 6.0);
  EXPECT_DOUBLE_EQ(mean_flux(scale(Thermal{1.0, 4.0}, 0.5)), 4.0);
}

TEST(Model, Clamp) {
  EXPECT_EQ(clamp_nonnegative(-1e-12, 1.0, "x"), 0.0);
  EXPECT_EQ(clamp_nonnegative(0.3, 1.0, "x"), 0.3);
  EXPECT_THROW(clamp_nonnegative(-1e-3, 1.0, "x"), NumericalError);
  EXPECT_THROW(clamp_nonnegative(NAN, 1.0, "x"), NumericalError);
}

TEST(Model, EntireFunctions) {
  for (double x : {-30.0, -2.0, -1e-3, 0.0, 1e-4, 0.5, 3.0, 40.0}) {
    double c = x >= 0 ? std::cosh(std::sqrt(x)) : std::cos(std::sqrt(-x));
    double s = x > 0 ? std::sinh(std::sqrt(x)) / std::sqrt(x) : x < 0 ? std::sin(std::sqrt(-x)) / std::sqrt(-x) : 1.0;
    EXPECT_NEAR(entire_cosh(x), c, 1e-14 * std::max(1.0, std::abs(c))) << x;
    EXPECT_NEAR(entire_sinhc(x), s, 1e-14 * std::max(1.0, std::abs(s))) << x;
  }
  std::vector<double> c, s;
  const double x0 = 2.0, h = 1e-3;
  entire_taylor(x0, 4, c, s);
  double cx = 0.0, sx = 0.0;
  for (int k = 4; k >= 0; --k) {
    cx = cx * h + c[k];
    sx = sx * h + s[k];
  }
  EXPECT_NEAR(cx, entire_cosh(x0 + h), 1e-15);
  EXPECT_NEAR(sx, entire_sinhc(x0 + h), 1e-15);
}

TEST(Series, PowAndBinomial) {
  EXPECT_DOUBLE_EQ(series::binomial(10, 3), 120.0);
  EXPECT_NEAR(series::log_factorial(20), std::lgamma(21.0), 1e-12);
  // (1 + u)^{-1/2}
  auto p = series::pow({1.0, 1.0}, -0.5, 4);
  EXPECT_NEAR(p[1], -0.5, 1e-15);
  EXPECT_NEAR(p[2], 0.375, 1e-15);
  EXPECT_NEAR(p[4], 35.0 / 128.0, 1e-15);
  auto q = series::mul({1.0, 2.0}, {1.0, -2.0}, 2);
  EXPECT_DOUBLE_EQ(q[0], 1.0);
  EXPECT_DOUBLE_EQ(q[1], 0.0);
  EXPECT_DOUBLE_EQ(q[2], -4.0);
}
