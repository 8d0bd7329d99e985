#include "photostat/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "photostat/errors.hpp"

namespace photostat {

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &err);
}

IntegralResult integrate_density(const std::function<double(double)>& f, double tmax, double tol) {
  if (!(tmax > 0.0)) throw ConfigError("integrate_density: tmax must be positive");
  IntegralResult r;
  // Split so oscillatory or peaked integrands are resolved.
  const int pieces = 32;
  for (int k = 0; k < pieces; ++k) {
    double err = 0.0;
    double a = tmax * k / pieces, b = tmax * (k + 1) / pieces;
    r.body += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &err);
    r.error += err;
  }
  const double t1 = 0.9 * tmax;
  const double f1 = f(t1), f2 = f(tmax);
  if (f2 > 0.0 && f1 > f2) {
    const double rate = std::log(f1 / f2) / (tmax - t1);
    r.tail = f2 / rate;
  } else if (f2 * tmax > tol * std::abs(r.body)) {
    throw NumericalError("integrate_density: integrand not decaying at tmax");
  }
  r.value = r.body + r.tail;
  return r;
}

double invert_laplace(const std::function<std::complex<double>(std::complex<double>)>& F, double t, int n, int m,
                      double A) {
  if (!(t > 0.0)) throw ConfigError("invert_laplace: t must be positive");
  if (n < 1 || m < 0) throw ConfigError("invert_laplace: need n >= 1 and m >= 0");
  const double x = A / (2.0 * t), h = std::numbers::pi / t;
  std::vector<double> partial(n + m + 1);
  double acc = 0.5 * F(x).real();
  partial[0] = acc;
  for (int k = 1; k <= n + m; ++k) {
    acc += (k % 2 ? -1.0 : 1.0) * F(std::complex<double>(x, k * h)).real();
    partial[k] = acc;
  }
  double avg = 0.0, w = std::ldexp(1.0, -m);
  for (int k = 0; k <= m; ++k) {
    avg += w * partial[n + k];
    w *= static_cast<double>(m - k) / (k + 1);
  }
  const double v = std::exp(A / 2.0) / t * avg;
  if (!std::isfinite(v)) throw NumericalError("invert_laplace: non-finite result");
  return v;
}

}  // namespace photostat
