#include "photostat/jet.hpp"

#include <cmath>

#include "photostat/errors.hpp"
#include "photostat/model.hpp"

namespace photostat {

namespace {

constexpr int kW = Jet::kTOrder + 1;

void check_compatible(const Jet& a, const Jet& b) {
  if (a.ns() != b.ns()) throw ConfigError("jet order mismatch");
}

}  // namespace

Jet::Jet(int ns, double s0, double t0)
    : ns_(ns), s0_(s0), t0_(t0), c_(static_cast<std::size_t>((ns + 1) * kW), 0.0) {
  if (ns < 0) throw ConfigError("jet order must be >= 0");
}

Jet Jet::constant(int ns, double s0, double t0, double c) {
  Jet j(ns, s0, t0);
  j(0, 0) = c;
  return j;
}

Jet Jet::s_variable(int ns, double s0, double t0) {
  Jet j(ns, s0, t0);
  j(0, 0) = s0;
  if (ns >= 1) j(1, 0) = 1.0;
  return j;
}

Jet Jet::t_variable(int ns, double s0, double t0) {
  Jet j(ns, s0, t0);
  j(0, 0) = t0;
  j(0, 1) = 1.0;
  return j;
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator+=(double c) {
  c_[0] += c;
  return *this;
}

Jet& Jet::operator-=(double c) {
  c_[0] -= c;
  return *this;
}

Jet& Jet::operator*=(double c) {
  for (double& v : c_) v *= c;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  r *= -1.0;
  return r;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator+(Jet a, double c) { return a += c; }
Jet operator+(double c, Jet a) { return a += c; }
Jet operator-(Jet a, double c) { return a -= c; }
Jet operator-(double c, const Jet& a) {
  Jet r = -a;
  return r += c;
}
Jet operator*(Jet a, double c) { return a *= c; }
Jet operator*(double c, Jet a) { return a *= c; }
Jet operator/(Jet a, double c) { return a *= 1.0 / c; }

Jet operator*(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  const int ns = a.ns();
  Jet r(ns, a.s0(), a.t0());
  const double* x = a.raw().data();
  const double* y = b.raw().data();
  for (int i = 0; i <= ns; ++i) {
    double r0 = 0.0, r1 = 0.0, r2 = 0.0;
    for (int p = 0; p <= i; ++p) {
      const double* u = x + p * kW;
      const double* v = y + (i - p) * kW;
      r0 += u[0] * v[0];
      r1 += u[0] * v[1] + u[1] * v[0];
      r2 += u[0] * v[2] + u[1] * v[1] + u[2] * v[0];
    }
    r(i, 0) = r0;
    r(i, 1) = r1;
    r(i, 2) = r2;
  }
  return r;
}

Jet compose(const Jet& x, const std::vector<double>& taylor) {
  Jet d = x;
  d(0, 0) = 0.0;
  const int ns = x.ns();
  // d has no constant term, so d^k vanishes for k > ns + kTOrder.
  int kmax = std::min<int>(static_cast<int>(taylor.size()) - 1, ns + Jet::kTOrder);
  Jet acc = Jet::constant(ns, x.s0(), x.t0(), taylor[kmax]);
  for (int k = kmax - 1; k >= 0; --k) {
    acc = acc * d;
    acc(0, 0) += taylor[k];
  }
  return acc;
}

namespace {

int series_len(const Jet& x) { return x.ns() + Jet::kTOrder + 1; }

}  // namespace

Jet exp(const Jet& x) {
  int n = series_len(x);
  std::vector<double> t(n);
  t[0] = std::exp(x.value());
  for (int k = 1; k < n; ++k) t[k] = t[k - 1] / k;
  return compose(x, t);
}

Jet log(const Jet& x) {
  double x0 = x.value();
  if (!(x0 > 0.0)) throw NumericalError("log of jet with non-positive constant term");
  int n = series_len(x);
  std::vector<double> t(n);
  t[0] = std::log(x0);
  double p = 1.0;
  for (int k = 1; k < n; ++k) {
    p /= x0;
    t[k] = (k % 2 ? 1.0 : -1.0) * p / k;
  }
  return compose(x, t);
}

Jet pow(const Jet& x, double alpha) {
  double x0 = x.value();
  if (!(x0 > 0.0)) throw NumericalError("power of jet with non-positive constant term");
  int n = series_len(x);
  std::vector<double> t(n);
  t[0] = std::pow(x0, alpha);
  for (int k = 1; k < n; ++k) t[k] = t[k - 1] * (alpha - (k - 1)) / (k * x0);
  return compose(x, t);
}

Jet sqrt(const Jet& x) { return pow(x, 0.5); }

Jet reciprocal(const Jet& x) {
  double x0 = x.value();
  if (x0 == 0.0) throw NumericalError("division by jet with zero constant term");
  int n = series_len(x);
  std::vector<double> t(n);
  t[0] = 1.0 / x0;
  for (int k = 1; k < n; ++k) t[k] = -t[k - 1] / x0;
  return compose(x, t);
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet entire_cosh(const Jet& x) {
  std::vector<double> c, s;
  entire_taylor(x.value(), series_len(x) - 1, c, s);
  return compose(x, c);
}

Jet entire_sinhc(const Jet& x) {
  std::vector<double> c, s;
  entire_taylor(x.value(), series_len(x) - 1, c, s);
  return compose(x, s);
}

}  // namespace photostat
