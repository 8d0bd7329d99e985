#pragma once

#include <vector>

namespace photostat {

// Truncated bivariate Taylor expansion about (s0, t0):
// c(i, j) = (1/(i! j!)) d^{i+j} f / ds^i dT^j, 0 <= i <= ns, 0 <= j <= 2.
class Jet {
 public:
  static constexpr int kTOrder = 2;

  Jet() = default;
  Jet(int ns, double s0, double t0);

  static Jet constant(int ns, double s0, double t0, double c);
  static Jet s_variable(int ns, double s0, double t0);
  static Jet t_variable(int ns, double s0, double t0);

  int ns() const { return ns_; }
  double s0() const { return s0_; }
  double t0() const { return t0_; }

  double& operator()(int i, int j) { return c_[i * (kTOrder + 1) + j]; }
  double operator()(int i, int j) const { return c_[i * (kTOrder + 1) + j]; }
  double value() const { return c_[0]; }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double c);
  Jet& operator-=(double c);
  Jet& operator*=(double c);
  Jet operator-() const;

  // Flat storage, row-major in (i, j).
  const std::vector<double>& raw() const { return c_; }

 private:
  int ns_ = 0;
  double s0_ = 0.0;
  double t0_ = 0.0;
  std::vector<double> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator+(Jet a, double c);
Jet operator+(double c, Jet a);
Jet operator-(Jet a, double c);
Jet operator-(double c, const Jet& a);
Jet operator*(Jet a, double c);
Jet operator*(double c, Jet a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator/(Jet a, double c);

// f(x) where f(x0 + d) = sum_k taylor[k] d^k and x0 = x.value().
Jet compose(const Jet& x, const std::vector<double>& taylor);

Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet pow(const Jet& x, double alpha);
Jet reciprocal(const Jet& x);
Jet entire_cosh(const Jet& x);
Jet entire_sinhc(const Jet& x);

}  // namespace photostat
