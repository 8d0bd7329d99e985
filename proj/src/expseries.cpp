#include "photostat/expseries.hpp"

#include <cmath>
#include <numbers>

namespace photostat {

void ExpSeries::add(double c, int m, double a, double b, double phi) {
  if (c == 0.0) return;
  add_log(std::log(std::abs(c)), c > 0 ? 1 : -1, m, a, b, phi);
}

void ExpSeries::add_log(double logc, int sign, int m, double a, double b, double phi) {
  if (sign == 0 || logc == -INFINITY) return;
  terms_.push_back({logc, sign, m, a, b, phi});
}

void ExpSeries::append(const ExpSeries& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
}

double ExpSeries::magnitude(const ExpTerm& t, double T) {
  if (t.m > 0 && T == 0.0) return 0.0;
  double e = t.logc + t.a * T + (t.m > 0 ? t.m * std::log(T) : 0.0);
  return std::exp(e);
}

double ExpSeries::operator()(double T) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double v = magnitude(t, T);
    if (t.b != 0.0 || t.phi != 0.0) v *= std::cos(t.b * T + t.phi);
    s += t.sign * v;
  }
  return s;
}

double ExpSeries::abs_sum(double T) const {
  double s = 0.0;
  for (const auto& t : terms_) s += magnitude(t, T);
  return s;
}

ExpSeries ExpSeries::derivative() const {
  ExpSeries d;
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  for (const auto& t : terms_) {
    if (t.m > 0) d.add_log(t.logc + std::log(static_cast<double>(t.m)), t.sign, t.m - 1, t.a, t.b, t.phi);
    if (t.a != 0.0)
      d.add_log(t.logc + std::log(std::abs(t.a)), t.a > 0 ? t.sign : -t.sign, t.m, t.a, t.b, t.phi);
    // d/dT cos(bT + phi) = b cos(bT + phi + pi/2)
    if (t.b != 0.0)
      d.add_log(t.logc + std::log(std::abs(t.b)), t.b > 0 ? t.sign : -t.sign, t.m, t.a, t.b,
                t.phi + kHalfPi);
  }
  return d;
}

}  // namespace photostat
