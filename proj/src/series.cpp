#include "photostat/series.hpp"

#include <cmath>

#include "photostat/errors.hpp"

namespace photostat::series {

Series mul(const Series& a, const Series& b, int order) {
  Series r(order + 1, 0.0);
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Series pow(const Series& a, double alpha, int order) {
  if (a.empty() || a[0] == 0.0) throw NumericalError("series power needs a nonzero constant term");
  bool integral = alpha == std::floor(alpha);
  if (!integral && a[0] < 0.0) throw NumericalError("fractional power of negative series");
  auto at = [&](int k) { return k < static_cast<int>(a.size()) ? a[k] : 0.0; };
  Series p(order + 1, 0.0);
  p[0] = std::pow(a[0], alpha);
  for (int k = 1; k <= order; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += ((alpha + 1.0) * j - k) * at(j) * p[k - j];
    p[k] = acc / (k * a[0]);
  }
  return p;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

double factorial(int n) {
  if (n <= 170) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  }
  return std::exp(log_factorial(n));
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return n <= 60 ? std::round(b) : b;
}

}  // namespace photostat::series
