#pragma once

#include <vector>

namespace photostat::series {

// Univariate truncated power series: a[k] is the coefficient of u^k.
using Series = std::vector<double>;

Series mul(const Series& a, const Series& b, int order);
// a^alpha for a[0] > 0 (or any a[0] != 0 when alpha is an integer).
Series pow(const Series& a, double alpha, int order);

double binomial(int n, int k);
double log_factorial(int n);
double factorial(int n);

}  // namespace photostat::series
