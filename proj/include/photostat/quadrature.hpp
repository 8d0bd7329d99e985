#pragma once

#include <complex>
#include <functional>

namespace photostat {

struct IntegralResult {
  double value = 0.0;
  double body = 0.0;  // integral over [0, tmax]
  double tail = 0.0;  // log-linear extrapolation beyond tmax
  double error = 0.0;
};

// Integral of a density over [0, inf): adaptive Gauss-Kronrod on [0, tmax] plus
// an exponential tail fitted to f on the last tenth of the range.
IntegralResult integrate_density(const std::function<double(double)>& f, double tmax, double tol = 1e-10);

// Adaptive Gauss-Kronrod on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

// Inverse Laplace transform at t > 0 by the Euler-summed Bromwich series
// (abscissa A/(2t), n terms plus m binomially averaged partial sums). Requires
// every singularity of F in Re s < A/(2t).
double invert_laplace(const std::function<std::complex<double>(std::complex<double>)>& F, double t, int n = 200,
                      int m = 16, double A = 24.0);

}  // namespace photostat
