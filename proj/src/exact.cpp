#include "photostat/exact.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "photostat/errors.hpp"
#include "photostat/genfn.hpp"
#include "photostat/series.hpp"

namespace photostat {

namespace {

void check_order(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    std::ostringstream os;
    os << what << ": order " << n << " outside supported range [" << lo << ", " << hi << "]";
    throw ConfigError(os.str());
  }
}

int resolve_ns(int ns, int nmax) {
  if (ns < 0) return nmax + 4;
  if (ns < nmax) throw ConfigError("jet order insufficient for requested n");
  return ns;
}

double detected_flux(const SourceParams& p, const Detector& d) { return d.eta() * mean_flux(p); }

// Highest order taken from the jet; beyond it the s-series loses precision.
constexpr int kJetPhotocountMax = 16;

// p(0..nmax) from G on the circle |s - 1| = 1, where |G| <= 1, by a discrete
// Cauchy integral. Absolute error is of the order of the rounding unit.
std::vector<double> photocount_contour(const SourceParams& p, const Detector& d, int nmax, double T) {
  // Aliasing folds p(n + m) onto p(n); m covers a geometric tail of the mean count.
  const double mean = detected_flux(p, d) * T;
  const double need = std::max(4.0 * (nmax + 1), 40.0 * (mean + 1.0));
  if (need > (1 << 22)) throw NumericalError("photocount: mean count too large for contour evaluation");
  int m = 64;
  while (m < need) m *= 2;
  std::vector<double> out(nmax + 1, 0.0);
  for (int j = 0; j <= m / 2; ++j) {
    const double th = 2.0 * std::numbers::pi * j / m;
    const std::complex<double> g = gf_complex(p, d, 1.0 - std::polar(1.0, th), T);
    const std::complex<double> w = std::polar(1.0, -th);
    const double weight = (j == 0 || j == m / 2) ? 1.0 : 2.0;
    std::complex<double> z = 1.0;
    for (int n = 0; n <= nmax; ++n) {
      if (n % 64 == 0) z = std::polar(1.0, -n * th);
      out[n] += weight * (g * z).real();
      z *= w;
    }
  }
  for (double& v : out) v /= m;
  return out;
}

// Contour values, refined by the jet where the two agree to the contour's accuracy.
std::vector<double> photocount_values(const SourceParams& p, const Detector& d, int nmax, double T) {
  std::vector<double> out = photocount_contour(p, d, nmax, T);
  const int nj = std::min(nmax, kJetPhotocountMax);
  Jet g = gf(p, d, 1.0, T, nj);
  for (int k = 0; k <= nj; ++k) {
    double v = (k % 2 ? -1.0 : 1.0) * g(k, 0);
    if (std::abs(v - out[k]) <= 1e-13) out[k] = v;
  }
  for (double& v : out) v = std::min(1.0, clamp_nonnegative(v, 1.0, "photocount"));
  return out;
}

}  // namespace

std::vector<double> photocount_range(const SourceParams& p, const Detector& d, int nmax, double T) {
  check_order(nmax, 0, 100000, "photocount");
  return photocount_values(p, d, nmax, T);
}

double photocount(const SourceParams& p, const Detector& d, int n, double T, int ns) {
  check_order(n, 0, 100000, "photocount");
  if (ns < 0) return photocount_values(p, d, n, T)[n];
  Jet g = gf(p, d, 1.0, T, resolve_ns(ns, n));
  double v = (n % 2 ? -1.0 : 1.0) * g(n, 0);
  return std::min(1.0, clamp_nonnegative(v, 1.0, "photocount"));
}

std::vector<double> photocount_distribution(const SourceParams& p, const Detector& d, double T,
                                            double tol) {
  double mean = detected_flux(p, d) * T;
  int n = std::max(16, static_cast<int>(mean + 10.0 * std::sqrt(mean + 1.0) + 10.0));
  for (int iter = 0; iter < 8; ++iter) {
    std::vector<double> pr = photocount_range(p, d, n, T);
    double tail = 0.0;
    for (int k = n - 3; k <= n; ++k) tail = std::max(tail, pr[k]);
    bool decaying = pr[n] <= pr[n - 1] && pr[n - 1] <= pr[n - 2];
    // Geometric bound on the neglected tail from the last ratio.
    double ratio = pr[n - 1] > 0.0 ? pr[n] / pr[n - 1] : 0.0;
    double bound = ratio < 1.0 ? pr[n] * ratio / (1.0 - ratio) : INFINITY;
    if (decaying && bound < 0.01 * tol && tail < tol) return pr;
    n *= 2;
  }
  throw NumericalError("photocount distribution did not converge");
}

WaitValues wait_values_raw(const SourceParams& p, const Detector& d, int nmax, double T) {
  check_order(nmax, 1, kMaxWaitOrder, "wait-time");
  Jet g = gf(p, d, 1.0, T, nmax + 4);
  const double flux = detected_flux(p, d);
  WaitValues out;
  out.P.resize(nmax);
  out.w.resize(nmax);
  for (int n = 1; n <= nmax; ++n) {
    double sp = 0.0, sw = 0.0;
    for (int k = 0; k < n; ++k) {
      double sg = k % 2 ? -1.0 : 1.0;
      sp -= sg * g(k, 1);
      sw += (n - k) * sg * 2.0 * g(k, 2);
    }
    out.P[n - 1] = sp;
    out.w[n - 1] = sw / flux;
  }
  return out;
}

double pn_wait(const SourceParams& p, const Detector& d, int n, double T, int ns) {
  check_order(n, 1, kMaxWaitOrder, "pn_wait");
  Jet g = gf(p, d, 1.0, T, resolve_ns(ns, n));
  double s = 0.0, mag = 0.0;
  for (int k = 0; k < n; ++k) {
    double term = (k % 2 ? -1.0 : 1.0) * g(k, 1);
    s -= term;
    mag += std::abs(term);
  }
  return clamp_nonnegative(s, std::max(mag, detected_flux(p, d)), "pn_wait");
}

double wn_wait(const SourceParams& p, const Detector& d, int n, double T, int ns) {
  check_order(n, 1, kMaxWaitOrder, "wn_wait");
  Jet g = gf(p, d, 1.0, T, resolve_ns(ns, n));
  double s = 0.0, mag = 0.0;
  for (int k = 0; k < n; ++k) {
    double term = (n - k) * (k % 2 ? -1.0 : 1.0) * 2.0 * g(k, 2);
    s += term;
    mag += std::abs(term);
  }
  const double flux = detected_flux(p, d);
  return clamp_nonnegative(s / flux, std::max(mag / flux, flux), "wn_wait");
}

double wn_via_pn(const SourceParams& p, const Detector& d, int n, double T, int ns) {
  check_order(n, 1, kMaxWaitOrder, "wn_via_pn");
  Jet g = gf(p, d, 1.0, T, resolve_ns(ns, n));
  // q(s) = (1/s) dG/dT about s = 1, together with its T-derivative.
  std::vector<double> q0(n, 0.0), q1(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m <= i; ++m) {
      double inv = (m % 2 ? -1.0 : 1.0);
      q0[i] += inv * g(i - m, 1);
      q1[i] += inv * 2.0 * g(i - m, 2);
    }
  }
  // P_k = -(-1)^{k-1} q0[k-1];  w_n = -(1/eta I) d/dT sum_k P_k
  double s = 0.0, mag = 0.0;
  for (int k = 1; k <= n; ++k) {
    double term = (k % 2 ? 1.0 : -1.0) * q1[k - 1];
    s += term;
    mag += std::abs(term);
  }
  const double flux = detected_flux(p, d);
  return clamp_nonnegative(s / flux, std::max(mag / flux, flux), "wn_via_pn");
}

double g_zero(const SourceParams& p, int n) {
  check_order(n, 1, kMaxWaitOrder + 1, "g_zero");
  validate(p);
  const Detector d(1.0);
  const double flux = mean_flux(p);
  const double rate = characteristic_rate(p);
  constexpr int kLo = 8, kHi = 16;
  std::vector<double> ts, rs;
  for (int k = kLo; k <= kHi; ++k) {
    double T = std::ldexp(1.0, -k) / rate;
    Jet g = gf(p, d, 0.0, T, n);
    double moment = (n % 2 ? -1.0 : 1.0) * series::factorial(n) * g(n, 0);
    ts.push_back(T * rate);
    rs.push_back(moment / std::pow(flux * T, n));
  }
  // Least-squares cubic in T, evaluated at T = 0, on two overlapping windows.
  auto extrapolate = [&](int lo, int hi) {
    Eigen::MatrixXd a(hi - lo, 4);
    Eigen::VectorXd b(hi - lo);
    for (int i = lo; i < hi; ++i) {
      double x = 1.0;
      for (int c = 0; c < 4; ++c) {
        a(i - lo, c) = x;
        x *= ts[i];
      }
      b(i - lo) = rs[i];
    }
    Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
    return coef(0);
  };
  const int m = static_cast<int>(ts.size());
  double e_all = extrapolate(0, m);
  double e_fine = extrapolate(1, m);
  if (std::abs(e_all - e_fine) > 1e-6 * std::max(1.0, std::abs(e_all)))
    throw NumericalError("g_zero extrapolation did not converge");
  return e_all;
}

}  // namespace photostat
