#include <algorithm>
#include <cmath>
#include <numbers>

#include "photostat/closedform.hpp"
#include "photostat/errors.hpp"
#include "photostat/exact.hpp"
#include "photostat/series.hpp"

namespace photostat::closedform {

namespace {

using std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
const double kCbrt2 = std::cbrt(2.0);

double lfact(int n) { return series::log_factorial(n); }

void check_n(int n) {
  if (n < 1 || n > kMaxWaitOrder) throw ConfigError("rf wait-time order must lie in [1, 8]");
}

void check_T(double T) {
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("T must be finite and >= 0");
}

// (2 + C - 3S) / x^2 and (-4 + C - 9S + 24 (C - 1) / x) / x^3 with C = cosh sqrt x, S = sinh sqrt x / sqrt x.
double bracket2(double x) {
  if (std::abs(x) > 4.0) {
    double c = entire_cosh(x), sh = entire_sinhc(x);
    return (2.0 + c - 3.0 * sh) / (x * x);
  }
  double sum = 0.0, xp = 1.0, f = 120.0;
  for (int j = 2; j < 40; ++j) {
    double t = (2.0 * j - 2.0) / f * xp;
    sum += t;
    if (std::abs(t) < 1e-18 * std::abs(sum)) break;
    xp *= x;
    f *= (2.0 * j + 2.0) * (2.0 * j + 3.0);
  }
  return sum;
}

double bracket3(double x) {
  if (std::abs(x) > 4.0) {
    double c = entire_cosh(x), sh = entire_sinhc(x);
    return (-4.0 + c - 9.0 * sh + 24.0 * (c - 1.0) / x) / (x * x * x);
  }
  double sum = 0.0, xp = 1.0, f = 40320.0;
  for (int j = 3; j < 40; ++j) {
    double t = 4.0 * (j - 1.0) * (j - 2.0) / f * xp;
    sum += t;
    if (std::abs(t) < 1e-18 * std::abs(sum)) break;
    xp *= x;
    f *= (2.0 * j + 3.0) * (2.0 * j + 4.0);
  }
  return sum;
}

// Residue contribution at an isolated real root r of multiplicity n:
// K^n / (n-1)! d^{n-1}/ds^{n-1} [ e^{sT} h(s) ] at s = r, with h = qpoly(s - r)^(-n).
void add_isolated_root(ExpSeries& out, int n, double logK, double r, const series::Series& qpoly) {
  series::Series h = series::pow(qpoly, -static_cast<double>(n), n - 1);
  for (int l = 0; l < n; ++l) {
    if (h[l] == 0.0) continue;
    out.add_log(n * logK + std::log(std::abs(h[l])) - lfact(n - 1 - l), h[l] > 0 ? 1 : -1, n - 1 - l, r);
  }
}

}  // namespace

double RfAux::Cn(int n) const {
  double w = rabi * rabi / (beta * beta);
  return std::exp(n * std::log(eta * w) - 3.0 * lfact(n - 1) - n * std::log(3.0) - 2.0 * n * std::log(R));
}

double RfAux::D0(int n, int k) const {
  double s = 0.0;
  for (int j = 0; j <= k; ++j)
    s += (j % 2 ? -1.0 : 1.0) * series::binomial(k, j) * series::factorial(n + k - j - 1) *
         series::factorial(n + j - 1);
  return series::binomial(n - 1, k) * s;
}

double RfAux::D(int n, int k) const {
  double s = 0.0;
  for (int j = 0; j <= k; ++j)
    s += series::binomial(k, j) * series::factorial(n + k - j - 1) * series::factorial(n + j - 1) /
         std::ldexp(1.0, n + j);
  return series::binomial(n - 1, k) * s;
}

double RfAux::phi(int n, int k, int p) const { return theta1 * (n + k - p) - (n + p) * pi / 2.0; }

double RfAux::J0(int n, int k) const {
  double s = 0.0;
  for (int p = 0; p <= k; ++p)
    s += series::binomial(k, p) * series::factorial(n + k - p - 1) * series::factorial(n + p - 1) *
         std::cos((2 * p - k) * theta1);
  return s;
}

double RfAux::J(int n, int k, double T) const {
  double ratio = R / (delta2 - delta1);
  double arg = (delta2 - delta1) * kSqrt3 / 2.0 * beta * T;
  double s = 0.0;
  for (int p = 0; p <= k; ++p)
    s += series::binomial(k, p) * (p % 2 ? -1.0 : 1.0) * series::factorial(n + k - p - 1) *
         series::factorial(n + p - 1) * std::pow(ratio, p) * std::cos(arg + phi(n, k, p));
  return std::pow(ratio, n) * s;
}

double RfAux::factorization_residual() const {
  std::complex<double> s1 = roots[0], s2 = roots[1], s3 = roots[2];
  double c2 = 3.0 * beta, c1 = 2.0 * beta * beta + rabi * rabi, c0 = beta * eta * rabi * rabi;
  double r2 = std::abs(-(s1 + s2 + s3) - c2) / c2;
  double r1 = std::abs((s1 * s2 + s1 * s3 + s2 * s3) - c1) / c1;
  double r0 = std::abs(-(s1 * s2 * s3) - c0) / c0;
  return std::max({r0, r1, r2});
}

RfAux rf_aux(const Rf& p, const Detector& d) {
  validate(p);
  if (!(p.rabi > 0.0)) throw ConfigError("rf closed forms need rabi > 0");
  RfAux a;
  a.beta = p.beta;
  a.rabi = p.rabi;
  a.eta = d.eta();
  a.omega2 = p.omega2();
  a.C = 1.0 / (p.rabi * p.rabi + 2.0 * p.beta * p.beta);
  a.mu = d.mu();
  a.K = p.beta * d.eta() * p.rabi * p.rabi;
  const double w = p.rabi * p.rabi / (p.beta * p.beta);
  a.p = w - 1.0;
  a.q = -(1.0 - a.eta) * w;
  const double lin = 27.0 * (1.0 - a.eta) * w;
  a.discriminant = 108.0 * a.p * a.p * a.p + lin * lin;
  const double b = p.beta;
  if (a.discriminant >= 0.0) {
    a.single_real_root = true;
    a.B = std::cbrt(lin + std::sqrt(a.discriminant));
    if (a.B > 0.0) {
      a.delta1 = kCbrt2 * (1.0 - w) / a.B;
      a.delta2 = a.B / (3.0 * kCbrt2);
    }
    const double d1 = a.delta1, d2 = a.delta2;
    a.R = std::sqrt(d1 * d1 + d1 * d2 + d2 * d2);
    a.theta1 = std::atan2(d2 - d1, kSqrt3 * (d1 + d2));
    double re = b * (-1.0 - 0.5 * (d1 + d2));
    double im = b * kSqrt3 / 2.0 * (d2 - d1);
    a.roots = {std::complex<double>(b * (-1.0 + d1 + d2), 0.0), std::complex<double>(re, im),
               std::complex<double>(re, -im)};
  } else {
    a.single_real_root = false;
    double m = 2.0 * std::sqrt(-a.p / 3.0);
    double th = std::acos(std::clamp(1.5 * a.q / a.p * std::sqrt(-3.0 / a.p), -1.0, 1.0));
    std::array<double, 3> u;
    for (int k = 0; k < 3; ++k) u[k] = m * std::cos(th / 3.0 - 2.0 * pi * k / 3.0);
    std::sort(u.begin(), u.end(), std::greater<>());
    for (int k = 0; k < 3; ++k) a.roots[k] = b * (u[k] - 1.0);
  }
  return a;
}

namespace {

bool unit_eta(const RfAux& a) { return a.eta == 1.0; }

ExpSeries unit_residue(int n, const RfAux& a) {
  ExpSeries out;
  const double b = a.beta, o2 = a.omega2;
  if (o2 == 0.0) return out;
  const double lpref = std::log(b) + 2.0 * n * std::log(a.rabi) - 3.0 * lfact(n - 1) - n * std::log(std::abs(o2));
  const int psign = (o2 < 0 && n % 2) ? -1 : 1;
  const double om = std::sqrt(std::abs(o2));
  // Ch = cosh(omega T), Sh = sinh(omega T)/omega, continued to omega^2 < 0.
  auto add_ch = [&](double logc, int sign, int m) {
    if (o2 > 0) {
      out.add_log(logc - std::log(2.0), sign, m, -b + om);
      out.add_log(logc - std::log(2.0), sign, m, -b - om);
    } else {
      out.add_log(logc, sign, m, -b, om, 0.0);
    }
  };
  auto add_sh = [&](double logc, int sign, int m) {
    if (o2 > 0) {
      out.add_log(logc - std::log(2.0 * om), sign, m, -b + om);
      out.add_log(logc - std::log(2.0 * om), -sign, m, -b - om);
    } else {
      out.add_log(logc - std::log(om), sign, m, -b, om, -pi / 2.0);
    }
  };
  for (int k = 0; k < n; ++k) {
    const int m = n - k - 1;
    const double lpoly = m * std::log(b);
    if (k % 2 == 0) {
      // (beta^2 / omega^2)^{k/2}
      const double lf = 0.5 * k * (2.0 * std::log(b) - std::log(std::abs(o2)));
      const int fs = (o2 < 0 && (k / 2) % 2) ? -1 : 1;
      double d0 = a.D0(n, k), dd = a.D(n, k);
      if (d0 != 0.0)
        out.add_log(lpref + lpoly + lf + std::log(std::abs(d0)), psign * fs * (n % 2 ? -1 : 1) * (d0 > 0 ? 1 : -1), m, -b);
      add_ch(lpref + lpoly + lf + std::log(2.0 * dd), psign * fs, m);
    } else {
      // beta^k (omega^2)^{-(k-1)/2}
      const double lg = k * std::log(b) - 0.5 * (k - 1) * std::log(std::abs(o2));
      const int gs = (o2 < 0 && ((k - 1) / 2) % 2) ? -1 : 1;
      add_sh(lpref + lpoly + lg + std::log(2.0 * a.D(n, k)), -psign * gs, m);
    }
  }
  return out;
}

// sum_m binom(n+m-1, m) omega^{2m} T^{3n+2m-1} / (3n+2m-1)!, truncated for T.
ExpSeries unit_series(int n, double T, const RfAux& a, bool& converged) {
  ExpSeries out;
  const double b = a.beta, o2 = a.omega2;
  const double lk = n * std::log(b * a.rabi * a.rabi);
  const double lo2 = o2 != 0.0 ? std::log(std::abs(o2)) : 0.0;
  const double lT = T > 0.0 ? std::log(T) : -INFINITY;
  const double om_t = std::sqrt(std::abs(o2)) * T;
  double total = 0.0;
  converged = false;
  for (int m = 0; m < 4000; ++m) {
    if (m > 0 && o2 == 0.0) {
      converged = true;
      break;
    }
    int pw = 3 * n + 2 * m - 1;
    double logc = lk + std::log(series::binomial(n + m - 1, m)) + m * lo2 - lfact(pw);
    int sign = (o2 < 0 && m % 2) ? -1 : 1;
    out.add_log(logc, sign, pw, -b);
    double mag = T > 0.0 ? std::exp(logc + pw * lT - b * T) : (pw == 0 ? std::exp(logc) : 0.0);
    total += mag;
    if (m > om_t + 8 && mag <= 1e-18 * total) {
      converged = true;
      break;
    }
  }
  return out;
}

ExpSeries jform(int n, const RfAux& a) {
  ExpSeries out;
  const double b = a.beta, d1 = a.delta1, d2 = a.delta2, R = a.R;
  if (!a.single_real_root || !(R > 0.0) || d2 == d1) return out;
  const double lpre = std::log(b) + std::log(a.Cn(n));
  const double a1 = -b + (d1 + d2) * b;
  const double a2 = -b - 0.5 * (d1 + d2) * b;
  const double freq = (d2 - d1) * kSqrt3 / 2.0 * b;
  const double lratio = std::log(std::abs(R / (d2 - d1)));
  const int rsign = (d2 - d1) > 0 ? 1 : -1;
  for (int k = 0; k < n; ++k) {
    const int m = n - 1 - k;
    const double lk = lpre + std::log(series::binomial(n - 1, k)) + m * std::log(b) - k * std::log(kSqrt3 * R);
    double j0 = a.J0(n, k);
    if (j0 != 0.0) out.add_log(lk + std::log(std::abs(j0)), (k % 2 ? -1 : 1) * (j0 > 0 ? 1 : -1), m, a1);
    for (int p = 0; p <= k; ++p) {
      double lc = lk + std::log(2.0) + (n + p) * lratio + std::log(series::binomial(k, p)) + lfact(n + k - p - 1) +
                  lfact(n + p - 1);
      int sign = (n % 2 ? -1 : 1) * (p % 2 ? -1 : 1) * (((n + p) % 2 && rsign < 0) ? -1 : 1);
      out.add_log(lc, sign, m, a2, freq, a.phi(n, k, p));
    }
  }
  return out;
}

ExpSeries real_residue(int n, const RfAux& a) {
  ExpSeries out;
  if (a.single_real_root) return out;
  const double lK = std::log(a.K);
  for (int i = 0; i < 3; ++i) {
    double si = a.roots[i].real();
    double dj = si - a.roots[(i + 1) % 3].real();
    double dk = si - a.roots[(i + 2) % 3].real();
    if (dj == 0.0 || dk == 0.0) return ExpSeries{};
    add_isolated_root(out, n, lK, si, {dj * dk, dj + dk, 1.0});
  }
  return out;
}

// Isolated real root plus a series in the half-separation of the remaining pair.
ExpSeries pair_series(int n, double T, const RfAux& a, bool& converged) {
  ExpSeries out;
  converged = false;
  double s1, mid, eps2;
  if (a.single_real_root) {
    s1 = a.roots[0].real();
    mid = a.roots[1].real();
    eps2 = -a.roots[1].imag() * a.roots[1].imag();
  } else {
    double r0 = a.roots[0].real(), r1 = a.roots[1].real(), r2 = a.roots[2].real();
    if (r0 - r1 < r1 - r2) {
      s1 = r2;
      mid = 0.5 * (r0 + r1);
      eps2 = 0.25 * (r0 - r1) * (r0 - r1);
    } else {
      s1 = r0;
      mid = 0.5 * (r1 + r2);
      eps2 = 0.25 * (r1 - r2) * (r1 - r2);
    }
  }
  const double dist = mid - s1;
  if (!(std::abs(eps2) < 0.25 * dist * dist)) return out;
  const double lK = std::log(a.K);
  const double d = s1 - mid;
  add_isolated_root(out, n, lK, s1, {d * d - eps2, 2.0 * d, 1.0});
  const double lT = T > 0.0 ? std::log(T) : -INFINITY;
  const double ldist = std::log(std::abs(dist));
  const double le = eps2 != 0.0 ? std::log(std::abs(eps2)) : 0.0;
  double total = out.abs_sum(T);
  int quiet = 0;
  for (int j = 0; j < 3000; ++j) {
    if (j > 0 && eps2 == 0.0) {
      converged = true;
      break;
    }
    const int N = 2 * n + 2 * j;
    const double lj = n * lK + std::log(series::binomial(n + j - 1, j)) + j * le - lfact(n - 1);
    const int js = (eps2 < 0 && j % 2) ? -1 : 1;
    double block = 0.0;
    for (int l = 0; l < N; ++l) {
      double lc = lj + lfact(n + l - 1) - lfact(l) - lfact(N - 1 - l) - (n + l) * ldist;
      int sign = js * (l % 2 ? -1 : 1) * ((dist < 0 && (n + l) % 2) ? -1 : 1);
      int pw = N - 1 - l;
      out.add_log(lc, sign, pw, mid);
      block += T > 0.0 ? std::exp(lc + pw * lT + mid * T) : (pw == 0 ? std::exp(lc) : 0.0);
    }
    total += block;
    quiet = block <= 1e-18 * total ? quiet + 1 : 0;
    if (quiet >= 3) {
      converged = true;
      break;
    }
  }
  return out;
}

struct Candidate {
  RfRoute route;
  ExpSeries series;
  double abs_sum;
  double value;
};

bool build(int n, double T, const RfAux& a, RfRoute r, ExpSeries& out) {
  bool ok = true;
  switch (r) {
    case RfRoute::UnitResidue:
      if (!unit_eta(a) || a.omega2 == 0.0) return false;
      out = unit_residue(n, a);
      break;
    case RfRoute::UnitSeries:
      if (!unit_eta(a) || std::sqrt(std::abs(a.omega2)) * T > 60.0) return false;
      out = unit_series(n, T, a, ok);
      break;
    case RfRoute::JForm:
      if (unit_eta(a)) return false;
      out = jform(n, a);
      break;
    case RfRoute::RealResidue:
      if (unit_eta(a)) return false;
      out = real_residue(n, a);
      break;
    case RfRoute::PairSeries:
      if (unit_eta(a)) return false;
      out = pair_series(n, T, a, ok);
      break;
    case RfRoute::Auto:
      return false;
  }
  return ok && !out.empty();
}

}  // namespace

RfRoute rf_select_route(int n, double T, const RfAux& a) {
  std::vector<RfRoute> primary, fallback;
  if (unit_eta(a)) {
    primary = {RfRoute::UnitResidue};
    fallback = {RfRoute::UnitSeries};
  } else {
    primary = {a.single_real_root ? RfRoute::JForm : RfRoute::RealResidue};
    fallback = {RfRoute::PairSeries};
  }
  RfRoute best = RfRoute::Auto;
  double best_abs = INFINITY;
  auto consider = [&](RfRoute r) {
    ExpSeries s;
    if (!build(n, T, a, r, s)) return;
    double as = s.abs_sum(T);
    if (std::isfinite(as) && as < best_abs) {
      best_abs = as;
      best = r;
    }
  };
  for (RfRoute r : primary) consider(r);
  if (best != RfRoute::Auto) {
    ExpSeries s;
    build(n, T, a, best, s);
    double v = s(T);
    if (best_abs <= 1e4 * std::abs(v)) return best;
  }
  for (RfRoute r : fallback) consider(r);
  if (best == RfRoute::Auto) throw NumericalError("no convergent resonance-fluorescence representation");
  return best;
}

ExpSeries rf_wn_series(int n, double T, const RfAux& a, RfRoute route) {
  check_n(n);
  check_T(T);
  if (route == RfRoute::Auto) route = rf_select_route(n, T, a);
  ExpSeries s;
  if (!build(n, T, a, route, s)) throw ConfigError("requested rf representation is not applicable");
  return s;
}

double rf_wn(int n, double T, const Rf& p, const Detector& d, RfRoute route) {
  RfAux a = rf_aux(p, d);
  ExpSeries s = rf_wn_series(n, T, a, route);
  return clamp_nonnegative(s(T), s.abs_sum(T), "rf_wn");
}

double rf_pn(int n, double T, const Rf& p, const Detector& d, RfRoute route) {
  RfAux a = rf_aux(p, d);
  ExpSeries s = rf_wn_series(n, T, a, route);
  ExpSeries s1 = s.derivative();
  ExpSeries s2 = s1.derivative();
  double v = a.C * s2(T) + 3.0 * a.beta * a.C * s1(T) + s(T);
  double mag = a.C * s2.abs_sum(T) + 3.0 * a.beta * a.C * s1.abs_sum(T) + s.abs_sum(T);
  return clamp_nonnegative(v, mag, "rf_pn");
}

double rf_wn_special(int n, double T, const Rf& p) {
  check_T(T);
  const double b = p.beta, o2 = p.omega2(), r2 = p.rabi * p.rabi;
  const double x = o2 * T * T, t2 = T * T;
  const double q = entire_sinhc(0.25 * x);
  const double bt = b * T, e = std::exp(-bt);
  switch (n) {
    case 1: return b * r2 * t2 * e * 0.5 * q * q;
    case 2: return b * (r2 * r2) * t2 * t2 / 2.0 * bt * e * bracket2(x);
    case 3: return b * (r2 * r2 * r2) * t2 * t2 * t2 / 8.0 * bt * bt * e * bracket3(x);
  }
  throw ConfigError("rf specializations exist for n = 1..3 only");
}

double rf_wn_equal_unit(int n, double T, double beta) {
  check_n(n);
  if (T == 0.0) return 0.0;
  double x = beta * T;
  return beta * std::exp((3 * n - 1) * std::log(x) - x - lfact(3 * n - 1));
}

double rf_pn_equal_unit(int n, double T, double beta) {
  check_n(n);
  double x = beta * T;
  double poly = x * x + (3 * n - 1) * x + (3 * n - 1) * (3 * n - 2.0);
  double lead = n == 1 ? 1.0 : std::pow(x, 3 * (n - 1));
  return beta / 3.0 * lead / series::factorial(3 * n - 1) * std::exp(-x) * poly;
}

double rf_w1_equal(double T, double beta, double eta) {
  if (eta == 1.0) return rf_wn_equal_unit(1, T, beta);
  const double mu = std::cbrt(1.0 - eta), x = beta * T;
  return eta * beta / (3.0 * mu * mu) * std::exp(-x * (1.0 - mu)) *
         (1.0 - 2.0 * std::exp(-1.5 * mu * x) * std::cos(kSqrt3 / 2.0 * mu * x - pi / 3.0));
}

double rf_p1_equal(double T, double beta, double eta) {
  if (eta == 1.0) return rf_pn_equal_unit(1, T, beta);
  const double mu = std::cbrt(1.0 - eta), x = beta * T;
  const double a = kSqrt3 / 2.0 * mu * x - pi / 3.0;
  return eta * beta * std::exp(-(1.0 - mu) * x) / (9.0 * mu * mu) *
         ((1.0 + mu + mu * mu) - 2.0 * std::exp(-1.5 * mu * x) *
                                    ((1.0 - mu / 2.0 - mu * mu / 2.0) * std::cos(a) +
                                     mu * (mu - 1.0) * kSqrt3 / 2.0 * std::sin(a)));
}

double rf_wn_shorttime(int n, double T, const Rf& p) {
  check_n(n);
  if (T == 0.0) return 0.0;
  const double b = p.beta, x = b * T;
  return std::exp(2.0 * n * std::log(p.rabi / b) + std::log(b) + (3 * n - 1) * std::log(x) - x - lfact(3 * n - 1));
}

double rf_wn_strongfield(int n, double T, const Rf& p) {
  check_n(n);
  const double b = p.beta, x = b * T;
  double mod = 1.0 - ((n - 1) % 2 ? -1.0 : 1.0) / std::ldexp(1.0, n - 1) * std::cos(p.rabi * T);
  double lead = n == 1 ? 1.0 : std::pow(x, n - 1);
  return b * lead * std::exp(-x) * mod / series::factorial(n - 1);
}

MomentSummary rf_moments(int n, const Rf& p, const Detector& d, DistKind which) {
  check_n(n);
  const double b = p.beta, o2 = p.rabi * p.rabi, eta = d.eta();
  const double C = 1.0 / (o2 + 2.0 * b * b);
  const double r = eta * p.steady_flux();
  MomentSummary m;
  const double var_w = n / (r * r) * (1.0 - 6.0 * eta * b * b * o2 * C * C);
  if (which == DistKind::ConditionalWait) {
    m.mean = n / r;
    m.variance = var_w;
  } else if (which == DistKind::UnconditionalWait) {
    m.mean = n / r * (1.0 - 3.0 * eta * b * b * o2 * C * C / n);
    m.variance = var_w + (2.0 * o2 - 5.0 * b * b) * C * C;
  } else {
    throw ConfigError("rf moments are defined for wait-time kinds only");
  }
  return m;
}

MomentSummary rf_moments_laplace(int n, const Rf& p, const Detector& d, DistKind which) {
  check_n(n);
  const double b = p.beta, o2 = p.rabi * p.rabi, eta = d.eta();
  const double C = 1.0 / (o2 + 2.0 * b * b);
  const double k = b * eta * o2;
  // cubic(s) / K about s = 0
  series::Series cubic = {1.0, (2.0 * b * b + o2) / k, 3.0 * b / k, 1.0 / k};
  series::Series f = series::pow(cubic, -static_cast<double>(n), 2);
  if (which == DistKind::UnconditionalWait) f = series::mul(f, {1.0, 3.0 * b * C, C}, 2);
  else if (which != DistKind::ConditionalWait) throw ConfigError("rf moments are defined for wait-time kinds only");
  MomentSummary m;
  m.mean = -f[1] / f[0];
  double second = 2.0 * f[2] / f[0];
  m.variance = second - m.mean * m.mean;
  return m;
}

std::complex<double> rf_wn_laplace(int n, std::complex<double> s, const Rf& p, const Detector& d) {
  const double b = p.beta, o2 = p.rabi * p.rabi;
  std::complex<double> cubic = s * (s + b) * (s + 2.0 * b) + o2 * (s + b * d.eta());
  return std::pow(b * d.eta() * o2 / cubic, n);
}

std::complex<double> rf_pn_laplace(int n, std::complex<double> s, const Rf& p, const Detector& d) {
  const double b = p.beta, o2 = p.rabi * p.rabi;
  const double C = 1.0 / (o2 + 2.0 * b * b);
  return (C * s * s + 3.0 * b * C * s + 1.0) * rf_wn_laplace(n, s, p, d);
}

}  // namespace photostat::closedform
