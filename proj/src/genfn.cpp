#include "photostat/genfn.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "photostat/errors.hpp"

namespace photostat {

namespace {

// Beyond this value of z*T the exponentially large entire-function form is
// replaced by the factored log form.
constexpr double kLogSwitch = 20.0;

void check_time(double T) {
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("T must be finite and >= 0");
}

// log[ C(z2 T^2) + (T/2)(z2/lam + lam) S(z2 T^2) ] for a jet z2.
Jet log_denominator(const Jet& z2, double lam, double T) {
  const int ns = z2.ns();
  const double s0 = z2.s0();
  Jet t = Jet::t_variable(ns, s0, T);
  double z0 = std::sqrt(z2.value());
  if (z0 * T <= kLogSwitch) {
    Jet x = z2 * t * t;
    Jet d = entire_cosh(x) + 0.5 * t * (z2 / lam + lam) * entire_sinhc(x);
    return log(d);
  }
  Jet z = sqrt(z2);
  Jet zp = z + lam;
  Jet rho = (z - lam) / zp;
  Jet tail = 1.0 - rho * rho * exp(-2.0 * z * t);
  return z * t + log(zp * zp / (4.0 * lam * z)) + log(tail);
}

void check_jet(const Jet& j, const char* what) {
  for (double v : j.raw())
    if (!std::isfinite(v)) throw NumericalError(std::string(what) + ": overflow in generating function");
}

}  // namespace

Jet log_gf_coherent(const Coherent& p, const Detector& d, double s0, double T, int ns) {
  check_time(T);
  Jet s = Jet::s_variable(ns, s0, T);
  Jet t = Jet::t_variable(ns, s0, T);
  return (-d.eta() * p.flux) * s * t;
}

Jet log_gf_thermal(const Thermal& p, const Detector& d, double s0, double T, int ns) {
  check_time(T);
  Jet s = Jet::s_variable(ns, s0, T);
  Jet t = Jet::t_variable(ns, s0, T);
  const double a = 2.0 * p.gamma;
  Jet z2 = (a * a) * (1.0 + (2.0 * d.eta() * p.nbar) * s);
  if (!(z2.value() > 0.0)) throw NumericalError("thermal z^2 must be positive");
  Jet r = a * t - log_denominator(z2, a, T);
  check_jet(r, "thermal");
  return r;
}

Jet log_gf_dpo(const Dpo& p, const Detector& d, double s0, double T, int ns) {
  check_time(T);
  Jet s = Jet::s_variable(ns, s0, T);
  Jet t = Jet::t_variable(ns, s0, T);
  const double r = p.r();
  const double l1 = p.lambda1(), l2 = p.lambda2();
  const double k = 2.0 * d.eta() * p.gamma * p.gamma * r;
  Jet z1 = l1 * l1 + k * s;
  Jet z2 = l2 * l2 - k * s;
  if (!(z1.value() > 0.0 && z2.value() > 0.0))
    throw NumericalError("dpo sqrt argument must be positive below threshold");
  Jet out = (0.5 * (l1 + l2)) * t - 0.5 * (log_denominator(z1, l1, T) + log_denominator(z2, l2, T));
  check_jet(out, "dpo");
  return out;
}

Jet gf_coherent(const Coherent& p, const Detector& d, double s0, double T, int ns) {
  return exp(log_gf_coherent(p, d, s0, T, ns));
}

Jet gf_thermal(const Thermal& p, const Detector& d, double s0, double T, int ns) {
  return exp(log_gf_thermal(p, d, s0, T, ns));
}

Jet gf_dpo(const Dpo& p, const Detector& d, double s0, double T, int ns) {
  return exp(log_gf_dpo(p, d, s0, T, ns));
}

Jet gf_rf(const Rf& p, const Detector& d, double s0, double T, int ns) {
  check_time(T);
  const double b = p.beta, om = p.rabi, eta = d.eta();
  if (!(om > 0.0)) throw ConfigError("rf generating function needs rabi > 0");
  Eigen::Matrix3d m0;
  m0 << -2.0 * b, 0.0, -om,
        2.0 * b * (1.0 - s0 * eta), 0.0, om,
        0.5 * om, -0.5 * om, -b;
  const int nb = ns + 1;
  const int dim = 3 * nb;
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < nb; ++k) {
    big.block<3, 3>(3 * k, 3 * k) = m0;
    if (k + 1 < nb) big(3 * (k + 1) + 1, 3 * k) = -2.0 * b * eta;
  }
  const double ree = om * om / (2.0 * om * om + 4.0 * b * b);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  v(0) = ree;
  v(1) = 1.0 - ree;
  v(2) = -(2.0 * b / om) * ree;
  Eigen::MatrixXd e = (big * T).exp();
  Eigen::VectorXd y0 = e * v;
  Eigen::VectorXd y1 = big * y0;
  Eigen::VectorXd y2 = big * y1;
  Jet g(ns, s0, T);
  for (int k = 0; k < nb; ++k) {
    g(k, 0) = y0(3 * k) + y0(3 * k + 1);
    g(k, 1) = y1(3 * k) + y1(3 * k + 1);
    g(k, 2) = 0.5 * (y2(3 * k) + y2(3 * k + 1));
  }
  check_jet(g, "rf");
  return g;
}

Jet gf(const SourceParams& p, const Detector& d, double s0, double T, int ns) {
  validate(p);
  return std::visit(
      [&](const auto& s) -> Jet {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Coherent>) return gf_coherent(s, d, s0, T, ns);
        else if constexpr (std::is_same_v<S, Thermal>) return gf_thermal(s, d, s0, T, ns);
        else if constexpr (std::is_same_v<S, Dpo>) return gf_dpo(s, d, s0, T, ns);
        else return gf_rf(s, d, s0, T, ns);
      },
      p);
}

double gf_value(const SourceParams& p, const Detector& d, double s, double T) {
  return gf(p, d, s, T, 0).value();
}

namespace {

using cplx = std::complex<double>;

// log[ cosh(zT) + (z/lam + lam/z) sinh(zT) / 2 ] with Re z > 0.
cplx log_denominator_c(cplx z2, double lam, double T) {
  cplx z = std::sqrt(z2);
  cplx zp = z + lam;
  cplx rho = (z - lam) / zp;
  return z * T + std::log(zp * zp / (4.0 * lam * z)) + std::log(1.0 - rho * rho * std::exp(-2.0 * z * T));
}

}  // namespace

std::complex<double> gf_complex(const SourceParams& p, const Detector& d, std::complex<double> s, double T) {
  validate(p);
  check_time(T);
  const double eta = d.eta();
  return std::visit(
      [&](const auto& q) -> cplx {
        using S = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<S, Coherent>) {
          return std::exp(-eta * q.flux * T * s);
        } else if constexpr (std::is_same_v<S, Thermal>) {
          const double a = 2.0 * q.gamma;
          cplx z2 = a * a * (1.0 + 2.0 * eta * q.nbar * s);
          if (T == 0.0) return 1.0;
          return std::exp(a * T - log_denominator_c(z2, a, T));
        } else if constexpr (std::is_same_v<S, Dpo>) {
          const double l1 = q.lambda1(), l2 = q.lambda2();
          const double k = 2.0 * eta * q.gamma * q.gamma * q.r();
          if (T == 0.0) return 1.0;
          return std::exp(0.5 * (l1 + l2) * T -
                          0.5 * (log_denominator_c(l1 * l1 + k * s, l1, T) + log_denominator_c(l2 * l2 - k * s, l2, T)));
        } else {
          const double b = q.beta, om = q.rabi;
          if (!(om > 0.0)) throw ConfigError("rf generating function needs rabi > 0");
          Eigen::Matrix3cd m;
          m << -2.0 * b, 0.0, -om,
               2.0 * b * (1.0 - s * eta), 0.0, om,
               0.5 * om, -0.5 * om, -b;
          const double ree = om * om / (2.0 * om * om + 4.0 * b * b);
          Eigen::Vector3cd v(ree, 1.0 - ree, -(2.0 * b / om) * ree);
          Eigen::Matrix3cd e = (m * cplx(T)).exp();
          Eigen::Vector3cd y = e * v;
          return y(0) + y(1);
        }
      },
      p);
}

double gf_thermal_hd(const Thermal& p, const Detector& d, double s, double T) {
  return 1.0 / (1.0 + 2.0 * s * p.gamma * d.eta() * p.nbar * T);
}

double gf_dpo_hd(const Dpo& p, const Detector& d, double s, double T) {
  return 1.0 / std::sqrt(1.0 + 4.0 * s * d.eta() * p.gamma * p.nbar * T);
}

double gf_dpo_small(const Dpo& p, const Detector& d, double s, double T) {
  double x = s * d.eta();
  return (1.0 - 0.5 * p.nbar * x * x) * std::exp(p.gamma * p.nbar * T * (x * x - 2.0 * x));
}

}  // namespace photostat
