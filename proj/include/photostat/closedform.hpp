#pragma once

#include <array>
#include <complex>
#include <string>

#include "photostat/expseries.hpp"
#include "photostat/model.hpp"

namespace photostat::closedform {

enum class Regime { SmallNbar, LargeNbar, SmallNbarNonUnit };

Regime parse_regime(const std::string& tag);
std::string regime_tag(Regime r);

// Gamma density of shape n and rate eta*flux (P_n = w_n for coherent light).
double coherent_wait(int n, double T, double flux, double eta);
double coherent_photocount(int n, double T, double flux, double eta);

// kind selects p(n,T), P_n(T) or w_n(T).
double thermal_approx(Regime r, DistKind kind, int n, double T, const Thermal& p, const Detector& d);
double dpo_approx(Regime r, DistKind kind, int n, double T, const Dpo& p, const Detector& d);

// Most probable wait-time in the regime where the closed formula holds.
double most_probable_wait(SourceKind source, DistKind kind, int n, double flux, double eta);

// Auxiliary quantities of the resonance-fluorescence Laplace-domain factorization.
struct RfAux {
  double beta = 0.0, rabi = 0.0, eta = 1.0;
  double omega2 = 0.0;  // beta^2 - rabi^2
  double C = 0.0;       // 1 / (rabi^2 + 2 beta^2)
  double mu = 0.0;      // (1 - eta)^(1/3)
  double K = 0.0;       // beta * eta * rabi^2
  // Depressed cubic u^3 + p u + q with s = beta (u - 1).
  double p = 0.0, q = 0.0;
  double discriminant = 0.0;  // 108 p^3 + 729 q^2
  bool single_real_root = true;
  double B = 0.0, delta1 = 0.0, delta2 = 0.0, R = 0.0, theta1 = 0.0;
  std::array<std::complex<double>, 3> roots{};  // roots[0] real

  double Cn(int n) const;
  // Unit-efficiency residue coefficients with the factor q^{-k} removed.
  double D0(int n, int k) const;
  double D(int n, int k) const;
  double J0(int n, int k) const;
  double J(int n, int k, double T) const;
  double phi(int n, int k, int pidx) const;
  // Relative residual of the factorization against the cubic's coefficients.
  double factorization_residual() const;
};

RfAux rf_aux(const Rf& p, const Detector& d);

enum class RfRoute { UnitResidue, UnitSeries, JForm, RealResidue, PairSeries, Auto };

// w_n as an exponential series valid at T (series routes truncate for T).
ExpSeries rf_wn_series(int n, double T, const RfAux& aux, RfRoute route);
RfRoute rf_select_route(int n, double T, const RfAux& aux);

double rf_wn(int n, double T, const Rf& p, const Detector& d, RfRoute route = RfRoute::Auto);
// P_n from C w'' + 3 beta C w' + w with analytic derivatives.
double rf_pn(int n, double T, const Rf& p, const Detector& d, RfRoute route = RfRoute::Auto);

// Unit-efficiency n = 1..3 specializations.
double rf_wn_special(int n, double T, const Rf& p);
// rabi = beta, unit efficiency: gamma(3n, beta) and its unconditional partner.
double rf_wn_equal_unit(int n, double T, double beta);
double rf_pn_equal_unit(int n, double T, double beta);
// rabi = beta, eta < 1, n = 1.
double rf_w1_equal(double T, double beta, double eta);
double rf_p1_equal(double T, double beta, double eta);

double rf_wn_shorttime(int n, double T, const Rf& p);
double rf_wn_strongfield(int n, double T, const Rf& p);

// Moments from the closed expressions.
MomentSummary rf_moments(int n, const Rf& p, const Detector& d, DistKind which);
// Moments from derivatives of the Laplace transform at s = 0.
MomentSummary rf_moments_laplace(int n, const Rf& p, const Detector& d, DistKind which);

// Laplace transforms of w_n and P_n at complex s.
std::complex<double> rf_wn_laplace(int n, std::complex<double> s, const Rf& p, const Detector& d);
std::complex<double> rf_pn_laplace(int n, std::complex<double> s, const Rf& p, const Detector& d);

}  // namespace photostat::closedform
