#include "photostat/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/random/normal_distribution.hpp>

#include "photostat/errors.hpp"
#include "photostat/rng.hpp"
#include "photostat/series.hpp"

namespace photostat {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

void EventRecord::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw DataFormatError("event record duration must be positive");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || times[i] > duration)
      throw DataFormatError("event " + std::to_string(i) + " lies outside [0, duration]");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw DataFormatError("event " + std::to_string(i) + " is not strictly ascending");
  }
}

double default_dt(const SourceParams& p) {
  if (auto* t = std::get_if<Thermal>(&p)) return 0.05 / (t->gamma * (1.0 + t->nbar));
  return 0.01 / characteristic_rate(p);
}

double default_burn_in(const SourceParams& p) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Coherent>) return 0.0;
        else if constexpr (std::is_same_v<T, Thermal>) return 10.0 / (2.0 * s.gamma);
        else if constexpr (std::is_same_v<T, Dpo>) return 20.0 / s.lambda1();
        else return 20.0 / s.beta;
      },
      p);
}

std::vector<double> dpo_fock_distribution(const Dpo& p, int nmax) {
  // Squeezed thermal state with quadrature variances 1/(2(1 -/+ r)):
  // sum_n p(n) z^n = 2 [((1+z) + 2V1(1-z)) ((1+z) + 2V2(1-z))]^{-1/2}.
  const double r = p.r();
  const double v1 = 0.5 / (1.0 - r), v2 = 0.5 / (1.0 + r);
  series::Series f1 = {1.0 + 2.0 * v1, 1.0 - 2.0 * v1};
  series::Series f2 = {1.0 + 2.0 * v2, 1.0 - 2.0 * v2};
  series::Series g = series::pow(series::mul(f1, f2, nmax), -0.5, nmax);
  for (double& x : g) x = std::max(0.0, 2.0 * x);
  return g;
}

int default_fock_max(const Dpo& p, double tol) {
  int m = std::max(64, static_cast<int>(40.0 * (p.nbar + 1.0)));
  for (int iter = 0; iter < 6; ++iter, m *= 2) {
    std::vector<double> pr = dpo_fock_distribution(p, m);
    if (pr[m] > 1e-3 * tol) continue;
    double tail = 0.0;
    for (int n = m; n >= 1; --n) {
      tail += pr[n];
      // Margin for post-jump conditional states, which carry heavier tails.
      if (tail >= tol) return n + n / 2 + 6;
    }
    return 6;
  }
  throw ConfigError("DPO Fock cutoff does not converge; nbar too large");
}

namespace {

std::string config_string(const SourceParams& p, double duration, const SimConfig& c, double dt, double burn,
                          int fock) {
  std::ostringstream os;
  os.precision(17);
  os << "source=" << source_name(p) << " duration=" << duration << " stream=" << c.stream << " dt=" << dt
     << " burn_in=" << burn << " fock_max=" << fock << " ode_tol=" << c.ode_tol;
  return os.str();
}

void sim_coherent(const Coherent& s, double duration, CounterRng& rng, std::vector<double>& out) {
  double t = 0.0;
  while (true) {
    t += rng.exponential() / s.flux;
    if (t >= duration) break;
    out.push_back(t);
  }
}

// Cox process with intensity 2 gamma |alpha|^2, alpha a stationary complex OU
// amplitude relaxing at 2 gamma; intensity linear between exact OU samples.
void sim_thermal(const Thermal& s, double duration, double dt, double burn, CounterRng& rng,
                 std::vector<double>& out) {
  boost::random::normal_distribution<double> normal;
  const double rho = std::exp(-2.0 * s.gamma * dt);
  const double sd0 = std::sqrt(0.5 * s.nbar);
  const double sd = std::sqrt(0.5 * s.nbar * (1.0 - rho * rho));
  double ar = sd0 * normal(rng), ai = sd0 * normal(rng);
  double i0 = 2.0 * s.gamma * (ar * ar + ai * ai);
  double need = rng.exponential();
  const double t_end = duration + burn;
  const long steps = static_cast<long>(std::ceil(t_end / dt));
  for (long k = 0; k < steps; ++k) {
    ar = rho * ar + sd * normal(rng);
    ai = rho * ai + sd * normal(rng);
    const double i1 = 2.0 * s.gamma * (ar * ar + ai * ai);
    const double t0 = k * dt;
    const double slope = (i1 - i0) / dt;
    double done = 0.0;  // time into the step already consumed
    double lam_done = 0.0;
    const double step_lam = 0.5 * (i0 + i1) * dt;
    while (need <= step_lam - lam_done) {
      // Solve i0 x + slope x^2 / 2 = lam_done + need for x in [done, dt].
      const double target = lam_done + need;
      double x;
      if (std::abs(slope) * dt < 1e-12 * std::max(i0, 1e-300)) {
        x = target / i0;
      } else {
        const double disc = i0 * i0 + 2.0 * slope * target;
        x = 2.0 * target / (i0 + std::sqrt(std::max(disc, 0.0)));
      }
      x = std::clamp(x, done, dt);
      const double t = t0 + x - burn;
      if (t >= 0.0 && t < duration && (out.empty() || t > out.back())) out.push_back(t);
      done = x;
      lam_done = target;
      need = rng.exponential();
    }
    need -= step_lam - lam_done;
    i0 = i1;
  }
}

// Jump-time search by the norm-threshold method using exact propagators
// U_j = exp(-i H_eff 2^j h0) for j in [jmin, jmax]; 2^jmin resolves the jump time
// to the requested relative tolerance.
class Trajectory {
 public:
  Trajectory(const CMat& heff, double h0, double tol) : h0_(h0) {
    kMin = std::clamp(static_cast<int>(std::floor(std::log2(tol))), -45, -4);
    for (int j = kMin; j <= kMax; ++j) {
      CMat a = (cd(0.0, -1.0) * std::ldexp(h0, j)) * heff;
      ladder_.push_back(a.exp());
    }
  }

  // Evolves psi without jumps until its squared norm reaches u; returns the elapsed time.
  double advance(CVec& psi, double u, double t_limit) const {
    double t = 0.0;
    int j = 0;
    CVec trial;
    while (true) {
      trial = at(j) * psi;
      if (trial.squaredNorm() > u) {
        psi = trial;
        t += std::ldexp(h0_, j);
        if (t > t_limit) return t;
        if (j < kMax) ++j;
      } else {
        break;
      }
    }
    for (int k = j - 1; k >= kMin; --k) {
      trial = at(k) * psi;
      if (trial.squaredNorm() > u) {
        psi = trial;
        t += std::ldexp(h0_, k);
      }
    }
    return t + std::ldexp(h0_, kMin - 1);
  }

 private:
  int kMin = -26;
  static constexpr int kMax = 40;
  const CMat& at(int j) const { return ladder_[j - kMin]; }
  double h0_;
  std::vector<CMat> ladder_;
};

void check_tail(const CVec& psi, const char* what) {
  const int n = static_cast<int>(psi.size());
  double tot = psi.squaredNorm();
  double top = std::norm(psi[n - 1]);
  if (top > 1e-6 * tot) throw NumericalError(std::string(what) + ": Fock truncation exceeded");
}

void sim_dpo(const Dpo& s, double duration, double burn, int fock, double tol, CounterRng& rng,
             std::vector<double>& out) {
  const int d = fock + 1;
  const double kappa = s.gamma * s.r();
  CMat a = CMat::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  CMat ad = a.adjoint();
  // H = i (kappa/2) (a^dag^2 - a^2), decay 2 gamma on the amplitude.
  CMat h = cd(0.0, 0.5 * kappa) * (ad * ad - a * a);
  CMat heff = h - cd(0.0, s.gamma) * (ad * a);
  Trajectory traj(heff, 1.0 / (2.0 * s.gamma), tol);
  CVec psi = CVec::Zero(d);
  psi[0] = 1.0;
  double t = -burn;
  while (true) {
    double u = rng.uniform();
    double remaining = duration - t;
    t += traj.advance(psi, u, remaining);
    if (t >= duration) break;
    check_tail(psi, "dpo trajectory");
    CVec next = a * psi;
    double nn = next.norm();
    if (!(nn > 0.0)) throw NumericalError("dpo trajectory: jump from vacuum");
    psi = next / nn;
    if (t >= 0.0 && (out.empty() || t > out.back())) out.push_back(t);
  }
}

void sim_rf(const Rf& s, double duration, double burn, double tol, CounterRng& rng, std::vector<double>& out) {
  // Basis |g>, |e>; H = (Omega/2) sigma_x, jump sqrt(2 beta) sigma_-.
  CMat heff(2, 2);
  heff << cd(0.0), cd(0.5 * s.rabi), cd(0.5 * s.rabi), cd(0.0, -s.beta);
  Trajectory traj(heff, 1.0 / std::max(s.beta, s.rabi), tol);
  CVec psi(2);
  double t = -burn;
  while (true) {
    psi << 1.0, 0.0;
    double u = rng.uniform();
    t += traj.advance(psi, u, duration - t);
    if (t >= duration) break;
    if (t >= 0.0 && (out.empty() || t > out.back())) out.push_back(t);
  }
}

}  // namespace

EventRecord simulate(const SourceParams& p, double duration, const SimConfig& cfg) {
  validate(p);
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("duration must be positive");
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(p);
  const double burn = cfg.burn_in >= 0.0 ? cfg.burn_in : default_burn_in(p);
  if (!(cfg.ode_tol > 0.0)) throw ConfigError("ode_tol must be positive");
  int fock = 0;
  if (auto* dp = std::get_if<Dpo>(&p)) fock = cfg.fock_max > 0 ? cfg.fock_max : default_fock_max(*dp);
  if (std::holds_alternative<Thermal>(p) && dt > 0.5 / (std::get<Thermal>(p).gamma))
    throw ConfigError("thermal step too coarse for the field correlation time");
  CounterRng rng(cfg.seed, cfg.stream);
  EventRecord rec;
  rec.duration = duration;
  rec.source = source_name(p);
  rec.seed = cfg.seed;
  rec.config = config_string(p, duration, cfg, dt, burn, fock);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Coherent>) sim_coherent(s, duration, rng, rec.times);
        else if constexpr (std::is_same_v<T, Thermal>) sim_thermal(s, duration, dt, burn, rng, rec.times);
        else if constexpr (std::is_same_v<T, Dpo>) sim_dpo(s, duration, burn, fock, cfg.ode_tol, rng, rec.times);
        else sim_rf(s, duration, burn, cfg.ode_tol, rng, rec.times);
      },
      p);
  return rec;
}

std::vector<EventRecord> simulate_batches(const SourceParams& p, double duration, const SimConfig& cfg, int batches,
                                          int threads) {
  if (batches < 1) throw ConfigError("batches must be >= 1");
  threads = std::clamp(threads, 1, batches);
  std::vector<EventRecord> out(batches);
  std::vector<std::exception_ptr> errors(batches);
  auto work = [&](int worker) {
    for (int b = worker; b < batches; b += threads) {
      try {
        SimConfig c = cfg;
        c.stream = cfg.stream + static_cast<std::uint64_t>(b);
        out[b] = simulate(p, duration, c);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

EventRecord thin(const EventRecord& rec, double eta, std::uint64_t seed) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in (0, 1]");
  EventRecord out = rec;
  if (eta == 1.0) return out;
  out.times.clear();
  CounterRng rng(seed, 0x7468696eull);
  for (double t : rec.times)
    if (rng.uniform() < eta) out.times.push_back(t);
  std::ostringstream os;
  os.precision(17);
  os << rec.config << " thin_eta=" << eta << " thin_seed=" << seed;
  out.config = os.str();
  return out;
}

EventRecord slice(const EventRecord& rec, double t0, double t1) {
  if (!(t1 > t0)) throw ConfigError("slice bounds must satisfy t1 > t0");
  EventRecord out;
  out.source = rec.source;
  out.seed = rec.seed;
  out.config = rec.config;
  out.duration = std::min(t1, rec.duration) - std::max(t0, 0.0);
  auto lo = std::lower_bound(rec.times.begin(), rec.times.end(), t0);
  auto hi = std::lower_bound(rec.times.begin(), rec.times.end(), t1);
  for (auto it = lo; it != hi; ++it) out.times.push_back(*it - std::max(t0, 0.0));
  return out;
}

}  // namespace photostat
