#include "photostat/curves.hpp"

#include <cmath>

#include "photostat/closedform.hpp"
#include "photostat/errors.hpp"
#include "photostat/estimators.hpp"
#include "photostat/exact.hpp"
#include "photostat/rng.hpp"

namespace photostat {

std::vector<double> linear_grid(double tmax, int points) {
  if (!(tmax > 0.0) || points < 2) throw ConfigError("grid needs tmax > 0 and at least 2 points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = tmax * i / (points - 1);
  return g;
}

std::vector<std::string> closed_regimes(SourceKind s) {
  switch (s) {
    case SourceKind::Coherent: return {"exact-n"};
    case SourceKind::Thermal: return {"small", "large"};
    case SourceKind::Dpo: return {"small", "large", "nonunit"};
    case SourceKind::Rf: return {"exact-n", "special", "equal", "shorttime", "strongfield"};
  }
  return {};
}

double closed_value(const SourceParams& p, const Detector& d, const DistRequest& req, double T) {
  using namespace closedform;
  const DistKind k = req.kind;
  const int n = req.n;
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Coherent>) {
          if (req.regime != "exact-n") throw ConfigError("coherent closed forms use regime 'exact-n'");
          return k == DistKind::Photocount ? coherent_photocount(n, T, s.flux, d.eta())
                                           : coherent_wait(n, T, s.flux, d.eta());
        } else if constexpr (std::is_same_v<S, Thermal>) {
          return thermal_approx(parse_regime(req.regime), k, n, T, s, d);
        } else if constexpr (std::is_same_v<S, Dpo>) {
          return dpo_approx(parse_regime(req.regime), k, n, T, s, d);
        } else {
          if (k == DistKind::Photocount) throw ConfigError("resonance fluorescence has no closed photocount form");
          const bool w = k == DistKind::ConditionalWait;
          const std::string& g = req.regime;
          if (g == "exact-n") return w ? rf_wn(n, T, s, d) : rf_pn(n, T, s, d);
          if (g == "special") {
            if (!w || d.eta() != 1.0) throw ConfigError("rf 'special' forms give w_1..w_3 at eta = 1");
            return rf_wn_special(n, T, s);
          }
          if (g == "equal") {
            if (std::abs(s.rabi - s.beta) > 1e-12 * s.beta) throw ConfigError("rf 'equal' forms need rabi = beta");
            if (d.eta() == 1.0) return w ? rf_wn_equal_unit(n, T, s.beta) : rf_pn_equal_unit(n, T, s.beta);
            if (n != 1) throw ConfigError("rf 'equal' forms at eta < 1 exist for n = 1 only");
            return w ? rf_w1_equal(T, s.beta, d.eta()) : rf_p1_equal(T, s.beta, d.eta());
          }
          if (g == "shorttime" || g == "strongfield") {
            if (!w || d.eta() != 1.0) throw ConfigError("rf limit forms give w_n at eta = 1");
            return g == "shorttime" ? rf_wn_shorttime(n, T, s) : rf_wn_strongfield(n, T, s);
          }
          throw ConfigError("unknown rf regime '" + g + "'");
        }
      },
      p);
}

std::vector<EventRecord> simulate_detected(const SourceParams& p, const Detector& d, const McOptions& mc) {
  if (!(mc.events >= 1.0)) throw ConfigError("events must be >= 1");
  const double duration = mc.events / (d.eta() * mean_flux(p)) / mc.batches;
  SimConfig cfg = mc.sim;
  cfg.seed = mc.seed;
  std::vector<EventRecord> recs = simulate_batches(p, duration, cfg, mc.batches, mc.threads);
  if (d.eta() < 1.0)
    for (std::size_t b = 0; b < recs.size(); ++b) recs[b] = thin(recs[b], d.eta(), derive_stream(mc.seed, 1000 + b));
  return recs;
}

Curve sample_curve(const SourceParams& p, const Detector& d, const DistRequest& req, const std::vector<double>& grid,
                   const McOptions& mc) {
  validate(p);
  req.validate();
  if (grid.empty()) throw ConfigError("empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) throw ConfigError("grid values must be finite and >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("grid must be strictly ascending");
  }
  Curve c;
  c.meta.params = p;
  c.meta.detector = d;
  c.meta.request = req;
  switch (req.engine) {
    case EngineKind::Exact:
      c.grid = grid;
      for (double T : grid) {
        double v = 0.0;
        if (req.kind == DistKind::Photocount) v = photocount(p, d, req.n, T);
        else if (req.kind == DistKind::UnconditionalWait) v = pn_wait(p, d, req.n, T);
        else v = wn_wait(p, d, req.n, T);
        c.values.push_back(v);
      }
      break;
    case EngineKind::ClosedForm:
      c.grid = grid;
      for (double T : grid) c.values.push_back(closed_value(p, d, req, T));
      break;
    case EngineKind::MonteCarlo: {
      std::vector<EventRecord> recs = simulate_detected(p, d, mc);
      std::size_t events = 0;
      for (const auto& r : recs) events += r.size();
      std::size_t starts = mc.n_starts ? mc.n_starts : std::max<std::size_t>(1, events / 4);
      c.meta.seed = mc.seed;
      c.meta.config = recs.front().config;
      if (req.kind == DistKind::Photocount) {
        c.grid = grid;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          if (grid[i] == 0.0) {
            c.values.push_back(req.n == 0 ? 1.0 : 0.0);
            c.stderr_values.push_back(0.0);
            continue;
          }
          PhotocountEstimate e = estimate_photocount(recs, grid[i], req.n, starts, derive_stream(mc.seed, 2000 + i));
          c.values.push_back(e.p[req.n]);
          c.stderr_values.push_back(e.stderr_values[req.n]);
        }
      } else {
        if (grid.size() < 2) throw ConfigError("Monte-Carlo histograms need at least two edges");
        Curve e = req.kind == DistKind::ConditionalWait
                      ? estimate_wn(recs, req.n, grid)
                      : estimate_pn(recs, req.n, grid, starts, derive_stream(mc.seed, 3000));
        c.grid = e.grid;
        c.values = e.values;
        c.stderr_values = e.stderr_values;
      }
      return c;
    }
  }
  clamp_curve(c, "sample_curve");
  return c;
}

}  // namespace photostat
