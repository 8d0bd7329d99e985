#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "figures.hpp"
#include "photostat/curves.hpp"
#include "photostat/errors.hpp"
#include "photostat/estimators.hpp"
#include "photostat/exact.hpp"
#include "photostat/io.hpp"
#include "photostat/mcsim.hpp"
#include "photostat/rng.hpp"

using namespace photostat;
using io::json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kNumerical = 3, kFormat = 4 };

struct SourceArgs {
  std::string source;
  double flux = 1.0, gamma = 1.0, nbar = 0.01, beta = 1.0, rabi = 1.0, eta = 1.0;

  void add(CLI::App* app) {
    app->add_option("--source", source, "coherent | thermal | dpo | rf")->required();
    app->add_option("--flux", flux, "coherent photon flux");
    app->add_option("--gamma", gamma, "cavity field decay rate");
    app->add_option("--nbar", nbar, "mean cavity photon number");
    app->add_option("--beta", beta, "half the Einstein A coefficient");
    app->add_option("--rabi", rabi, "Rabi frequency");
    app->add_option("--eta", eta, "detector quantum efficiency");
  }

  SourceParams params() const {
    SourceParams p;
    switch (parse_source_kind(source)) {
      case SourceKind::Coherent: p = Coherent{flux}; break;
      case SourceKind::Thermal: p = Thermal{gamma, nbar}; break;
      case SourceKind::Dpo: p = Dpo{gamma, nbar}; break;
      case SourceKind::Rf: p = Rf{beta, rabi}; break;
    }
    validate(p);
    return p;
  }
};

struct McArgs {
  std::uint64_t seed = 1;
  double events = 1e5;
  int batches = 1, threads = 1;
  std::size_t starts = 0;
  void add(CLI::App* app) {
    app->add_option("--seed", seed, "master seed");
    app->add_option("--events", events, "expected detected events (mc engine)");
    app->add_option("--batches", batches, "independent trajectory streams");
    app->add_option("--threads", threads, "worker threads");
    app->add_option("--starts", starts, "random start times for P_n and photocount estimates");
  }
  McOptions options() const {
    McOptions m;
    m.seed = seed;
    m.events = events;
    m.batches = batches;
    m.threads = threads;
    m.n_starts = starts;
    return m;
  }
};

DistRequest parse_engine(const std::string& engine, const std::string& kind, int n) {
  DistRequest r;
  r.kind = parse_kind_tag(kind);
  r.n = n;
  if (engine == "exact") {
    r.engine = EngineKind::Exact;
  } else if (engine == "mc") {
    r.engine = EngineKind::MonteCarlo;
  } else if (engine.rfind("closed:", 0) == 0) {
    r.engine = EngineKind::ClosedForm;
    r.regime = engine.substr(7);
  } else {
    throw ConfigError("unknown engine '" + engine + "' (expected exact, closed:<regime> or mc)");
  }
  r.validate();
  return r;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") std::cout << text;
  else io::atomic_write(out, text);
}

std::vector<double> grid_for(const DistRequest& r, double tmax, int points) {
  if (r.engine == EngineKind::MonteCarlo && r.kind != DistKind::Photocount) return uniform_edges(tmax, points - 1);
  return linear_grid(tmax, points);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-counting statistics: photocounts and wait-time densities"};
  app.require_subcommand(1);

  // curve
  SourceArgs cs;
  McArgs cm;
  std::string c_kind = "w", c_engine = "exact", c_out, c_format = "csv";
  int c_n = 1, c_points = 400;
  double c_tmax = 10.0;
  auto* curve = app.add_subcommand("curve", "sample one distribution on a grid");
  cs.add(curve);
  cm.add(curve);
  curve->add_option("--kind", c_kind, "p | P | w");
  curve->add_option("--n", c_n, "count or wait-time order");
  curve->add_option("--tmax", c_tmax, "grid end");
  curve->add_option("--points", c_points, "grid points (mc: histogram edges)");
  curve->add_option("--engine", c_engine, "exact | closed:<regime> | mc");
  curve->add_option("--out", c_out, "output path (default stdout)");
  curve->add_option("--format", c_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // figure
  int f_index = 0, f_points = 400;
  std::string f_outdir = ".";
  auto* figure = app.add_subcommand("figure", "reproduce a figure's curve set");
  figure->add_option("index", f_index, "figure number 1..8")->required();
  figure->add_option("--outdir", f_outdir, "output directory");
  figure->add_option("--points", f_points, "points per curve");

  // simulate
  SourceArgs ss;
  std::uint64_t s_seed = 1;
  double s_duration = 0.0, s_dt = 0.0, s_burn = -1.0, s_tol = 1e-10;
  int s_fock = 0;
  std::string s_out;
  auto* sim = app.add_subcommand("simulate", "generate a detection timestamp record");
  ss.add(sim);
  sim->add_option("--duration", s_duration, "observation time")->required();
  sim->add_option("--seed", s_seed, "seed");
  sim->add_option("--dt", s_dt, "thermal intensity step");
  sim->add_option("--burn-in", s_burn, "discarded initial time");
  sim->add_option("--fock-max", s_fock, "DPO Fock cutoff");
  sim->add_option("--ode-tol", s_tol, "relative jump-time resolution");
  sim->add_option("--out", s_out, "output path (default stdout)");

  // estimate
  std::string e_events, e_kind = "w", e_out, e_format = "csv";
  int e_n = 1, e_bins = 0, e_nmax = 10;
  double e_tmax = 0.0, e_window = 0.0;
  std::size_t e_starts = 0;
  std::uint64_t e_seed = 1;
  bool e_moments = false;
  auto* est = app.add_subcommand("estimate", "estimate distributions from a timestamp file");
  est->add_option("--events", e_events, "timestamp file")->required();
  est->add_option("--kind", e_kind, "p | P | w");
  est->add_option("--n", e_n, "wait-time order");
  est->add_option("--tmax", e_tmax, "histogram end (default from the mean gap)");
  est->add_option("--bins", e_bins, "histogram bins (default max(50, sqrt(events)/10))");
  est->add_option("--starts", e_starts, "random starts (default events/4)");
  est->add_option("--seed", e_seed, "seed for random starts");
  est->add_option("--window", e_window, "photocount window length");
  est->add_option("--nmax", e_nmax, "largest photocount reported");
  est->add_flag("--moments", e_moments, "report wait-time mean and variance");
  est->add_option("--out", e_out, "output path (default stdout)");
  est->add_option("--format", e_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // compare
  SourceArgs ps;
  McArgs pm;
  std::string p_kind = "w", p_a = "exact", p_b, p_out, p_diff;
  int p_n = 1, p_points = 200;
  double p_tmax = 10.0, p_rel = 1e-6, p_frac = 0.95;
  auto* cmp = app.add_subcommand("compare", "compare two engines on one request");
  ps.add(cmp);
  pm.add(cmp);
  cmp->add_option("--kind", p_kind, "p | P | w");
  cmp->add_option("--n", p_n, "order");
  cmp->add_option("--tmax", p_tmax, "grid end");
  cmp->add_option("--points", p_points, "grid points");
  cmp->add_option("--engine-a", p_a, "first engine");
  cmp->add_option("--engine-b", p_b, "second engine")->required();
  cmp->add_option("--rel-tol", p_rel, "max relative error where density > 1% of peak");
  cmp->add_option("--min-fraction", p_frac, "required fraction of bins within 2 stderr (mc)");
  cmp->add_option("--out", p_out, "verdict path (default stdout)");
  cmp->add_option("--diff-out", p_diff, "pointwise difference CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*curve) {
      SourceParams p = cs.params();
      Detector d(cs.eta);
      DistRequest r = parse_engine(c_engine, c_kind, c_n);
      Curve c = sample_curve(p, d, r, grid_for(r, c_tmax, c_points), cm.options());
      emit(c_out, c_format == "csv" ? io::curve_csv(c) : io::curve_to_json(c).dump(2) + "\n");
    } else if (*figure) {
      json m = cli::run_figure(f_index, f_outdir, f_points);
      for (const auto& c : m["checks"])
        std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << "\n";
      std::cout << m["series"].size() << " curves written to " << f_outdir << "\n";
    } else if (*sim) {
      SourceParams p = ss.params();
      SimConfig cfg;
      cfg.seed = s_seed;
      cfg.dt = s_dt;
      cfg.burn_in = s_burn;
      cfg.fock_max = s_fock;
      cfg.ode_tol = s_tol;
      EventRecord rec = simulate(p, s_duration, cfg);
      rec = thin(rec, ss.eta, derive_stream(s_seed, 1000));
      emit(s_out, io::events_text(rec));
    } else if (*est) {
      EventRecord rec = io::read_events_file(e_events);
      rec.validate();
      if (rec.size() < 2) throw ConfigError("record needs at least two events");
      const double gap = rec.duration / rec.size();
      if (e_moments) {
        MomentSummary m = estimate_wait_moments(rec, e_n);
        json j = {{"source", rec.source}, {"n", e_n}, {"events", rec.size()},
                  {"mean", m.mean}, {"mean_err", m.mean_err}, {"variance", m.variance},
                  {"variance_err", m.variance_err}};
        emit(e_out, j.dump(2) + "\n");
      } else {
        DistRequest r = parse_engine("mc", e_kind, e_n);
        std::size_t starts = e_starts ? e_starts : std::max<std::size_t>(1, rec.size() / 4);
        Curve c;
        c.meta.request = r;
        c.meta.seed = e_seed;
        c.meta.config = rec.config;
        if (r.kind == DistKind::Photocount) {
          double window = e_window > 0.0 ? e_window : gap;
          PhotocountEstimate pe = estimate_photocount(rec, window, e_nmax, starts, e_seed);
          for (int k = 0; k <= e_nmax; ++k) c.grid.push_back(k);
          c.values = pe.p;
          c.stderr_values = pe.stderr_values;
          c.meta.config += " window=" + io::format_double(window);
        } else {
          double tmax = e_tmax > 0.0 ? e_tmax : (e_n + 3.0 + 3.0 * std::sqrt(e_n)) * gap;
          int bins = e_bins > 0 ? e_bins : default_bin_count(rec.size());
          std::vector<double> edges = uniform_edges(tmax, bins);
          Curve e = r.kind == DistKind::ConditionalWait ? estimate_wn(rec, e_n, edges)
                                                        : estimate_pn(rec, e_n, edges, starts, e_seed);
          c.grid = e.grid;
          c.values = e.values;
          c.stderr_values = e.stderr_values;
        }
        json meta = {{"source", rec.source.empty() ? "external" : rec.source},
                     {"params", {{"rate", rec.rate()}, {"duration", rec.duration}, {"events", rec.size()}}},
                     {"eta", 1.0}, {"kind", e_kind}, {"n", e_n}, {"engine", "mc"}, {"seed", e_seed},
                     {"config", c.meta.config}};
        if (e_format == "csv") {
          emit(e_out, io::curve_csv(c, meta));
        } else {
          json j = io::curve_to_json(c);
          j.update(meta);
          emit(e_out, j.dump(2) + "\n");
        }
      }
    } else if (*cmp) {
      SourceParams p = ps.params();
      Detector d(ps.eta);
      DistRequest ra = parse_engine(p_a, p_kind, p_n);
      DistRequest rb = parse_engine(p_b, p_kind, p_n);
      if (ra.engine == EngineKind::MonteCarlo) std::swap(ra, rb);
      if (ra.engine == EngineKind::MonteCarlo) throw ConfigError("at most one engine may be mc");
      json verdict = {{"source", source_name(p)}, {"params", io::params_to_json(p)}, {"eta", d.eta()},
                      {"kind", p_kind}, {"n", p_n}, {"engine", {io::engine_tag(ra), io::engine_tag(rb)}},
                      {"seed", pm.seed}};
      std::ostringstream diff;
      diff << "T,a,b,difference\n";
      bool pass = true;
      if (rb.engine == EngineKind::MonteCarlo) {
        Curve b = sample_curve(p, d, rb, grid_for(rb, p_tmax, p_points), pm.options());
        std::vector<double> edges = grid_for(rb, p_tmax, p_points);
        std::vector<double> ref;
        if (rb.kind == DistKind::Photocount) {
          Curve a = sample_curve(p, d, ra, b.grid);
          ref = a.values;
        } else {
          ref = bin_average([&](double T) { return sample_curve(p, d, ra, {T}).values[0]; }, edges);
        }
        Concordance cc = concordance(b, ref, 2.0);
        for (std::size_t i = 0; i < b.grid.size(); ++i)
          diff << io::format_double(b.grid[i]) << ',' << io::format_double(ref[i]) << ','
               << io::format_double(b.values[i]) << ',' << io::format_double(b.values[i] - ref[i]) << '\n';
        pass = cc.fraction() >= p_frac;
        verdict["fraction_within_2sigma"] = cc.fraction();
        verdict["bins"] = cc.bins;
        verdict["tolerances"] = {{"min_fraction", p_frac}, {"sigma", 2.0}};
      } else {
        std::vector<double> grid = linear_grid(p_tmax, p_points);
        Curve a = sample_curve(p, d, ra, grid);
        Curve b = sample_curve(p, d, rb, grid);
        double pk = a.peak(), worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          diff << io::format_double(grid[i]) << ',' << io::format_double(a.values[i]) << ','
               << io::format_double(b.values[i]) << ',' << io::format_double(b.values[i] - a.values[i]) << '\n';
          if (a.values[i] > 0.01 * pk) worst = std::max(worst, std::abs(b.values[i] / a.values[i] - 1.0));
        }
        pass = worst <= p_rel;
        verdict["max_rel_err"] = worst;
        verdict["tolerances"] = {{"rel", p_rel}, {"peak_fraction", 0.01}};
      }
      verdict["verdict"] = pass ? "PASS" : "FAIL";
      if (!p_diff.empty()) io::atomic_write(p_diff, diff.str());
      emit(p_out, verdict.dump(2) + "\n");
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const DataFormatError& e) {
    std::cerr << "data format error: " << e.what() << "\n";
    return kFormat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}
