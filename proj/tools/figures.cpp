#include "figures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "photostat/closedform.hpp"
#include "photostat/curves.hpp"
#include "photostat/errors.hpp"

namespace photostat::cli {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Dense points on [0, knee], the rest on [knee, tmax].
std::vector<double> two_scale_grid(double knee, double tmax, int points) {
  int dense = points / 2;
  std::vector<double> g;
  for (int i = 0; i < dense; ++i) g.push_back(knee * i / dense);
  int rest = points - dense;
  for (int i = 0; i < rest; ++i) g.push_back(knee + (tmax - knee) * i / (rest - 1));
  return g;
}

DistRequest req(DistKind k, int n, EngineKind e, const std::string& regime = "") {
  DistRequest r;
  r.kind = k;
  r.n = n;
  r.engine = e;
  r.regime = regime;
  return r;
}

std::string kind_name(DistKind k) { return k == DistKind::ConditionalWait ? "w" : "P"; }

void add_pair(std::vector<SeriesSpec>& out, const std::string& fig, const SourceParams& p, double eta,
              const std::string& regime, const std::string& tag, int nmax, const std::vector<double>& grid) {
  for (DistKind k : {DistKind::UnconditionalWait, DistKind::ConditionalWait}) {
    for (int n = 1; n <= nmax; ++n) {
      std::string base = fig + "_" + kind_name(k) + std::to_string(n) + tag;
      out.push_back({base + "_exact", p, eta, req(k, n, EngineKind::Exact), grid});
      out.push_back({base + "_approx", p, eta, req(k, n, EngineKind::ClosedForm, regime), grid});
    }
  }
}

const Curve& find(const std::vector<SeriesSpec>& specs, const std::vector<Curve>& curves, const std::string& name) {
  for (std::size_t i = 0; i < specs.size(); ++i)
    if (specs[i].name == name) return curves[i];
  throw ConfigError("figure series '" + name + "' missing");
}

double interp(const Curve& c, double T) {
  auto it = std::lower_bound(c.grid.begin(), c.grid.end(), T);
  if (it == c.grid.begin()) return c.values.front();
  if (it == c.grid.end()) return c.values.back();
  std::size_t i = it - c.grid.begin();
  double f = (T - c.grid[i - 1]) / (c.grid[i] - c.grid[i - 1]);
  return c.values[i - 1] + f * (c.values[i] - c.values[i - 1]);
}

// Relative depth (max - min) / max of the first interior maximum and the minimum after it.
double first_modulation_depth(const Curve& c) {
  const auto& v = c.values;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) {
      for (std::size_t j = i + 1; j + 1 < v.size(); ++j)
        if (v[j] < v[j - 1] && v[j] <= v[j + 1]) return (v[i] - v[j]) / v[i];
      return 0.0;
    }
  }
  return 0.0;
}

double argmax(const Curve& c) {
  return c.grid[std::max_element(c.values.begin(), c.values.end()) - c.values.begin()];
}

}  // namespace

std::vector<SeriesSpec> figure_series(int index, int points) {
  if (points < 20) throw ConfigError("figures need at least 20 points per curve");
  std::vector<SeriesSpec> out;
  switch (index) {
    case 1:
      add_pair(out, "fig1", Thermal{1.0, 0.01}, 1.0, "small", "", 3, two_scale_grid(5.0, 400.0, points));
      break;
    case 2:
      add_pair(out, "fig2", Thermal{1.0, 10.0}, 1.0, "large", "", 3, linear_grid(0.5, points));
      break;
    case 3:
      add_pair(out, "fig3", Dpo{1.0, 0.01}, 1.0, "small", "", 3, two_scale_grid(5.0, 400.0, points));
      break;
    case 4:
      add_pair(out, "fig4", Dpo{1.0, 10.0}, 1.0, "large", "", 3, linear_grid(0.5, points));
      break;
    case 5:
      for (double eta : {1.0, 0.5, 0.1}) {
        double flux = eta * 0.02;
        std::string tag = "_eta" + io::format_double(eta);
        add_pair(out, "fig5", Dpo{1.0, 0.01}, eta, "nonunit", tag, 2, two_scale_grid(5.0, 8.0 / flux, points));
      }
      break;
    case 6: {
      for (double ratio : {0.2 * kSqrt2, 10.0 * kSqrt2}) {
        Rf p{1.0, ratio};
        std::string tag = ratio < 1.0 ? "_weak" : "_strong";
        double tmax = ratio < 1.0 ? 200.0 : 10.0;
        std::vector<double> grid = linear_grid(tmax, points);
        for (DistKind k : {DistKind::ConditionalWait, DistKind::UnconditionalWait})
          for (int n = 1; n <= 3; ++n)
            out.push_back({"fig6_" + kind_name(k) + std::to_string(n) + tag, p, 1.0,
                           req(k, n, EngineKind::ClosedForm, "exact-n"), grid});
        if (ratio > 1.0)
          for (int n = 1; n <= 3; ++n)
            out.push_back({"fig6_w" + std::to_string(n) + tag + "_strongfield", p, 1.0,
                           req(DistKind::ConditionalWait, n, EngineKind::ClosedForm, "strongfield"), grid});
      }
      break;
    }
    case 7: {
      std::vector<double> grid = linear_grid(25.0, points);
      for (DistKind k : {DistKind::ConditionalWait, DistKind::UnconditionalWait})
        for (int n = 1; n <= 3; ++n)
          out.push_back({"fig7_" + kind_name(k) + std::to_string(n), Rf{1.0, 1.0}, 1.0,
                         req(k, n, EngineKind::ClosedForm, "equal"), grid});
      break;
    }
    case 8: {
      Rf p{1.0, 5.0 * kSqrt2};
      std::vector<double> grid = linear_grid(30.0, points);
      for (double eta : {1.0, 0.5, 0.1}) {
        std::string tag = "_eta" + io::format_double(eta);
        for (DistKind k : {DistKind::ConditionalWait, DistKind::UnconditionalWait})
          for (int n = 1; n <= 2; ++n) {
            std::string base = "fig8_" + kind_name(k) + std::to_string(n) + tag;
            out.push_back({base, p, eta, req(k, n, EngineKind::ClosedForm, "exact-n"), grid});
            out.push_back({base + "_coherent", Coherent{p.steady_flux()}, eta,
                           req(k, n, EngineKind::ClosedForm, "exact-n"), grid});
          }
      }
      break;
    }
    default:
      throw ConfigError("figure index must lie in 1..8");
  }
  return out;
}

std::vector<FigureCheck> figure_checks(int index, const std::vector<SeriesSpec>& specs,
                                       const std::vector<Curve>& curves) {
  std::vector<FigureCheck> out;
  auto add = [&](const std::string& name, bool pass, double value, const std::string& detail) {
    out.push_back({name, pass, value, detail});
  };
  switch (index) {
    case 1: {
      const Curve& w1 = find(specs, curves, "fig1_w1_exact");
      const Curve& p1 = find(specs, curves, "fig1_P1_exact");
      double r0 = w1.values.front() / p1.values.front();
      add("w1(0)/P1(0) = 2", std::abs(r0 - 2.0) < 1e-9, r0, "bunching doubles the initial rate");
      double excess0 = r0 - 1.0;
      double excess2 = interp(w1, 2.0) / interp(p1, 2.0) - 1.0;
      add("short-time w1 peak decays within 2/gamma", excess2 < 0.05 * excess0, excess2 / excess0,
          "relative excess of w1 over P1 at gamma T = 2");
      break;
    }
    case 2:
    case 4: {
      std::string f = index == 2 ? "fig2" : "fig4";
      double worst = 0.0;
      for (int n = 1; n <= 3; ++n) {
        const Curve& w = find(specs, curves, f + "_w" + std::to_string(n) + "_approx");
        const Curve& p = find(specs, curves, f + "_P" + std::to_string(n) + "_approx");
        for (std::size_t i = 1; i < w.grid.size(); ++i) {
          double x = 2.0 * 10.0 * w.grid[i] * (index == 2 ? 1.0 : 2.0);
          double expect = index == 2 ? (n + 1.0) / (1.0 + x) : (2.0 * n + 1.0) / (1.0 + x);
          worst = std::max(worst, std::abs(w.values[i] / p.values[i] / expect - 1.0));
        }
      }
      add("high-degeneracy w_n/P_n ratio law", worst < 1e-12, worst, "max relative deviation");
      if (index == 4) {
        const Curve& w1 = find(specs, curves, "fig4_w1_approx");
        double thermal_w1 = closedform::thermal_approx(closedform::Regime::LargeNbar, DistKind::ConditionalWait, 1,
                                                       0.0, Thermal{1.0, 10.0}, Detector(1.0));
        double r = w1.values.front() / thermal_w1;
        add("w1(0) DPO / thermal = 3/2", std::abs(r - 1.5) < 1e-12, r, "equal mean flux");
      }
      break;
    }
    case 3: {
      const Curve& w1 = find(specs, curves, "fig3_w1_exact");
      const Curve& p1 = find(specs, curves, "fig3_P1_exact");
      double g2 = w1.values.front() / p1.values.front();
      add("super-thermal w1(0)/P1(0) > 2", g2 > 2.0, g2, "pair emission");
      break;
    }
    case 5: {
      double prev = 0.0;
      bool mono = true;
      for (double eta : {1.0, 0.5, 0.1}) {
        const Curve& w1 = find(specs, curves, "fig5_w1_eta" + io::format_double(eta) + "_exact");
        double t1 = 0.5 * w1.grid.back(), t2 = 0.9 * w1.grid.back();
        double rate = std::log(interp(w1, t1) / interp(w1, t2)) / (t2 - t1);
        double ratio = rate / (eta * 0.02);
        double expect = 1.0 - eta / 2.0;
        add("tail rate / detected flux at eta=" + io::format_double(eta), std::abs(ratio / expect - 1.0) < 0.05,
            ratio, "expected " + io::format_double(expect));
        if (!(ratio > prev)) mono = false;
        prev = ratio;
      }
      add("tail time scale approaches 1/(eta flux) as eta drops", mono, prev, "ratios increase toward 1");
      break;
    }
    case 6: {
      Rf p{1.0, 10.0 * kSqrt2};
      double om = std::sqrt(p.rabi * p.rabi - p.beta * p.beta);
      const Curve& w1 = find(specs, curves, "fig6_w1_strong");
      double worst = 0.0;
      for (int k = 1; k <= 3; ++k)
        worst = std::max(worst, closedform::rf_wn(1, 2.0 * M_PI * k / om, p, Detector(1.0)) / w1.peak());
      add("w1 zeros at 2 pi k / sqrt(rabi^2 - beta^2)", worst < 1e-9, worst, "max |w1|/peak at k = 1..3");
      double diff = 0.0;
      for (int n = 1; n <= 3; ++n) {
        const Curve& w = find(specs, curves, "fig6_w" + std::to_string(n) + "_strong");
        const Curve& s = find(specs, curves, "fig6_w" + std::to_string(n) + "_strong_strongfield");
        double tpk = argmax(w);
        for (std::size_t i = 0; i < w.grid.size(); ++i)
          if (w.grid[i] > tpk) diff = std::max(diff, std::abs(w.values[i] - s.values[i]) / w.peak());
      }
      add("strong-field form within 10% beyond the first maximum", diff < 0.1, diff, "max |difference|/peak");
      break;
    }
    case 7: {
      double worst = 0.0;
      for (int n = 1; n <= 3; ++n) {
        const Curve& w = find(specs, curves, "fig7_w" + std::to_string(n));
        double dt = w.grid[1] - w.grid[0];
        worst = std::max(worst, std::abs(argmax(w) - (3.0 * n - 1.0)) / dt);
      }
      add("most probable w_n at (3n-1)/beta", worst <= 1.0, worst, "distance in grid steps");
      break;
    }
    case 8: {
      double prev = INFINITY;
      bool mono = true;
      std::string detail;
      for (double eta : {1.0, 0.5, 0.1}) {
        double d = first_modulation_depth(find(specs, curves, "fig8_w1_eta" + io::format_double(eta)));
        detail += io::format_double(eta) + ":" + io::format_double(d) + " ";
        if (!(d < prev) && !(d == 0.0 && prev == 0.0)) mono = false;
        prev = d;
      }
      add("Rabi modulation depth of w1 decreases with eta", mono, prev, detail);
      break;
    }
  }
  return out;
}

io::json run_figure(int index, const std::string& outdir, int points) {
  std::vector<SeriesSpec> specs = figure_series(index, points);
  std::filesystem::create_directories(outdir);
  std::vector<Curve> curves;
  io::json series = io::json::array(), files = io::json::array();
  for (const auto& s : specs) {
    Curve c = sample_curve(s.params, Detector(s.eta), s.request, s.grid);
    std::string file = s.name + ".csv";
    io::atomic_write((std::filesystem::path(outdir) / file).string(), io::curve_csv(c));
    io::json m = io::meta_to_json(c.meta);
    m["name"] = s.name;
    m["file"] = file;
    series.push_back(m);
    files.push_back(file);
    curves.push_back(std::move(c));
  }
  io::json checks = io::json::array();
  bool all = true;
  for (const auto& c : figure_checks(index, specs, curves)) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"detail", c.detail}});
    all = all && c.pass;
  }
  io::json manifest = {{"figure", index}, {"points", points}, {"files", files}, {"series", series},
                       {"checks", checks},
                       {"verdict", all ? "PASS" : "FAIL"}};
  io::atomic_write((std::filesystem::path(outdir) / "manifest.json").string(), manifest.dump(2) + "\n");
  return manifest;
}

}  // namespace photostat::cli
