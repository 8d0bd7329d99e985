#include "photostat/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/quadrature/gauss.hpp>

#include "photostat/errors.hpp"
#include "photostat/rng.hpp"

namespace photostat {

namespace {

constexpr std::size_t kErrorBlocks = 200, kMinBlocks = 20, kMinBlockSamples = 50;

void check_edges(const std::vector<double>& edges) {
  if (edges.size() < 2) throw ConfigError("histogram needs at least one bin");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1])) throw ConfigError("bin edges must be strictly ascending");
  if (edges.front() < 0.0) throw ConfigError("bin edges must be nonnegative");
}

// Samples arrive in time order; per-bin errors come from batch means over
// contiguous blocks so correlated entries are accounted for.
struct Hist {
  const std::vector<double>& edges;
  std::vector<double> counts;
  std::vector<std::int32_t> bins;  // bin of each sample, -1 outside
  bool uniform;
  double lo, width;

  explicit Hist(const std::vector<double>& e) : edges(e), counts(e.size() - 1, 0.0) {
    lo = e.front();
    width = (e.back() - e.front()) / (e.size() - 1);
    uniform = true;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (std::abs(e[i] - (lo + i * width)) > 1e-12 * e.back()) uniform = false;
  }

  void add(double x) {
    if (x < edges.front() || x >= edges.back()) {
      bins.push_back(-1);
      return;
    }
    std::size_t b;
    if (uniform) {
      b = std::min(counts.size() - 1, static_cast<std::size_t>((x - lo) / width));
    } else {
      b = std::upper_bound(edges.begin(), edges.end(), x) - edges.begin() - 1;
    }
    counts[b] += 1.0;
    bins.push_back(static_cast<std::int32_t>(b));
  }

  Curve curve(const char* what) const {
    const std::size_t total = bins.size();
    if (total == 0) throw ConfigError(std::string(what) + ": no usable samples");
    Curve c;
    const std::size_t nb = counts.size();
    c.grid.resize(nb);
    c.values.resize(nb);
    c.stderr_values.resize(nb);
    const std::size_t blocks = std::min<std::size_t>(kErrorBlocks, total / kMinBlockSamples);
    std::vector<double> sq(nb, 0.0);
    if (blocks >= kMinBlocks) {
      // Block b covers samples [b * total / blocks, (b + 1) * total / blocks).
      std::vector<double> bc(nb, 0.0);
      for (std::size_t b = 0; b < blocks; ++b) {
        std::fill(bc.begin(), bc.end(), 0.0);
        const std::size_t i0 = b * total / blocks, i1 = (b + 1) * total / blocks;
        for (std::size_t i = i0; i < i1; ++i)
          if (bins[i] >= 0) bc[bins[i]] += 1.0;
        const double scale = static_cast<double>(total) / (i1 - i0);
        for (std::size_t k = 0; k < nb; ++k) {
          double d = bc[k] * scale - counts[k];
          sq[k] += d * d;
        }
      }
    }
    for (std::size_t b = 0; b < nb; ++b) {
      double w = edges[b + 1] - edges[b];
      c.grid[b] = 0.5 * (edges[b] + edges[b + 1]);
      c.values[b] = counts[b] / (total * w);
      // Variance of the total count; never below one count.
      double var = std::max(counts[b], 1.0);
      if (blocks >= kMinBlocks) var = std::max(sq[b] / (blocks * (blocks - 1.0)), 1.0);
      c.stderr_values[b] = std::sqrt(var) / (total * w);
    }
    return c;
  }
};

template <class F>
void for_each_start(const std::vector<EventRecord>& recs, std::size_t n_starts, double reach, std::uint64_t seed,
                    F&& f) {
  double usable = 0.0;
  for (const auto& r : recs) usable += std::max(0.0, r.duration - reach);
  if (!(usable > 0.0)) throw ConfigError("record duration too short for the requested window");
  CounterRng rng(seed, 0x7374617274ull);
  std::vector<double> starts(n_starts);
  for (double& x : starts) x = rng.uniform() * usable;
  std::sort(starts.begin(), starts.end());
  for (double x : starts) {
    for (const auto& r : recs) {
      double len = std::max(0.0, r.duration - reach);
      if (x < len) {
        f(r, x);
        break;
      }
      x -= len;
    }
  }
}

}  // namespace

std::vector<double> uniform_edges(double tmax, int bins) {
  if (!(tmax > 0.0) || bins < 1) throw ConfigError("uniform_edges needs tmax > 0 and bins >= 1");
  std::vector<double> e(bins + 1);
  for (int i = 0; i <= bins; ++i) e[i] = tmax * i / bins;
  return e;
}

int default_bin_count(std::size_t events) {
  return std::max(50, static_cast<int>(std::sqrt(static_cast<double>(events)) / 10.0));
}

Curve estimate_wn(const std::vector<EventRecord>& recs, int n, const std::vector<double>& edges) {
  if (n < 1) throw ConfigError("wait-time order must be >= 1");
  check_edges(edges);
  Hist h(edges);
  const double reach = edges.back();
  std::size_t events = 0;
  for (const auto& r : recs) {
    events += r.size();
    const auto& t = r.times;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] + reach > r.duration) break;
      h.add(i + n < t.size() ? t[i + n] - t[i] : INFINITY);
    }
  }
  if (events < static_cast<std::size_t>(n) + 1) throw ConfigError("estimate_wn: too few events");
  Curve c = h.curve("estimate_wn");
  c.meta.request.kind = DistKind::ConditionalWait;
  c.meta.request.n = n;
  c.meta.request.engine = EngineKind::MonteCarlo;
  return c;
}

Curve estimate_wn(const EventRecord& rec, int n, const std::vector<double>& edges) {
  return estimate_wn(std::vector<EventRecord>{rec}, n, edges);
}

Curve estimate_pn(const std::vector<EventRecord>& recs, int n, const std::vector<double>& edges,
                  std::size_t n_starts, std::uint64_t seed) {
  if (n < 1) throw ConfigError("wait-time order must be >= 1");
  if (n_starts == 0) throw ConfigError("estimate_pn: n_starts must be positive");
  check_edges(edges);
  Hist h(edges);
  for_each_start(recs, n_starts, edges.back(), seed, [&](const EventRecord& r, double s) {
    auto it = std::upper_bound(r.times.begin(), r.times.end(), s);
    std::size_t k = static_cast<std::size_t>(it - r.times.begin()) + n - 1;
    h.add(k < r.times.size() ? r.times[k] - s : INFINITY);
  });
  Curve c = h.curve("estimate_pn");
  c.meta.request.kind = DistKind::UnconditionalWait;
  c.meta.request.n = n;
  c.meta.request.engine = EngineKind::MonteCarlo;
  c.meta.seed = seed;
  return c;
}

Curve estimate_pn(const EventRecord& rec, int n, const std::vector<double>& edges, std::size_t n_starts,
                  std::uint64_t seed) {
  return estimate_pn(std::vector<EventRecord>{rec}, n, edges, n_starts, seed);
}

PhotocountEstimate estimate_photocount(const std::vector<EventRecord>& recs, double T, int n_max,
                                       std::size_t n_starts, std::uint64_t seed) {
  if (!(T > 0.0)) throw ConfigError("window length must be positive");
  if (n_max < 0) throw ConfigError("n_max must be >= 0");
  if (n_starts == 0) throw ConfigError("n_starts must be positive");
  std::vector<double> counts(n_max + 1, 0.0);
  for_each_start(recs, n_starts, T, seed, [&](const EventRecord& r, double s) {
    auto lo = std::lower_bound(r.times.begin(), r.times.end(), s);
    auto hi = std::lower_bound(lo, r.times.end(), s + T);
    auto k = static_cast<std::size_t>(hi - lo);
    if (k <= static_cast<std::size_t>(n_max)) counts[k] += 1.0;
  });
  PhotocountEstimate out;
  out.windows = n_starts;
  for (double c : counts) {
    double p = c / n_starts;
    out.p.push_back(p);
    out.stderr_values.push_back(std::sqrt(std::max(p * (1.0 - p), 1.0 / n_starts) / n_starts));
  }
  return out;
}

PhotocountEstimate estimate_photocount(const EventRecord& rec, double T, int n_max, std::size_t n_starts,
                                       std::uint64_t seed) {
  return estimate_photocount(std::vector<EventRecord>{rec}, T, n_max, n_starts, seed);
}

MomentSummary estimate_wait_moments(const std::vector<EventRecord>& recs, int n, int batches) {
  if (n < 1) throw ConfigError("wait-time order must be >= 1");
  if (batches < 2) throw ConfigError("at least two batches are required");
  std::vector<double> d;
  for (const auto& r : recs)
    for (std::size_t i = 0; i + n < r.times.size(); ++i) d.push_back(r.times[i + n] - r.times[i]);
  if (d.size() < static_cast<std::size_t>(2 * batches)) throw ConfigError("estimate_wait_moments: too few events");
  double s1 = 0.0, s2 = 0.0;
  for (double x : d) s1 += x;
  const double mean = s1 / d.size();
  for (double x : d) s2 += (x - mean) * (x - mean);
  MomentSummary m;
  m.mean = mean;
  m.variance = s2 / (d.size() - 1);
  const std::size_t per = d.size() / batches;
  std::vector<double> bm(batches), bv(batches);
  for (int b = 0; b < batches; ++b) {
    double a = 0.0, q = 0.0;
    for (std::size_t i = b * per; i < (b + 1) * per; ++i) a += d[i];
    double mb = a / per;
    for (std::size_t i = b * per; i < (b + 1) * per; ++i) q += (d[i] - mb) * (d[i] - mb);
    bm[b] = mb;
    bv[b] = q / (per - 1);
  }
  auto se = [&](const std::vector<double>& v) {
    double a = 0.0, q = 0.0;
    for (double x : v) a += x;
    a /= v.size();
    for (double x : v) q += (x - a) * (x - a);
    return std::sqrt(q / (v.size() - 1) / v.size());
  };
  m.mean_err = se(bm);
  m.variance_err = se(bv);
  return m;
}

MomentSummary estimate_wait_moments(const EventRecord& rec, int n, int batches) {
  return estimate_wait_moments(std::vector<EventRecord>{rec}, n, batches);
}

std::vector<double> bin_average(const std::function<double(double)>& f, const std::vector<double>& edges) {
  check_edges(edges);
  std::vector<double> out(edges.size() - 1);
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    double a = edges[b], c = edges[b + 1];
    out[b] = boost::math::quadrature::gauss<double, 8>::integrate(f, a, c) / (c - a);
  }
  return out;
}

Concordance concordance(const Curve& est, const std::vector<double>& reference, double k) {
  if (!est.has_errors() || reference.size() != est.values.size())
    throw ConfigError("concordance needs an estimate with errors and a matching reference");
  Concordance c;
  c.bins = est.values.size();
  for (std::size_t i = 0; i < c.bins; ++i)
    if (std::abs(est.values[i] - reference[i]) <= k * est.stderr_values[i]) ++c.within;
  return c;
}

}  // namespace photostat
