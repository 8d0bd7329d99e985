#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "photostat/mcsim.hpp"
#include "photostat/model.hpp"

namespace photostat {

// Uniform bin edges on [0, tmax].
std::vector<double> uniform_edges(double tmax, int bins);
// max(50, sqrt(events)/10)
int default_bin_count(std::size_t events);

// Histogram density of t_{i+n} - t_i over bins given by edges; starts with
// t_i + edges.back() > duration are dropped so no interval is censored.
Curve estimate_wn(const std::vector<EventRecord>& recs, int n, const std::vector<double>& edges);
Curve estimate_wn(const EventRecord& rec, int n, const std::vector<double>& edges);

// Histogram density of the time from a uniform random start to the n-th later event.
Curve estimate_pn(const std::vector<EventRecord>& recs, int n, const std::vector<double>& edges,
                  std::size_t n_starts, std::uint64_t seed);
Curve estimate_pn(const EventRecord& rec, int n, const std::vector<double>& edges, std::size_t n_starts,
                  std::uint64_t seed);

struct PhotocountEstimate {
  std::vector<double> p;
  std::vector<double> stderr_values;
  std::size_t windows = 0;
};

// Counts in uniformly placed windows of length T; p[n_max] excludes larger counts.
PhotocountEstimate estimate_photocount(const std::vector<EventRecord>& recs, double T, int n_max,
                                       std::size_t n_starts, std::uint64_t seed);
PhotocountEstimate estimate_photocount(const EventRecord& rec, double T, int n_max, std::size_t n_starts,
                                       std::uint64_t seed);

// Mean and variance of t_{i+n} - t_i, errors from batch means over contiguous blocks.
MomentSummary estimate_wait_moments(const std::vector<EventRecord>& recs, int n, int batches = 100);
MomentSummary estimate_wait_moments(const EventRecord& rec, int n, int batches = 100);

struct Concordance {
  std::size_t bins = 0;
  std::size_t within = 0;
  double fraction() const { return bins ? static_cast<double>(within) / bins : 0.0; }
};

// Bin averages of f (Gauss-Legendre, 8 nodes per bin) on the given edges.
std::vector<double> bin_average(const std::function<double(double)>& f, const std::vector<double>& edges);
// Bins whose |estimate - reference| <= k * stderr.
Concordance concordance(const Curve& est, const std::vector<double>& reference, double k = 2.0);

}  // namespace photostat
