#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "photostat/mcsim.hpp"
#include "photostat/model.hpp"

namespace photostat {

struct McOptions {
  std::uint64_t seed = 1;
  double events = 1e6;       // expected detected events
  int batches = 1;
  int threads = 1;
  std::size_t n_starts = 0;  // 0 selects events / 4
  SimConfig sim;
};

std::vector<double> linear_grid(double tmax, int points);

// Closed-form regime tags accepted for a source.
std::vector<std::string> closed_regimes(SourceKind s);
double closed_value(const SourceParams& p, const Detector& d, const DistRequest& req, double T);

// Exact and closed engines evaluate at each grid point. The Monte-Carlo engine
// treats the grid as histogram edges (wait kinds) or window lengths (photocounts).
Curve sample_curve(const SourceParams& p, const Detector& d, const DistRequest& req, const std::vector<double>& grid,
                   const McOptions& mc = {});

// Ideal record of about events/eta ideal events, then Bernoulli thinning.
std::vector<EventRecord> simulate_detected(const SourceParams& p, const Detector& d, const McOptions& mc);

}  // namespace photostat
