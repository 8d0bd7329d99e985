#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "photostat/model.hpp"

namespace photostat {

struct EventRecord {
  std::vector<double> times;  // strictly ascending, in [0, duration]
  double duration = 0.0;
  std::string source;
  std::uint64_t seed = 0;
  std::string config;

  std::size_t size() const { return times.size(); }
  double rate() const { return duration > 0.0 ? times.size() / duration : 0.0; }
  // Throws DataFormatError when ordering or range is violated.
  void validate() const;
};

struct SimConfig {
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  double dt = 0.0;        // thermal step; 0 selects the default
  double burn_in = -1.0;  // negative selects the default
  int fock_max = 0;       // DPO truncation; 0 selects the default
  double ode_tol = 1e-10;
};

double default_dt(const SourceParams& p);
double default_burn_in(const SourceParams& p);
// Smallest Fock cutoff whose stationary tail population is below tol.
int default_fock_max(const Dpo& p, double tol = 1e-8);
// Stationary photon-number distribution of the below-threshold cavity.
std::vector<double> dpo_fock_distribution(const Dpo& p, int nmax);

EventRecord simulate(const SourceParams& p, double duration, const SimConfig& cfg);

// Independent records on streams 0..batches-1; identical for any thread count.
std::vector<EventRecord> simulate_batches(const SourceParams& p, double duration, const SimConfig& cfg,
                                          int batches, int threads = 1);

EventRecord thin(const EventRecord& rec, double eta, std::uint64_t seed);
// Events in [t0, t1), shifted to start at 0.
EventRecord slice(const EventRecord& rec, double t0, double t1);

}  // namespace photostat
