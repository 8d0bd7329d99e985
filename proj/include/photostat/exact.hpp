#pragma once

#include <vector>

#include "photostat/model.hpp"

namespace photostat {

inline constexpr int kMaxWaitOrder = 8;

// p(n, T) from a contour integral of G refined by the jet; ns >= 0 forces the jet alone.
double photocount(const SourceParams& p, const Detector& d, int n, double T, int ns = -1);
// p(0..nmax, T) from a single jet.
std::vector<double> photocount_range(const SourceParams& p, const Detector& d, int nmax, double T);
// p(0..N, T) with N grown until the neglected tail is below tol.
std::vector<double> photocount_distribution(const SourceParams& p, const Detector& d, double T,
                                            double tol = 1e-9);

double pn_wait(const SourceParams& p, const Detector& d, int n, double T, int ns = -1);
double wn_wait(const SourceParams& p, const Detector& d, int n, double T, int ns = -1);
double wn_via_pn(const SourceParams& p, const Detector& d, int n, double T, int ns = -1);

struct WaitValues {
  std::vector<double> P;  // P[n-1] = P_n(T)
  std::vector<double> w;  // w[n-1] = w_n(T)
};

// P_n, w_n for n = 1..nmax from a single jet, without clamping.
WaitValues wait_values_raw(const SourceParams& p, const Detector& d, int nmax, double T);

// Zero-delay normalized correlation g^(n)(0) by extrapolation T -> 0.
double g_zero(const SourceParams& p, int n);

}  // namespace photostat
