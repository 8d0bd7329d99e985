#pragma once

#include <complex>

#include "photostat/jet.hpp"
#include "photostat/model.hpp"

namespace photostat {

// Jets of log G(s, T) about (s0, T) with s-order ns.
Jet log_gf_coherent(const Coherent& p, const Detector& d, double s0, double T, int ns);
Jet log_gf_thermal(const Thermal& p, const Detector& d, double s0, double T, int ns);
Jet log_gf_dpo(const Dpo& p, const Detector& d, double s0, double T, int ns);

Jet gf_coherent(const Coherent& p, const Detector& d, double s0, double T, int ns);
Jet gf_thermal(const Thermal& p, const Detector& d, double s0, double T, int ns);
Jet gf_dpo(const Dpo& p, const Detector& d, double s0, double T, int ns);
// Resonance fluorescence: G from the counting-modified optical Bloch equations.
Jet gf_rf(const Rf& p, const Detector& d, double s0, double T, int ns);

// Dispatch on the source.
Jet gf(const SourceParams& p, const Detector& d, double s0, double T, int ns);
double gf_value(const SourceParams& p, const Detector& d, double s, double T);
// G at complex s.
std::complex<double> gf_complex(const SourceParams& p, const Detector& d, std::complex<double> s, double T);

// Approximate forms.
double gf_thermal_hd(const Thermal& p, const Detector& d, double s, double T);
double gf_dpo_hd(const Dpo& p, const Detector& d, double s, double T);
double gf_dpo_small(const Dpo& p, const Detector& d, double s, double T);

}  // namespace photostat
