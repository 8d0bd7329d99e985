#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace photostat {

struct Coherent {
  double flux = 1.0;
};

struct Thermal {
  double gamma = 1.0;
  double nbar = 0.0;
};

struct Dpo {
  double gamma = 1.0;
  double nbar = 0.0;

  // pump ratio |kappa*epsilon|/gamma
  double r() const;
  double lambda1() const;
  double lambda2() const;
  static double nbar_from_r(double r);
};

struct Rf {
  double beta = 1.0;
  double rabi = 1.0;

  // beta^2 - Omega^2
  double omega2() const;
  double steady_flux() const;
};

using SourceParams = std::variant<Coherent, Thermal, Dpo, Rf>;

enum class SourceKind { Coherent, Thermal, Dpo, Rf };

SourceKind source_kind(const SourceParams& p);
std::string source_name(const SourceParams& p);
SourceKind parse_source_kind(const std::string& name);

// Throws ConfigError when a parameter set is outside its domain.
void validate(const SourceParams& p);

double mean_flux(const SourceParams& p);

// Characteristic fastest rate of the source (used for step and ladder sizes).
double characteristic_rate(const SourceParams& p);

// Rescale every rate by c (time measured in units 1/c).
SourceParams scale(const SourceParams& p, double c);

class Detector {
 public:
  explicit Detector(double eta = 1.0);
  double eta() const { return eta_; }
  // (1 - eta)^(1/3)
  double mu() const;

 private:
  double eta_;
};

enum class DistKind { Photocount, UnconditionalWait, ConditionalWait };
enum class EngineKind { Exact, ClosedForm, MonteCarlo };

std::string kind_tag(DistKind k);
DistKind parse_kind_tag(const std::string& tag);

struct DistRequest {
  DistKind kind = DistKind::ConditionalWait;
  int n = 1;
  EngineKind engine = EngineKind::Exact;
  std::string regime;  // closed-form regime tag

  void validate() const;
};

struct CurveMeta {
  SourceParams params;
  Detector detector;
  DistRequest request;
  std::uint64_t seed = 0;
  std::string config;
};

struct Curve {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> stderr_values;  // empty when not applicable
  CurveMeta meta;

  bool has_errors() const { return !stderr_values.empty(); }
  double peak() const;
};

// Relative tolerance below which negative round-off is clamped to zero.
inline constexpr double kClampTolerance = 1e-9;

// Zero tiny negatives relative to scale; throws NumericalError on larger ones.
double clamp_nonnegative(double v, double scale, const char* what);
void clamp_curve(Curve& c, const char* what);

// C(x) = sum x^k/(2k)!,  S(x) = sum x^k/(2k+1)!
double entire_cosh(double x);
double entire_sinhc(double x);

// Taylor coefficients C^(k)(x0)/k!, S^(k)(x0)/k! for k = 0..order.
void entire_taylor(double x0, int order, std::vector<double>& c, std::vector<double>& s);

}  // namespace photostat

namespace photostat {

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  // Statistical errors, zero for analytic results.
  double mean_err = 0.0;
  double variance_err = 0.0;

  double second_moment() const { return variance + mean * mean; }
};

}  // namespace photostat
