#include "photostat/model.hpp"

#include <cmath>
#include <sstream>

#include "photostat/errors.hpp"

namespace photostat {

double Dpo::r() const { return std::sqrt(2.0 * nbar / (1.0 + 2.0 * nbar)); }
double Dpo::lambda1() const { return gamma * (1.0 - r()); }
double Dpo::lambda2() const { return gamma * (1.0 + r()); }
double Dpo::nbar_from_r(double r) { return 0.5 * r * r / (1.0 - r * r); }

double Rf::omega2() const { return beta * beta - rabi * rabi; }
double Rf::steady_flux() const {
  double o2 = rabi * rabi;
  return beta * o2 / (o2 + 2.0 * beta * beta);
}

SourceKind source_kind(const SourceParams& p) {
  return static_cast<SourceKind>(p.index());
}

std::string source_name(const SourceParams& p) {
  static const char* names[] = {"coherent", "thermal", "dpo", "rf"};
  return names[p.index()];
}

SourceKind parse_source_kind(const std::string& name) {
  if (name == "coherent") return SourceKind::Coherent;
  if (name == "thermal") return SourceKind::Thermal;
  if (name == "dpo") return SourceKind::Dpo;
  if (name == "rf") return SourceKind::Rf;
  throw ConfigError("unknown source '" + name + "'");
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void validate(const SourceParams& p) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Coherent>) {
          require(positive(s.flux), "coherent flux must be > 0");
        } else if constexpr (std::is_same_v<T, Thermal>) {
          require(positive(s.gamma), "thermal gamma must be > 0");
          require(std::isfinite(s.nbar) && s.nbar >= 0.0, "thermal nbar must be >= 0");
        } else if constexpr (std::is_same_v<T, Dpo>) {
          require(positive(s.gamma), "dpo gamma must be > 0");
          require(std::isfinite(s.nbar) && s.nbar >= 0.0, "dpo nbar must be >= 0");
          require(s.r() < 1.0, "dpo must be below threshold (r < 1)");
        } else {
          require(positive(s.beta), "rf beta must be > 0");
          require(std::isfinite(s.rabi) && s.rabi >= 0.0, "rf rabi must be >= 0");
        }
      },
      p);
}

double mean_flux(const SourceParams& p) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Coherent>) {
          return s.flux;
        } else if constexpr (std::is_same_v<T, Thermal> || std::is_same_v<T, Dpo>) {
          return 2.0 * s.gamma * s.nbar;
        } else {
          return s.steady_flux();
        }
      },
      p);
}

double characteristic_rate(const SourceParams& p) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Coherent>) {
          return s.flux;
        } else if constexpr (std::is_same_v<T, Thermal> || std::is_same_v<T, Dpo>) {
          return 2.0 * s.gamma;
        } else {
          return std::max(s.beta, s.rabi);
        }
      },
      p);
}

SourceParams scale(const SourceParams& p, double c) {
  return std::visit(
      [c](auto s) -> SourceParams {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Coherent>) {
          s.flux *= c;
        } else if constexpr (std::is_same_v<T, Thermal> || std::is_same_v<T, Dpo>) {
          s.gamma *= c;
        } else {
          s.beta *= c;
          s.rabi *= c;
        }
        return s;
      },
      p);
}

Detector::Detector(double eta) : eta_(eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in (0, 1]");
}

double Detector::mu() const { return std::cbrt(1.0 - eta_); }

std::string kind_tag(DistKind k) {
  switch (k) {
    case DistKind::Photocount: return "p";
    case DistKind::UnconditionalWait: return "P";
    case DistKind::ConditionalWait: return "w";
  }
  return "?";
}

DistKind parse_kind_tag(const std::string& tag) {
  if (tag == "p") return DistKind::Photocount;
  if (tag == "P") return DistKind::UnconditionalWait;
  if (tag == "w") return DistKind::ConditionalWait;
  throw ConfigError("unknown kind '" + tag + "' (expected p, P or w)");
}

void DistRequest::validate() const {
  if (kind == DistKind::Photocount) {
    if (n < 0) throw ConfigError("photocount order must be >= 0");
  } else if (n < 1) {
    throw ConfigError("wait-time order must be >= 1");
  }
}

double Curve::peak() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double clamp_nonnegative(double v, double scale, const char* what) {
  if (std::isnan(v)) throw NumericalError(std::string(what) + ": NaN result");
  if (v >= 0.0) return v;
  if (-v <= kClampTolerance * scale) return 0.0;
  std::ostringstream os;
  os << what << ": negative value " << v << " exceeds clamp tolerance (scale " << scale << ")";
  throw NumericalError(os.str());
}

void clamp_curve(Curve& c, const char* what) {
  double pk = c.peak();
  for (double& v : c.values) v = clamp_nonnegative(v, pk, what);
}

namespace {

constexpr double kSeriesSwitch = 0.25;
constexpr int kSeriesTerms = 12;

// sum_{k<12} x^k / (2k + off)!
double short_series(double x, int off) {
  double f[kSeriesTerms];
  double fact = 1.0;
  for (int i = 1; i <= off; ++i) fact *= i;
  for (int k = 0; k < kSeriesTerms; ++k) {
    f[k] = 1.0 / fact;
    fact *= (2 * k + 1 + off) * (2 * k + 2 + off);
  }
  double acc = f[kSeriesTerms - 1];
  for (int k = kSeriesTerms - 2; k >= 0; --k) acc = acc * x + f[k];
  return acc;
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalError(std::string(what) + ": overflow");
  return v;
}

}  // namespace

double entire_cosh(double x) {
  if (std::abs(x) <= kSeriesSwitch) return short_series(x, 0);
  if (x > 0) return checked(std::cosh(std::sqrt(x)), "entire_cosh");
  return std::cos(std::sqrt(-x));
}

double entire_sinhc(double x) {
  if (std::abs(x) <= kSeriesSwitch) return short_series(x, 1);
  if (x > 0) {
    double r = std::sqrt(x);
    return checked(std::sinh(r) / r, "entire_sinhc");
  }
  double r = std::sqrt(-x);
  return std::sin(r) / r;
}

namespace {

// sum_j binom(k+j, k) x^j / (2k+2j+off)!
double taylor_series_coeff(double x, int k, int off) {
  double t = 1.0;
  double sum = 1.0;
  for (int j = 0; j < 4000; ++j) {
    double a = 2.0 * k + 2.0 * j + off;
    t *= x * (k + j + 1.0) / (j + 1.0) / ((a + 1.0) * (a + 2.0));
    sum += t;
    if (std::abs(t) <= 1e-18 * std::abs(sum) && j > std::sqrt(std::abs(x))) break;
  }
  int m = 2 * k + off;
  if (m <= 170) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return sum / f;
  }
  return std::copysign(std::exp(std::log(std::abs(sum)) - std::lgamma(m + 1.0)), sum);
}

}  // namespace

void entire_taylor(double x0, int order, std::vector<double>& c, std::vector<double>& s) {
  c.assign(order + 1, 0.0);
  s.assign(order + 1, 0.0);
  if (x0 >= -4.0) {
    for (int k = 0; k <= order; ++k) {
      c[k] = taylor_series_coeff(x0, k, 0);
      s[k] = taylor_series_coeff(x0, k, 1);
    }
    return;
  }
  c[0] = entire_cosh(x0);
  s[0] = entire_sinhc(x0);
  for (int k = 0; k < order; ++k) {
    c[k + 1] = s[k] / (2.0 * (k + 1));
    s[k + 1] = (c[k] - (2.0 * k + 1.0) * s[k]) / (2.0 * x0 * (k + 1));
  }
}

}  // namespace photostat
