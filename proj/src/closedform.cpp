#include "photostat/closedform.hpp"

#include <cmath>
#include <sstream>

#include "photostat/errors.hpp"
#include "photostat/series.hpp"

namespace photostat::closedform {

namespace {

[[noreturn]] void unsupported(const char* source, Regime r, DistKind k, int n) {
  std::ostringstream os;
  os << source << " closed form: regime '" << regime_tag(r) << "' has no formula for kind '"
     << kind_tag(k) << "' with n = " << n;
  throw ConfigError(os.str());
}

double double_factorial_odd(int m) {  // m!! for odd m, (-1)!! = 1
  double f = 1.0;
  for (int k = m; k > 1; k -= 2) f *= k;
  return f;
}

}  // namespace

Regime parse_regime(const std::string& tag) {
  if (tag == "small") return Regime::SmallNbar;
  if (tag == "large") return Regime::LargeNbar;
  if (tag == "nonunit") return Regime::SmallNbarNonUnit;
  throw ConfigError("unknown regime '" + tag + "' (expected small, large or nonunit)");
}

std::string regime_tag(Regime r) {
  switch (r) {
    case Regime::SmallNbar: return "small";
    case Regime::LargeNbar: return "large";
    case Regime::SmallNbarNonUnit: return "nonunit";
  }
  return "?";
}

double coherent_wait(int n, double T, double flux, double eta) {
  if (n < 1) throw ConfigError("coherent_wait needs n >= 1");
  double r = eta * flux;
  if (T == 0.0) return n == 1 ? r : 0.0;
  double x = r * T;
  return r * std::exp((n - 1) * std::log(x) - x - series::log_factorial(n - 1));
}

double coherent_photocount(int n, double T, double flux, double eta) {
  if (n < 0) throw ConfigError("photocount needs n >= 0");
  double x = eta * flux * T;
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(n * std::log(x) - x - series::log_factorial(n));
}

double thermal_approx(Regime r, DistKind kind, int n, double T, const Thermal& p, const Detector& d) {
  const double eta = d.eta(), g = p.gamma, nb = p.nbar;
  const double rate = 2.0 * eta * g * nb;
  if (r == Regime::SmallNbar) {
    const double base = rate * std::exp(-rate * T);
    const double gt = g * T, e4 = std::exp(-4.0 * gt), en = eta * nb;
    if (kind == DistKind::UnconditionalWait) {
      switch (n) {
        case 1: return base;
        case 2: return base * 0.5 * en * (1.0 + 4.0 * gt - e4);
        case 3: return base * 0.25 * en * en * (1.0 + 8.0 * gt + 8.0 * gt * gt - e4 * (12.0 * gt + 1.0));
      }
    } else if (kind == DistKind::ConditionalWait) {
      switch (n) {
        case 1: return base * (1.0 + e4);
        case 2: return base * en * (1.0 + 2.0 * gt + e4 * (-1.0 + 6.0 * gt));
        case 3:
          return base * en * en *
                 (1.0 + 3.0 * gt + 2.0 * gt * gt - e4 * (2.0 + 3.0 * gt - 18.0 * gt * gt) + e4 * e4);
      }
    }
    unsupported("thermal", r, kind, n);
  }
  if (r == Regime::LargeNbar) {
    const double x = rate * T;
    switch (kind) {
      case DistKind::Photocount:
        if (n < 0) break;
        return std::exp(n * std::log(x) - (n + 1) * std::log1p(x));
      case DistKind::UnconditionalWait:
        if (n < 1) break;
        return rate * n * std::pow(x, n - 1) / std::pow(1.0 + x, n + 1);
      case DistKind::ConditionalWait:
        if (n < 1) break;
        return rate * n * (n + 1.0) * std::pow(x, n - 1) / std::pow(1.0 + x, n + 2);
    }
  }
  unsupported("thermal", r, kind, n);
}

double dpo_approx(Regime r, DistKind kind, int n, double T, const Dpo& p, const Detector& d) {
  const double eta = d.eta(), g = p.gamma, nb = p.nbar;
  const double gt = g * T;
  if (r == Regime::SmallNbar) {
    if (eta != 1.0) throw ConfigError("dpo small-nbar forms assume eta = 1 (use 'nonunit')");
    const double pairs = nb * gt;
    if (kind == DistKind::Photocount && n >= 0) {
      int k = n / 2;
      double pk = std::exp(k * std::log(pairs) - pairs - series::log_factorial(k));
      if (pairs == 0.0) pk = k == 0 ? 1.0 : 0.0;
      return n % 2 ? nb * pk : pk;
    }
    const double base = 2.0 * g * nb * std::exp(-pairs);
    const double e2 = std::exp(-2.0 * gt), e4 = std::exp(-4.0 * gt);
    if (kind == DistKind::UnconditionalWait) {
      switch (n) {
        case 1: return base * 0.5 * (1.0 + e2);
        case 2: return base * 0.5 * (1.0 - e2);
        case 3: return base * 0.5 * nb * (3.0 + gt + 3.0 * e4 - e2 * (6.0 + gt - 4.0 * gt * gt));
      }
    } else if (kind == DistKind::ConditionalWait) {
      switch (n) {
        case 1: return base * (0.25 + e4 + e2 * (0.5 / nb + 1.75));
        case 2: return base * (0.5 - 2.0 * e4 + e2 * (1.5 + 4.0 * gt));
        case 3: return base * (0.25 + e4 + e2 * (2.0 * gt * gt + 1.5 * gt - 1.25));
      }
    }
    unsupported("dpo", r, kind, n);
  }
  if (r == Regime::SmallNbarNonUnit) {
    const double base = 2.0 * eta * g * nb * std::exp(-(2.0 * eta - eta * eta) * g * nb * T);
    const double e2 = std::exp(-2.0 * gt), e4 = std::exp(-4.0 * gt);
    if (kind == DistKind::UnconditionalWait) {
      switch (n) {
        case 1: return base * 0.5 * (2.0 - eta + eta * e2);
        case 2: return base * 0.5 * eta * (1.0 - e2);
      }
    } else if (kind == DistKind::ConditionalWait) {
      switch (n) {
        case 1:
          return base * (0.25 * (eta - 2.0) * (eta - 2.0) + eta * eta * e4 +
                         e2 * (2.0 + 0.5 / nb + eta - 1.25 * eta * eta));
        case 2:
          return base * 0.5 * eta *
                 (2.0 - eta - 4.0 * eta * e4 + e2 * (5.0 * eta - 6.0 * eta * gt + 14.0 * gt - 2.0));
      }
    }
    unsupported("dpo", r, kind, n);
  }
  // LargeNbar
  const double rate = 2.0 * eta * g * nb;
  const double x = rate * T;
  switch (kind) {
    case DistKind::Photocount: {
      if (n < 0) break;
      double y = 2.0 * x;
      double c = std::log(double_factorial_odd(2 * n - 1)) - n * std::log(2.0) - series::log_factorial(n);
      if (y == 0.0) return n == 0 ? 1.0 : 0.0;
      return std::exp(c + n * std::log(y) - (n + 0.5) * std::log1p(y));
    }
    case DistKind::UnconditionalWait:
      if (n < 1) break;
      return rate * double_factorial_odd(2 * n - 1) / series::factorial(n - 1) * std::pow(x, n - 1) /
             std::pow(1.0 + 2.0 * x, n + 0.5);
    case DistKind::ConditionalWait:
      if (n < 1) break;
      return rate * double_factorial_odd(2 * n + 1) / series::factorial(n - 1) * std::pow(x, n - 1) /
             std::pow(1.0 + 2.0 * x, n + 1.5);
  }
  unsupported("dpo", r, kind, n);
}

double most_probable_wait(SourceKind source, DistKind kind, int n, double flux, double eta) {
  if (n < 1) throw ConfigError("most probable wait needs n >= 1");
  const double r = eta * flux;
  switch (source) {
    case SourceKind::Coherent:
      if (kind != DistKind::Photocount) return (n - 1) / r;
      break;
    case SourceKind::Thermal:
      if (kind == DistKind::UnconditionalWait) return (n - 1) / (2.0 * r);
      if (kind == DistKind::ConditionalWait) return (n - 1) / (3.0 * r);
      break;
    case SourceKind::Dpo:
      if (kind == DistKind::ConditionalWait) return (n - 1) / (5.0 * r);
      break;
    case SourceKind::Rf:
      // rabi = beta and unit efficiency: flux = beta / 3.
      if (kind == DistKind::ConditionalWait && eta == 1.0) return (3.0 * n - 1.0) / (3.0 * flux);
      break;
  }
  throw ConfigError("no most-probable wait-time formula for this source, kind and efficiency");
}

}  // namespace photostat::closedform
