#pragma once

#include <cmath>
#include <string>

#include "photostat/model.hpp"

namespace testutil {

inline photostat::SourceParams make_source(const std::string& src, double a, double b) {
  using namespace photostat;
  if (src == "coherent") return Coherent{a};
  if (src == "thermal") return Thermal{a, b};
  if (src == "dpo") return Dpo{a, b};
  return Rf{a, b};
}

inline photostat::DistKind kind_of(char k) {
  using photostat::DistKind;
  if (k == 'p') return DistKind::Photocount;
  if (k == 'P') return DistKind::UnconditionalWait;
  return DistKind::ConditionalWait;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testutil
