#pragma once

#include <string>
#include <vector>

#include "photostat/io.hpp"
#include "photostat/model.hpp"

namespace photostat::cli {

struct SeriesSpec {
  std::string name;
  SourceParams params;
  double eta = 1.0;
  DistRequest request;
  std::vector<double> grid;
};

struct FigureCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;
  std::string detail;
};

// Preset parameter sets and curve lists for figures 1..8.
std::vector<SeriesSpec> figure_series(int index, int points);
// Qualitative feature checks evaluated on the generated curves.
std::vector<FigureCheck> figure_checks(int index, const std::vector<SeriesSpec>& specs,
                                       const std::vector<Curve>& curves);
// Writes CSVs and manifest.json into outdir; returns the manifest.
io::json run_figure(int index, const std::string& outdir, int points);

}  // namespace photostat::cli
