#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>

#include "anisolab/config.hpp"
#include "anisolab/study.hpp"

namespace anisolab {

/// CSV with the fixed kSweepColumns header; an empty sweep is header only.
/// Numbers use 17 significant digits.
std::string sweep_csv(const SweepReport& report);

/// JSON twin: the full config, rows, rates, warnings and floor.
std::string sweep_json(const SweepReport& report, const StudyConfig& config);

/// trial,epsilon,lambda,r_x2,r_x1,r_cross,pass
std::string fourier_csv(std::span<const FourierRow> rows);

/// s,sigma: one line per shift size (first shift component).
std::string translation_csv(std::span<const std::pair<MultiIndex, double>> sigma);

struct ReportPaths {
  std::filesystem::path csv;
  std::filesystem::path json;
};

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json, creating dir. Throws IoError.
ReportPaths emit_report(const SweepReport& report, const StudyConfig& config, const std::filesystem::path& dir,
                        const std::string& stem = "sweep");

}  // namespace anisolab
