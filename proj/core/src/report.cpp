#include "anisolab/report.hpp"

#include <cstdio>
#include <fstream>

#include "anisolab/errors.hpp"
#include "json.hpp"

namespace anisolab {
namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw IoError("cannot write " + p.string());
  os << text;
  if (!os) throw IoError("write failed: " + p.string());
}

}  // namespace

std::string sweep_csv(const SweepReport& report) {
  std::string out;
  for (std::size_t c = 0; c < kSweepColumns.size(); ++c) {
    if (c) out += ',';
    out += kSweepColumns[c];
  }
  out += '\n';
  for (const auto& r : report.rows) {
    const auto v = r.values();
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (c) out += ',';
      out += g17(v[c]);
    }
    out += '\n';
  }
  return out;
}

std::string sweep_json(const SweepReport& report, const StudyConfig& config) {
  nlohmann::json j;
  j["kind"] = report.kind;
  j["config"] = nlohmann::json::parse(config_to_json(config));
  j["columns"] = kSweepColumns;
  auto rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row;
    const auto v = r.values();
    for (std::size_t c = 0; c < v.size(); ++c) row[kSweepColumns[c]] = v[c];
    if (report.kind == "semilinear") row["picard_iterations"] = r.picard_iterations;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["complete"] = report.complete;
  if (!report.complete) j["error"] = report.error;
  j["discretization_floor"] = report.discretization_floor;
  nlohmann::json rates = nlohmann::json::object();
  for (const auto& [name, slope] : report.rates) rates[name] = slope;
  j["rates"] = rates;
  j["warnings"] = report.warnings;
  j["notes"] =
      "Columns are discrete quantities on a fixed grid; values below discretization_floor "
      "reflect grid error and say nothing about the epsilon rate.";
  return j.dump(2) + "\n";
}

std::string fourier_csv(std::span<const FourierRow> rows) {
  std::string out = "trial,epsilon,lambda,r_x2,r_x1,r_cross,pass\n";
  for (const auto& r : rows) {
    const auto& b = r.bound;
    out += std::to_string(r.trial) + ',' + g17(b.epsilon) + ',' + g17(b.lambda) + ',' + g17(b.r_x2) + ',' +
           g17(b.r_x1) + ',' + g17(b.r_cross) + ',' + (b.passed() ? "1" : "0") + '\n';
  }
  return out;
}

std::string translation_csv(std::span<const std::pair<MultiIndex, double>> sigma) {
  std::string out = "s,sigma\n";
  for (const auto& [h, v] : sigma) out += std::to_string(h.empty() ? 0 : h.front()) + ',' + g17(v) + '\n';
  return out;
}

ReportPaths emit_report(const SweepReport& report, const StudyConfig& config, const std::filesystem::path& dir,
                        const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  ReportPaths p{dir / (stem + ".csv"), dir / (stem + ".json")};
  write_text(p.csv, sweep_csv(report));
  write_text(p.json, sweep_json(report, config));
  return p;
}

}  // namespace anisolab
