#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zakharov/fit.hpp"

namespace zakharov {

// One row of a norm report.
struct NormRow {
  std::string run_id;
  std::string norm_name;
  double mu = 0.0;
  double q = 0.0;
  double s = 0.0;
  double sigma = 0.0;
  double T = 0.0;
  double value = 0.0;
  double truncation_diagnostic = 0.0;
};

std::string format_number(double x);
std::string norm_csv(const std::vector<NormRow>& rows);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

// <dir>/<experiment>.json and <dir>/<experiment>.csv.
void write_report(const std::filesystem::path& dir, const FitReport& report);

}  // namespace zakharov
