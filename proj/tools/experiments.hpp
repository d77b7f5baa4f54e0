#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zakharov/fit.hpp"

namespace zakharov::cli {

// Outcome of one diagnose experiment: fit reports, extra CSV tables and a summary.
struct ExperimentResult {
  std::string id;
  bool pass = false;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<FitReport> reports;
  std::map<std::string, std::string> tables;  // file stem -> CSV text
};

std::vector<std::string> experiment_ids();

// Runs experiment `id` with the resolved configuration; unknown ids throw
// PreconditionError listing the available ones.
ExperimentResult run_experiment(const std::string& id, const nlohmann::json& config);

// <dir>/<id>.summary.json, every report as <dir>/<experiment>.{json,csv}, tables as <dir>/<stem>.csv.
void write_experiment(const std::string& dir, const ExperimentResult& result);

}  // namespace zakharov::cli
