#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace zakharov {

// Ordinary least squares y = intercept + slope x with standard errors.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  double rms = 0.0;
  std::size_t points = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
// Fit of log(y) against log(x); all values must be positive.
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

/*
 * Result of one experiment: the sampled abscissae and values, the fitted
 * line, and a pass/fail decision on a checked quantity against [lower, upper].
 * `transform` records how the fit was formed (loglog, semilog_x2, linear) so
 * the decision can be recomputed from the stored samples.
 */
struct FitReport {
  std::string experiment;
  std::string transform = "loglog";
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> y_se;  // optional per-sample standard errors
  LineFit fit;
  std::string checked = "slope";  // slope | rate (-slope A^2, A in extra) | value
  double checked_value = 0.0;
  double lower = -1e300;
  double upper = 1e300;
  bool pass = false;
  std::vector<std::string> notes;
  nlohmann::json extra = nlohmann::json::object();

  // Refits from x, y and re-evaluates pass for checked == "slope"; returns pass.
  bool recompute();
  nlohmann::json to_json() const;
  static FitReport from_json(const nlohmann::json& j);
  // Columns: x, y, y_se.
  std::string to_csv() const;
};

// Standard normal L^beta norm (E|Z|^beta)^{1/beta}.
double gaussian_moment_norm(double beta);

}  // namespace zakharov
