#include "zakharov/fit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "zakharov/error.hpp"

namespace zakharov {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), "fit_line: size mismatch");
  require(x.size() >= 2, "fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, "fit_line: abscissae must not all coincide");
  LineFit f;
  f.points = x.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    sse += r * r;
  }
  f.rms = std::sqrt(sse / n);
  if (x.size() > 2) {
    const double s2 = sse / (n - 2.0);
    f.slope_se = std::sqrt(s2 / sxx);
    f.intercept_se = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  }
  return f;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "fit_loglog: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return fit_line(lx, ly);
}

namespace {

LineFit refit(const std::string& transform, const std::vector<double>& x, const std::vector<double>& y) {
  if (transform == "loglog") return fit_loglog(x, y);
  if (transform == "linear") return fit_line(x, y);
  if (transform == "log2y") {
    std::vector<double> ly(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) ly[i] = std::log2(y[i]);
    return fit_line(x, ly);
  }
  if (transform == "semilog_x2") {
    std::vector<double> x2(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x2[i] = x[i] * x[i];
      ly[i] = std::log(y[i]);
    }
    return fit_line(x2, ly);
  }
  throw PreconditionError("FitReport: unknown transform " + transform);
}

}  // namespace

bool FitReport::recompute() {
  fit = refit(transform, x, y);
  if (checked == "slope") checked_value = fit.slope;
  else if (checked == "rate") checked_value = -fit.slope * std::pow(extra.value("A", 1.0), 2);
  pass = checked_value >= lower && checked_value <= upper;
  return pass;
}

nlohmann::json FitReport::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["experiment"] = experiment;
  j["transform"] = transform;
  j["x"] = x;
  j["y"] = y;
  if (!y_se.empty()) j["y_se"] = y_se;
  j["fit"] = {{"slope", fit.slope},       {"intercept", fit.intercept}, {"slope_se", fit.slope_se},
              {"intercept_se", fit.intercept_se}, {"rms", fit.rms},     {"points", fit.points}};
  j["checked"] = checked;
  j["checked_value"] = checked_value;
  j["lower"] = lower;
  j["upper"] = upper;
  j["pass"] = pass;
  j["notes"] = notes;
  j["extra"] = extra;
  return j;
}

FitReport FitReport::from_json(const nlohmann::json& j) {
  FitReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.transform = j.at("transform").get<std::string>();
  r.x = j.at("x").get<std::vector<double>>();
  r.y = j.at("y").get<std::vector<double>>();
  if (j.contains("y_se")) r.y_se = j.at("y_se").get<std::vector<double>>();
  const auto& f = j.at("fit");
  r.fit.slope = f.at("slope");
  r.fit.intercept = f.at("intercept");
  r.fit.slope_se = f.at("slope_se");
  r.fit.intercept_se = f.at("intercept_se");
  r.fit.rms = f.at("rms");
  r.fit.points = f.at("points");
  r.checked = j.at("checked").get<std::string>();
  r.checked_value = j.at("checked_value");
  r.lower = j.at("lower");
  r.upper = j.at("upper");
  r.pass = j.at("pass");
  r.notes = j.value("notes", std::vector<std::string>{});
  r.extra = j.value("extra", nlohmann::json::object());
  return r;
}

std::string FitReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "x,y,y_se\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    os << x[i] << ',' << y[i] << ',' << (i < y_se.size() ? y_se[i] : 0.0) << '\n';
  return os.str();
}

double gaussian_moment_norm(double beta) {
  const double m = std::pow(2.0, beta / 2.0) * std::tgamma((beta + 1.0) / 2.0) / std::sqrt(std::numbers::pi);
  return std::pow(m, 1.0 / beta);
}

}  // namespace zakharov
