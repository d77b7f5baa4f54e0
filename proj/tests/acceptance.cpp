// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here
// and checked against the experiment summaries.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "run_config.hpp"
#include "zakharov/report_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using zakharov::cli::ExperimentResult;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [violated]");
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double max_of(const json& a) {
  double m = -INFINITY;
  for (const auto& v : a) m = std::max(m, v.get<double>());
  return m;
}

struct Criterion {
  std::string name;
  std::string experiment;
  double runtime_limit;  // seconds, <= 0 for none
  std::function<void(const json&, Verdict&)> check;
};

std::vector<Criterion> criteria() {
  return {
      {"conservation", "conservation", 300.0,
       [](const json& s, Verdict& v) {
         const double m = max_of(s["mass_drift"]), e = max_of(s["energy_drift"]);
         const double ratio = s["energy_ratio"].get<double>();
         v.check(m < 1e-8, "mass drift " + num(m) + " < 1e-8");
         v.check(e < 1e-4, "energy drift " + num(e) + " < 1e-4");
         v.check(ratio > 3.5 && ratio < 4.5, "dt-halving ratio " + num(ratio) + " in (3.5, 4.5)");
       }},
      {"standing_wave", "standing_wave", 0.0,
       [](const json& s, Verdict& v) {
         const double e = s["sup_relative_error"].get<double>();
         v.check(e < 1e-3, "sup relative error " + num(e) + " < 1e-3");
       }},
      {"ground_state", "ground_state", 0.0,
       [](const json& s, Verdict& v) {
         const double r = s["residual"].get<double>(), id = s["identity_relative"].get<double>();
         v.check(r < 1e-8, "ODE residual " + num(r) + " < 1e-8");
         v.check(id < 1e-6, "identity " + num(id) + " < 1e-6");
       }},
      {"angular_randomization", "angular_randomization", 0.0,
       [](const json& s, Verdict& v) {
         v.check(s["draws"].get<int>() >= 200, "draws " + std::to_string(s["draws"].get<int>()) + " >= 200");
         for (const auto& c : s["cases"]) {
           const double rt = c["roundtrip"].get<double>();
           v.check(rt < 1e-4, "roundtrip " + num(rt) + " < 1e-4");
           for (const auto& m : c["moments"]) {
             const double z = m["moment"]["z"].get<double>();
             v.check(std::abs(z) <= 3.0, m["family"].get<std::string>() + " |z| " + num(std::abs(z)) + " <= 3");
           }
         }
       }},
      {"good_frame", "good_frame", 0.0,
       [](const json& s, Verdict& v) {
         const double c = s["C_frame"].get<double>();
         v.check(s["k_deg_max"].get<int>() >= 15, "degrees up to " + std::to_string(s["k_deg_max"].get<int>()));
         v.check(s["attempts"].get<int>() <= 5, "attempts " + std::to_string(s["attempts"].get<int>()) + " <= 5");
         double worst = 0.0;
         for (const auto& q : s["per_q"]) worst = std::max(worst, q["max_ratio"].get<double>());
         v.check(s["per_q"].size() == 4 && worst <= c && std::isfinite(c),
                 "max_l ||b||_q / sqrt q " + num(worst) + " <= C_frame " + num(c));
       }},
      {"large_deviation", "large_deviation", 120.0,
       [](const json& s, Verdict& v) {
         for (const auto& r : s["gaussian"]["gaussian_ratios"]) {
           const double x = r.get<double>();
           v.check(x >= 0.9 && x <= 1.1, "gaussian moment ratio " + num(x) + " in [0.9, 1.1]");
         }
         for (const char* f : {"gaussian", "bounded"}) {
           const double slope = s[f]["slope"].get<double>();
           v.check(slope <= 0.55, std::string(f) + " exponent " + num(slope) + " <= 0.55");
         }
       }},
      {"tail_probability", "tail_probability", 0.0,
       [](const json& s, Verdict& v) {
         const double rate = s["rate"].get<double>();
         v.check(rate >= 0.4 && rate <= 0.6, "rate " + num(rate) + " in [0.4, 0.6]");
       }},
      {"mismatch_decay", "mismatch_decay", 0.0,
       [](const json& s, Verdict& v) {
         const double sp = s["spatial"]["slope"].get<double>();
         v.check(sp <= -3.0, "spatial slope " + num(sp) + " <= -3");
         for (const char* k : {"mismatch_frequency", "mismatch_frequency_low"}) {
           const double f = s[k]["slope"].get<double>();
           v.check(f <= -2.0, std::string(k) + " slope " + num(f) + " <= -2");
         }
       }},
      {"dispersive_decay", "dispersive_decay", 1800.0,
       [](const json& s, Verdict& v) {
         for (const auto& c : s["cases"]) {
           const double q = c["case"][0], r = c["case"][1], mu = c["case"][2];
           const double expected = -(1.5 - 1.0 / q - 3.0 / r - mu);
           const double slope = c["slope"].get<double>();
           v.check(std::abs(slope - expected) <= 0.15,
                   "(" + num(q) + "," + num(r) + "," + num(mu) + ") slope " + num(slope) + " vs " + num(expected));
         }
         v.check(s["cases"].size() == 2, "two cases");
       }},
      {"wave_aniso", "wave_aniso", 0.0,
       [](const json& s, Verdict& v) {
         for (const auto& c : s["cases"]) {
           const double slope = c["slope"].get<double>();
           const std::string tag = "(" + num(c["p"]) + "," + num(c["q"]) + ",s=" + num(c["s"]) + ")";
           v.check(c["finite"].get<bool>() && slope <= 0.6, tag + " exponent " + num(slope) + " <= 0.6");
         }
         v.check(s["cases"].size() == 4, "four cases");
         bool refused = false;
         for (const auto& r : s["refused"])
           refused = refused || (r["p"] == 2.0 && r["q"] == 4.0 && r["refused"].get<bool>());
         v.check(refused, "(2,4) refused");
       }},
      {"final_state", "final_state", 0.0,
       [](const json& s, Verdict& v) {
         const json& c = s["convergence"];
         const double tol = s["spec"]["tol"].get<double>(), dt = s["spec"]["dt"].get<double>();
         v.check(c["status"] == "converged", "status " + c["status"].get<std::string>());
         v.check(c["iterations"].get<int>() <= 12, "iterations " + std::to_string(c["iterations"].get<int>()) + " <= 12");
         const double ratio = c["contraction_ratio"].get<double>();
         v.check(ratio < 0.5, "contraction " + num(ratio) + " < 0.5");
         const double res = c["residual"].get<double>();
         v.check(tol <= 1e-8 && res < tol, "residual " + num(res) + " < " + num(tol));
         const double fwd = s["forward_relative_difference"].get<double>();
         v.check(fwd <= 10.0 * dt * dt + tol, "forward check " + num(fwd) + " <= " + num(10.0 * dt * dt + tol));
         const double agree = s["seed_agreement"].get<double>();
         v.check(s["second_convergence"]["converged"].get<bool>() && agree <= 10.0 * tol,
                 "seed agreement " + num(agree) + " <= " + num(10.0 * tol));
       }},
      {"threshold", "threshold", 0.0,
       [](const json& s, Verdict& v) {
         const double rep = s["reproducibility"].get<double>();
         v.check(rep <= 1e-6, "lambda* reproducible " + num(rep) + " <= 1e-6");
         v.check(s["scaled_2_above"].get<bool>(), "2x data above");
         v.check(s["scaled_1e-2_below"].get<bool>(), "1e-2 scaled data below");
       }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path fixtures = ZAKHAROV_ACCEPTANCE_FIXTURES;
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      const json config = zakharov::cli::resolve_config(zakharov::read_json(fixtures / (c.experiment + ".json")));
      const ExperimentResult r = zakharov::cli::run_experiment(c.experiment, config);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      c.check(r.summary, v);
      if (c.runtime_limit > 0.0) v.check(secs < c.runtime_limit, "runtime " + num(secs) + " s < " + num(c.runtime_limit) + " s");
      else v.detail << "; runtime " << num(secs) << " s";
    } catch (const std::exception& e) {
      v.check(false, std::string("error: ") + e.what());
    }
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", c.name.c_str(), v.detail.str().c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
