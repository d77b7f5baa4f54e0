#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "run_config.hpp"
#include "zakharov/diagnostics.hpp"
#include "zakharov/error.hpp"
#include "zakharov/evolution.hpp"
#include "zakharov/field_io.hpp"
#include "zakharov/fourier_bessel.hpp"
#include "zakharov/good_frame.hpp"
#include "zakharov/parallel.hpp"
#include "zakharov/profiles.hpp"
#include "zakharov/randomize_phys.hpp"
#include "zakharov/report_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace zakharov;
using namespace zakharov::cli;

namespace {

struct Globals {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::string family;
  std::optional<double> variance, bound;
  unsigned jobs = 0;
};

json build_config(const Globals& g) {
  json c = g.config_path.empty() ? resolve_config(json::object()) : load_config(g.config_path);
  for (const auto& s : g.sets) apply_override(c, s);
  if (g.seed) c["randomization"]["seed"] = *g.seed;
  if (!g.family.empty()) c["randomization"]["family"] = g.family;
  if (g.variance) c["randomization"]["variance"] = *g.variance;
  if (g.bound) c["randomization"]["bound"] = *g.bound;
  config_grid(c);
  config_model(c);
  return c;
}

void save_with_sidecar(const fs::path& out, const SpectralField& f, const json& sidecar) {
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  save_field(out, f);
  write_json(out.string() + ".json", sidecar);
}

int cmd_make_field(const json& c, const std::string& which, const std::string& spec_text, const fs::path& out) {
  const GridSpec g = config_grid(c);
  json spec;
  if (!spec_text.empty()) {
    try {
      spec = json::parse(spec_text);
    } catch (const json::exception& e) {
      throw PreconditionError(std::string("--spec: ") + e.what());
    }
  } else {
    require(which == "u_plus" || which == "v_plus", "--field must be u_plus or v_plus");
    spec = c.at("data").at(which);
  }
  save_with_sidecar(out, make_profile(g, spec), {{"grid", c.at("grid")}, {"profile", spec}});
  return 0;
}

int cmd_randomize(const json& c, const fs::path& input, const std::string& kind, std::uint64_t draw,
                  const fs::path& out) {
  if (!fs::exists(input)) throw PreconditionError("input field '" + input.string() + "' does not exist");
  const SpectralField f = load_field(input);
  const RandomModel model = config_model(c);
  json side{{"kind", kind}, {"draw", draw}, {"input", input.filename().string()}, {"model", model.to_json()}};
  SpectralField g;
  if (kind == "phys") {
    const PartitionOfUnity pou(f.grid());
    g = randomize_physical(f, pou, model, draw);
    side["translates"] = pou.count();
  } else if (kind == "angular") {
    const auto& r = c.at("randomization");
    const GoodFrame frame = build_good_frame(r.value("k_deg_max", 2), r.value("frame_seed", std::uint64_t{1}));
    const AngularRandomizer ar(f, frame);
    g = ar.draw(model, draw);
    side["frame"] = frame.sidecar();
    side["analysis"] = ar.summary();
  } else {
    throw PreconditionError("--kind must be phys or angular");
  }
  save_with_sidecar(out, g, side);
  return 0;
}

int cmd_evolve(const json& c, const fs::path& out) {
  const GridSpec g = config_grid(c);
  const auto [up, vp] = config_data(c, g);
  const auto [u0, v0] = randomize_data(c, up, vp);
  const json e = c.value("evolve", json::object());
  const double t0 = e.value("t0", 0.0), t1 = e.value("t1", 1.0), dt = e.value("dt", 1e-3);
  EvolveOptions o;
  o.coupling = parse_coupling(e.value("coupling", std::string("real_part")));
  o.products = e.value("dealias", false) ? ProductMode::dealiased : ProductMode::collocation;
  o.snapshot_every = e.value("snapshot_every", 0);
  const double alpha = get_or(c, "physics", "alpha", 1.0);
  const Trajectory traj = evolve_forward(u0, v0, alpha, t0, t1, dt, o);
  std::string csv = "t,mass,energy,k_functional\n";
  for (std::size_t i = 0; i < traj.size(); ++i)
    csv += format_number(traj.times[i]) + ',' + format_number(mass(traj.u[i])) + ',' +
           format_number(energy(traj.u[i], traj.v[i])) + ',' + format_number(k_functional(traj.u[i])) + '\n';
  save_trajectory(out / "trajectory", traj, {{"alpha", alpha}, {"dt", dt}});
  write_text(out / "invariants.csv", csv);
  json manifest = c;
  manifest["command"] = "evolve";
  write_json(out / "manifest.json", manifest);
  return 0;
}

int cmd_final_state(const json& c, const fs::path& out) {
  const GridSpec g = config_grid(c);
  const PicardSpec spec = config_picard(c);
  const auto [up, vp] = config_data(c, g);
  const auto [u_plus, v_plus] = randomize_data(c, up, vp);
  const PicardResult res = picard_solve(u_plus, v_plus, spec);
  const ConvergenceReport& rep = res.report;
  fs::create_directories(out);
  save_field(out / "u_plus.zkrf", u_plus);
  save_field(out / "v_plus.zkrf", v_plus);
  write_json(out / "convergence.json", rep.to_json());

  const WeightedNormSpec ns = spec.norm_spec();
  const Trajectory full = res.full();
  const ScatteringSeries sc = scattering_residual(full, u_plus, v_plus, spec.alpha, ns.sigma());
  write_text(out / "scattering_residual.csv", sc.to_csv());
  write_json(out / "scattering_residual.json", sc.to_json());

  const std::string run_id = "seed" + std::to_string(config_model(c).seed);
  const XNormParts xp = xt_norm_parts(res.nonlinear, ns, spec.x_options);
  const double sigma = ns.sigma();
  std::vector<NormRow> rows = {
      {run_id, "X_energy", 0.0, 0.0, 0.0, sigma, spec.T, xp.energy, 0.0},
      {run_id, "X_strichartz", 0.0, 2.0, 0.0, sigma, spec.T, xp.strichartz, 0.0},
      {run_id, "X_aniso", 0.25 + spec.eps, ns.q_eps(), ns.angular_exponent(), sigma, spec.T, xp.aniso, 0.0},
      {run_id, "Y", 0.0, 0.0, 0.0, sigma, spec.T, yt_norm(res.nonlinear, ns), 0.0},
      {run_id, "scattering_u_weighted_sup", 0.0, 0.0, 0.0, sigma, spec.T, sc.sup_u_weighted, 0.0},
      {run_id, "scattering_v_weighted_sup", 0.0, 0.0, 0.0, sigma, spec.T, sc.sup_v_weighted, 0.0},
      {run_id, "tail_estimate", 0.0, 0.0, 0.0, sigma, spec.T_max, rep.tail_estimate, 0.0},
  };
  write_text(out / "norms.csv", norm_csv(rows));
  if (get_or(c, "solver", "save_trajectory", false)) save_trajectory(out / "trajectory", full);

  json manifest = c;
  manifest["command"] = "final-state";
  manifest["status"] = rep.status;
  manifest["sigma"] = sigma;
  write_json(out / "manifest.json", manifest);
  std::cout << "final-state: " << rep.status << " after " << rep.iterations << " iterations, contraction ratio "
            << rep.contraction_ratio << ", residual " << rep.residual << "\n";
  if (!rep.converged) {
    std::cerr << "no contraction: increase T or decrease the data size\n";
    return static_cast<int>(ErrorKind::non_contraction);
  }
  return 0;
}

int cmd_diagnose(const json& c, const std::string& id, const fs::path& out) {
  const ExperimentResult r = run_experiment(id, c);
  write_experiment(out.string(), r);
  json manifest = c;
  manifest["command"] = "diagnose";
  manifest["experiment_id"] = id;
  write_json(out / (id + ".manifest.json"), manifest);
  std::cout << id << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.summary.dump() << "\n";
  return 0;
}

// Collects every report and summary under a directory into one index.
int cmd_report(const fs::path& dir, const fs::path& out) {
  if (!fs::is_directory(dir)) throw PreconditionError("'" + dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  json index = json::array();
  std::string csv = "file,experiment,checked,checked_value,lower,upper,pass\n";
  for (const auto& p : files) {
    const json j = read_json(p);
    if (!j.is_object()) continue;
    if (j.contains("experiment") && j.contains("fit")) {
      const FitReport r = FitReport::from_json(j);
      csv += p.filename().string() + ',' + r.experiment + ',' + r.checked + ',' + format_number(r.checked_value) + ',' +
             format_number(r.lower) + ',' + format_number(r.upper) + ',' + (r.pass ? "1" : "0") + '\n';
      index.push_back({{"file", p.filename().string()}, {"experiment", r.experiment}, {"pass", r.pass}});
    } else if (j.contains("pass")) {
      index.push_back({{"file", p.filename().string()}, {"pass", j.at("pass")}});
    }
  }
  write_text(out / "report_index.csv", csv);
  write_json(out / "report_index.json", index);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized final-state solver and diagnostics for the 3D Zakharov system"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("-c,--config", g.config_path, "JSON run configuration");
  app.add_option("--set", g.sets, "override a config key, e.g. --set grid.N=32")->allow_extra_args(false);
  app.add_option("--seed", g.seed, "randomization seed");
  app.add_option("--family", g.family, "coefficient law")->check(CLI::IsMember({"gaussian", "bounded"}));
  app.add_option("--variance", g.variance, "gaussian variance");
  app.add_option("--bound", g.bound, "bounded family amplitude");
  app.add_option("--jobs", g.jobs, "worker thread bound (0 = all cores)");

  std::string field = "u_plus", spec_text, kind = "phys", experiment;
  fs::path out, input, dir;
  std::uint64_t draw = 0;

  auto* make = app.add_subcommand("make-field", "write a named profile as a field file");
  make->add_option("--field", field, "data entry to write (u_plus or v_plus)");
  make->add_option("--spec", spec_text, "inline JSON profile, overrides --field");
  make->add_option("-o,--out", out, "output .zkrf path")->required();

  auto* rnd = app.add_subcommand("randomize", "randomize a field file");
  rnd->add_option("-i,--input", input, "input field")->required();
  rnd->add_option("--kind", kind, "phys or angular")->check(CLI::IsMember({"phys", "angular"}));
  rnd->add_option("--draw", draw, "draw index");
  rnd->add_option("-o,--out", out, "output .zkrf path")->required();

  auto* evo = app.add_subcommand("evolve", "forward split-step evolution");
  evo->add_option("-o,--out", out, "run directory")->required();

  auto* fin = app.add_subcommand("final-state", "backward Picard solve from final data");
  fin->add_option("-o,--out", out, "run directory")->required();

  auto* diag = app.add_subcommand("diagnose", "run a diagnostics experiment");
  diag->add_option("-e,--experiment", experiment, "experiment id")->required();
  diag->add_option("-o,--out", out, "output directory")->required();

  auto* rep = app.add_subcommand("report", "index the reports in a directory");
  rep->add_option("-d,--dir", dir, "directory holding reports")->required();
  rep->add_option("-o,--out", out, "output directory (defaults to --dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::precondition);
  }

  try {
    set_max_threads(g.jobs);
    if (*rep) return cmd_report(dir, out.empty() ? dir : out);
    const json c = build_config(g);
    if (*make) return cmd_make_field(c, field, spec_text, out);
    if (*rnd) return cmd_randomize(c, input, kind, draw, out);
    if (*evo) return cmd_evolve(c, out);
    if (*fin) return cmd_final_state(c, out);
    if (*diag) return cmd_diagnose(c, experiment, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const json::exception& e) {
    std::cerr << "error: configuration: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::precondition);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::numerical);
  }
  return 0;
}
