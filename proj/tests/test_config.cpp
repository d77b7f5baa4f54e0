#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "experiments.hpp"
#include "run_config.hpp"
#include "zakharov/error.hpp"
#include "zakharov/profiles.hpp"

using namespace zakharov;
using nlohmann::json;

TEST(Profiles, ParseLength) {
  EXPECT_NEAR(parse_length("4pi"), 4.0 * std::numbers::pi, 1e-15);
  EXPECT_NEAR(parse_length("pi"), std::numbers::pi, 1e-15);
  EXPECT_EQ(parse_length(12.5), 12.5);
  EXPECT_EQ(parse_length("3"), 3.0);
  EXPECT_THROW(parse_length("abc"), PreconditionError);
}

TEST(Profiles, GaussianWithDipole) {
  const GridSpec g = make_grid(4.0 * std::numbers::pi, 16);
  const SpectralField f =
      make_profile(g, json{{"profile", "gaussian"}, {"amplitude", json::array({0.0, 2.0})}, {"dipole", {0.5, 0, 0}}})
          .to_physical();
  for (std::size_t i : {std::size_t{0}, g.index(8, 8, 8), g.index(10, 7, 9)}) {
    const Vec3 x = g.node(i);
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    EXPECT_NEAR(std::abs(f[i] - cplx(0.0, 2.0) * cplx(1.0, 0.5 * x[0]) * std::exp(-r2 / 2.0)), 0.0, 1e-14);
  }
  EXPECT_THROW(make_profile(g, json{{"profile", "sawtooth"}}), PreconditionError);
  EXPECT_EQ(make_profile(g, json{{"profile", "zero"}}).l2_norm(), 0.0);
  EXPECT_EQ(profile_names().size(), 7u);
}

TEST(RunConfig, DefaultsAndOverrides) {
  json c = cli::resolve_config(json{{"grid", {{"N", 8}}}});
  EXPECT_EQ(c["grid"]["N"], 8);
  EXPECT_EQ(c["grid"]["L"], "4pi");
  cli::apply_override(c, "time.dt=0.1");
  cli::apply_override(c, "randomization.family=bounded");
  cli::apply_override(c, "experiment.ks=[1,2]");
  EXPECT_EQ(c["time"]["dt"].get<double>(), 0.1);
  EXPECT_EQ(c["randomization"]["family"], "bounded");
  EXPECT_EQ(c["experiment"]["ks"].size(), 2u);
  EXPECT_THROW(cli::apply_override(c, "no_equals_sign"), PreconditionError);
  const GridSpec g = cli::config_grid(c);
  EXPECT_EQ(g.points(), 8);
  EXPECT_EQ(cli::config_model(c).family, Family::bounded);
  EXPECT_NEAR(cli::config_sigma(c), 0.45, 1e-15);
  EXPECT_EQ(cli::config_picard(c).dt, 0.1);
}

TEST(RunConfig, DataReplacedWholesaleAndScaled) {
  const json doc = {{"grid", {{"N", 8}}},
                    {"data", {{"u_plus", {{"profile", "gaussian"}, {"width", 1.5}}}, {"scale", 0.25}}}};
  const json c = cli::resolve_config(doc);
  EXPECT_FALSE(c["data"]["u_plus"].contains("path"));
  const GridSpec g = cli::config_grid(c);
  const auto [u, v] = cli::config_data(c, g);
  EXPECT_NEAR(h1_norm(u) + v.l2_norm(), 0.25, 1e-12);
}

TEST(RunConfig, RandomizationIsDeterministic) {
  json c = cli::resolve_config(json{{"grid", {{"L", 8.0}, {"N", 8}}}});
  cli::apply_override(c, "randomization.u=phys");
  const GridSpec g = cli::config_grid(c);
  const SpectralField u = make_profile(g, json{{"profile", "gaussian"}});
  const auto a = cli::randomize_data(c, u, u, 3), b = cli::randomize_data(c, u, u, 3);
  EXPECT_EQ((a.first - b.first).l2_norm(), 0.0);
  EXPECT_EQ((a.second - u).l2_norm(), 0.0);
  EXPECT_GT((a.first - u).l2_norm(), 0.0);
}

TEST(Experiments, UnknownIdRejected) {
  const auto ids = cli::experiment_ids();
  EXPECT_NE(std::find(ids.begin(), ids.end(), "conservation"), ids.end());
  EXPECT_THROW(cli::run_experiment("no_such_experiment", cli::default_config()), PreconditionError);
}

TEST(Experiments, GroundStateRuns) {
  const cli::ExperimentResult r = cli::run_experiment("ground_state", cli::default_config());
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.summary["q0"].get<double>(), 4.337387679977458, 1e-10);
}
