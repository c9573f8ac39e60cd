// ringsqueeze CLI: figure-preset experiment runner, closed-form evaluations,
// and config validation. Exit codes: 0 ok, 1 config error, 2 runtime error.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ringsqueeze/analytic.hpp"
#include "ringsqueeze/errors.hpp"
#include "ringsqueeze/experiments.hpp"
#include "ringsqueeze/version.hpp"

namespace {

using ringsqueeze::config_error;

ringsqueeze::SimulationConfig load_or_default(const std::string& path) {
  if (path.empty()) return ringsqueeze::SimulationConfig{};
  return ringsqueeze::load_config_file(path);
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

int run_main(int argc, char** argv) {
  CLI::App app{"spin-squeezed ring-trap rotation sensor simulator"};
  app.set_version_flag("--version", std::string("ringsqueeze ") + ringsqueeze::kVersion);
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run an experiment preset and write CSV/JSON");
  std::string experiment, config_path, out_path;
  std::uint64_t seed = 0;
  std::size_t traj = 0;
  int threads = 0;
  bool have_seed = false, have_traj = false;
  run->add_option("experiment", experiment,
                  "fig4_xi_curve | fig5_seed_sweep | fig6_xi_dynamics | "
                  "fig7_rotation_sensitivity | custom")
      ->required();
  run->add_option("--config", config_path, "flat key=value config file");
  run->add_option("--seed", seed, "master RNG seed")->each([&](const std::string&) {
    have_seed = true;
  });
  run->add_option("--traj", traj, "trajectory count")->each([&](const std::string&) {
    have_traj = true;
  });
  run->add_option("--out", out_path, "output path (default <experiment>.csv/.json)");
  run->add_option("--threads", threads, "worker count (default RINGSQUEEZE_THREADS or hardware)");

  // validate
  auto* validate = app.add_subcommand("validate", "check a config file and its schedule");
  std::string validate_path;
  validate->add_option("--config", validate_path, "config file")->required();

  // analytic
  auto* an = app.add_subcommand("analytic", "closed-form evaluations");
  an->require_subcommand(1);
  double r = 0.0, chi = 3.0 * ringsqueeze::constants::pi / 4.0, nseed = 10.0;
  double nt = 1e5, rk = 0.0;
  int ell = 2, kmin = -8, kmax = 7;

  auto add_rchi = [&](CLI::App* c, bool with_seed = true) {
    c->add_option("--r", r, "squeezing parameter")->required();
    c->add_option("--chi", chi, "seed phase (default 3pi/4)");
    if (with_seed) c->add_option("--nseed", nseed, "seed atoms per mode");
  };
  auto* xi_cmd = an->add_subcommand("xi", "Wineland parameter of the prepared pair");
  add_rchi(xi_cmd);
  auto* pop_cmd = an->add_subcommand("population", "atoms per m_F=+-1 mode");
  add_rchi(pop_cmd);
  auto* jperp_cmd = an->add_subcommand("jperp", "perpendicular spin length");
  add_rchi(jperp_cmd);
  auto* thr_cmd = an->add_subcommand("threshold", "minimum seed for xi < 1");
  thr_cmd->add_option("--r", r, "squeezing parameter")->required();
  auto* ropt_cmd = an->add_subcommand("optimal-r", "r placing N_t/2 atoms per mode");
  ropt_cmd->add_option("--nt", nt, "total atoms")->required();
  ropt_cmd->add_option("--nseed", nseed, "seed atoms per mode")->required();
  auto* hl_cmd = an->add_subcommand("hl-xi", "sensitivity normalised to the Heisenberg limit");
  hl_cmd->add_option("--nt", nt, "total atoms")->required();
  hl_cmd->add_option("--nseed", nseed, "seed atoms per mode")->required();
  auto* freq_cmd = an->add_subcommand("frequencies", "interrogation beat frequencies (2kl-2l^2)");
  freq_cmd->add_option("--l", ell, "winding number")->required();
  freq_cmd->add_option("--kmin", kmin, "lowest mode index");
  freq_cmd->add_option("--kmax", kmax, "highest mode index");
  auto* var_cmd = an->add_subcommand("variance-term", "unseeded-pair variance sinh^2(2 r_k)/8");
  var_cmd->add_option("--rk", rk, "mode squeezing parameter")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    ringsqueeze::RunOverrides ov;
    if (have_seed) ov.master_seed = seed;
    if (have_traj) ov.n_traj = traj;
    ov.threads = threads;
    ov.out_path = out_path;
    const std::string written =
        ringsqueeze::run_experiment(experiment, load_or_default(config_path), ov);
    std::cout << written << "\n";
    return 0;
  }

  if (validate->parsed()) {
    const auto cfg = ringsqueeze::load_config_file(validate_path);
    cfg.phys.validate();
    ringsqueeze::ModeLayout layout{cfg.modes, cfg.phys.winding_number, false};
    layout.validate();
    const auto errors = ringsqueeze::validate_schedule(cfg.custom_schedule(), cfg.phys);
    if (errors.empty()) {
      std::cout << "ok\n";
      return 0;
    }
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
    return 1;
  }

  namespace A = ringsqueeze::analytic;
  nlohmann::json j;
  if (xi_cmd->parsed()) {
    j = {{"op", "xi"}, {"r", r}, {"chi", chi}, {"n_seed", nseed},
         {"xi", A::wineland_xi(r, chi, nseed)}};
  } else if (pop_cmd->parsed()) {
    j = {{"op", "population"}, {"r", r}, {"chi", chi}, {"n_seed", nseed},
         {"n_pm", A::mode_population(r, chi, nseed)}};
  } else if (jperp_cmd->parsed()) {
    j = {{"op", "jperp"}, {"r", r}, {"chi", chi}, {"n_seed", nseed},
         {"j_perp", A::perpendicular_spin(r, chi, nseed)}};
  } else if (thr_cmd->parsed()) {
    j = {{"op", "threshold"}, {"r", r}, {"n_seed_min", A::min_seed_for_squeezing(r)}};
  } else if (ropt_cmd->parsed()) {
    j = {{"op", "optimal-r"}, {"n_t", nt}, {"n_seed", nseed},
         {"r_opt", A::optimal_r(nt, nseed)}};
  } else if (hl_cmd->parsed()) {
    j = {{"op", "hl-xi"}, {"n_t", nt}, {"n_seed", nseed},
         {"xi_hl", A::heisenberg_xi(nt, nseed)},
         {"xi_hl_approx", A::heisenberg_xi_approx(nseed)}};
  } else if (freq_cmd->parsed()) {
    if (kmax < kmin) throw config_error("frequencies: kmax < kmin");
    nlohmann::json freqs = nlohmann::json::array();
    for (int k = kmin; k <= kmax; ++k)
      freqs.push_back({{"k", k}, {"frequency_omega", A::interrogation_frequency(ell, k)}});
    j = {{"op", "frequencies"}, {"l", ell}, {"modes", freqs}};
  } else if (var_cmd->parsed()) {
    j = {{"op", "variance-term"}, {"r_k", rk}, {"value", A::unseeded_variance_term(rk)}};
  }
  print_json(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
