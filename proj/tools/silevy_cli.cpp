// Command-line front end: simulate set-indexed Levy paths and Wiener-type
// integrals, estimate Holder exponents, and verify the regularity predictions
// at desk scale.  All outputs are deterministic given the seed.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "silevy/experiments.hpp"
#include "silevy/io.hpp"

namespace {

using silevy::ExperimentConfig;

struct CommonFlags {
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int reps = -1;
  int threads = -1;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required = true) {
  auto* opt = cmd->add_option("--config", flags.config_path, "experiment config (JSON)");
  if (config_required) opt->required();
  cmd->add_option("--out", flags.out, "output directory (overrides config)");
  cmd->add_option("--seed", flags.seed, "master seed (overrides config)")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--reps", flags.reps, "replication count (overrides config)");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = hardware)");
}

ExperimentConfig load(const CommonFlags& flags) {
  ExperimentConfig cfg = silevy::load_config_file(flags.config_path);
  if (!flags.out.empty()) cfg.out = flags.out;
  if (flags.seed_set) cfg.seed = flags.seed;
  if (flags.reps >= 0) cfg.replications = flags.reps;
  if (flags.threads >= 0) cfg.threads = flags.threads;
  return cfg;
}

int cmd_simulate(const CommonFlags& flags) {
  const ExperimentConfig cfg = load(flags);
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out);

  nlohmann::json meta;
  meta["config"] = cfg.echo;
  meta["seed"] = cfg.seed;
  meta["replications"] = cfg.replications;
  meta["mean_rate"] = silevy::mean_rate(cfg.triplet);
  meta["var_rate"] = silevy::var_rate(cfg.triplet);
  meta["beta"] = cfg.triplet.nu.beta();
  {
    const silevy::CellGrid grid(cfg.space.domain, cfg.mesh_level);
    nlohmann::json eps_info = nlohmann::json::array();
    for (double e : cfg.eps_ladder) {
      nlohmann::json ej;
      ej["eps"] = e;
      ej["expected_jumps"] = cfg.triplet.nu.is_zero()
                                 ? 0.0
                                 : grid.total_measure(cfg.space.measure.scale) *
                                       cfg.triplet.nu.mass_above(e);
      eps_info.push_back(ej);
    }
    meta["truncation"] = eps_info;
  }
  silevy::write_text_file(cfg.out + "/run_meta.json", meta.dump(2) + "\n");

  for (std::size_t ei = 0; ei < cfg.eps_ladder.size(); ++ei) {
    const double eps = cfg.eps_ladder[ei];
    std::string dir = cfg.out + "/paths";
    if (cfg.eps_ladder.size() > 1) dir += "_eps" + std::to_string(ei);
    for (int rep = 0; rep < cfg.replications; ++rep) {
      const silevy::SamplePath path =
          silevy::sample_path(cfg.space, cfg.triplet, cfg.mesh_level, eps, cfg.seed,
                              static_cast<std::uint64_t>(rep));
      if (cfg.integrand) {
        auto shared = std::make_shared<silevy::SamplePath>(path);
        const silevy::SamplePathY y = silevy::make_path_Y(shared, *cfg.integrand, cfg.cancel_drift);
        silevy::export_path(dir, static_cast<std::size_t>(rep), cfg, path, &y);
      } else {
        silevy::export_path(dir, static_cast<std::size_t>(rep), cfg, path, nullptr);
      }
    }
  }
  std::cout << "simulate: wrote " << cfg.replications << " path(s) per truncation to " << cfg.out
            << "\n";
  return 0;
}

int cmd_integrate(const CommonFlags& flags) {
  const ExperimentConfig cfg = load(flags);
  if (!cfg.integrand) throw silevy::ConfigError("integrate: config needs an integrand");
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out);

  nlohmann::json report;
  report["config"] = cfg.echo;
  report["lx_norm"] = silevy::lx_norm(cfg.space, *cfg.integrand, cfg.triplet, cfg.mesh_level);
  nlohmann::json reps = nlohmann::json::array();
  const silevy::MeshLevel mesh(cfg.space.domain, cfg.mesh_level);
  for (int rep = 0; rep < cfg.replications; ++rep) {
    const silevy::SamplePathY y =
        silevy::sample_Y(cfg.space, cfg.triplet, *cfg.integrand, cfg.mesh_level, cfg.eps(),
                         cfg.seed, static_cast<std::uint64_t>(rep), cfg.cancel_drift);
    nlohmann::json row;
    row["rep"] = rep;
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& t : cfg.targets) {
      const auto a = mesh.round_up(silevy::IndexSet::atom(t));
      nlohmann::json v;
      v["target"] = cfg.space.domain.describe_point(t);
      if (a)
        v["Y"] = silevy::delta_Y(y, silevy::IncrementSet::of(*a));
      else
        v["Y"] = "unresolved";
      vals.push_back(v);
    }
    row["values"] = vals;
    reps.push_back(row);
  }
  report["replications"] = reps;
  silevy::write_text_file(cfg.out + "/integrate.json", report.dump(2) + "\n");
  std::cout << "integrate: report written to " << cfg.out << "/integrate.json\n";
  return 0;
}

int cmd_exponent(const CommonFlags& flags) {
  const ExperimentConfig cfg = load(flags);
  const nlohmann::json report = silevy::run_exponent(cfg);
  std::filesystem::create_directories(cfg.out);
  silevy::write_text_file(cfg.out + "/exponent.json", report.dump(2) + "\n");
  std::cout << "exponent: report written to " << cfg.out << "/exponent.json\n";
  return 0;
}

int cmd_verify(const CommonFlags& flags) {
  silevy::VerifyOptions opt;
  if (flags.seed_set) opt.seed = flags.seed;
  if (flags.reps >= 0) opt.reps = flags.reps;
  if (flags.threads >= 0) opt.threads = flags.threads;
  const silevy::VerifyResult result = silevy::run_verify(opt);
  for (const auto& v : result.verdicts)
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << v.id << ": " << v.detail << "\n";
  const std::string out = flags.out.empty() ? "out" : flags.out;
  std::filesystem::create_directories(out);
  silevy::write_text_file(out + "/verify.json", result.report.dump(2) + "\n");
  return result.all_pass() ? 0 : 1;
}

int cmd_info(const CommonFlags& flags) {
  const ExperimentConfig cfg = load(flags);
  nlohmann::json info;
  info["config"] = cfg.echo;
  info["beta"] = cfg.triplet.nu.beta();
  info["mean_rate"] = silevy::mean_rate(cfg.triplet);
  info["var_rate"] = silevy::var_rate(cfg.triplet);
  const auto abs_small = cfg.triplet.nu.abs_small();
  info["abs_small"] = abs_small.finite ? nlohmann::json(abs_small.value) : nlohmann::json("inf");
  {
    nlohmann::json psis = nlohmann::json::array();
    for (double xi : {0.5, 1.0, 2.0}) {
      const auto v = silevy::psi(cfg.triplet, xi);
      psis.push_back({{"xi", xi}, {"re", v.real()}, {"im", v.imag()}});
    }
    info["psi"] = psis;
  }
  if (cfg.integrand)
    info["lx_norm"] = silevy::lx_norm(cfg.space, *cfg.integrand, cfg.triplet, cfg.mesh_level);
  if (cfg.space.domain.is_box() && cfg.space.domain.dim() == 1 && !cfg.targets.empty() &&
      !cfg.triplet.nu.is_zero()) {
    nlohmann::json preds = nlohmann::json::array();
    for (const auto& t : cfg.targets) {
      const silevy::Integrand f = cfg.integrand.value_or(silevy::Integrand::constant(1.0));
      nlohmann::json p;
      p["target"] = cfg.space.domain.describe_point(t);
      p["alpha_Y"] = silevy::json_of_double(
          silevy::predict_1d(cfg.space, f, t, cfg.triplet.nu.beta()));
      preds.push_back(p);
    }
    info["prediction_1d"] = preds;
  }
  std::cout << info.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set-indexed Levy process simulation and regularity toolkit"};
  app.require_subcommand(1);

  CommonFlags sim_flags, int_flags, exp_flags, ver_flags, info_flags;
  auto* sim = app.add_subcommand("simulate", "simulate and export sample paths");
  add_common(sim, sim_flags);
  auto* integ = app.add_subcommand("integrate", "evaluate Y = int f dX on targets");
  add_common(integ, int_flags);
  auto* expo = app.add_subcommand("exponent", "estimate Holder exponents");
  add_common(expo, exp_flags);
  auto* ver = app.add_subcommand("verify", "run the built-in verification experiments");
  add_common(ver, ver_flags, /*config_required=*/false);
  auto* info = app.add_subcommand("info", "print derived quantities for a config");
  add_common(info, info_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_flags);
    if (integ->parsed()) return cmd_integrate(int_flags);
    if (expo->parsed()) return cmd_exponent(exp_flags);
    if (ver->parsed()) return cmd_verify(ver_flags);
    if (info->parsed()) return cmd_info(info_flags);
  } catch (const silevy::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
