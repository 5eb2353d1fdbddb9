#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "cltlab/cltlab.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_engine = 3;

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& mode_override, bool has_seed, std::uint64_t seed_override) {
  cltlab::experiment_config cfg;
  try {
    cfg = cltlab::load_config_file(config_path);
    if (!mode_override.empty()) {
      if (mode_override == "exact") cfg.mode = cltlab::run_mode::exact;
      else if (mode_override == "mc") cfg.mode = cltlab::run_mode::mc;
      else if (mode_override == "auto") cfg.mode = cltlab::run_mode::auto_mode;
      else throw cltlab::config_error("--mode", "expected one of exact, mc, auto");
    }
    if (has_seed) cfg.seed = seed_override;
  } catch (const cltlab::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return exit_config;
  }

  try {
    cltlab::run_result res = cltlab::run(cfg, out_dir);
    cltlab::written_files files = cltlab::write_report_files(res, out_dir);
    const cltlab::verdict& v = res.rep.final_verdict;
    if (v.sigma2)
      std::printf("verdict: %s (sigma2 = %.6g)\n", cltlab::verdict_tag_name(v.tag), *v.sigma2);
    else
      std::printf("verdict: %s\n", cltlab::verdict_tag_name(v.tag));
    for (const auto& row : res.rep.rows)
      std::printf("  n=%lld engine=%s ks_std=%.6g\n", static_cast<long long>(row.meta.n),
                  row.engine.c_str(), row.ks_std);
    std::printf("wrote %s\n", files.report_json.c_str());
    std::printf("wrote %s\n", files.report_csv.c_str());
    std::printf("wrote %s\n", files.meta_json.c_str());
    return exit_ok;
  } catch (const cltlab::engine_error& e) {
    std::fprintf(stderr, "engine error: %s\n", e.what());
    return exit_engine;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "engine error: %s\n", e.what());
    return exit_engine;
  }
}

int cmd_schemes() {
  std::printf("built-in schemes:\n");
  std::printf("  iid                 n copies of a base distribution (requires scheme.base)\n");
  std::printf("  poisson-bernoulli   centered Bernoulli(lambda/n) terms (requires scheme.lambda)\n");
  std::printf("  variance-escape     rare +-n atoms carry half the variance of each term\n");
  std::printf("  dominant-term       one Rademacher term plus n-1 terms scaled by 1/n\n");
  std::printf("  custom              explicit rows keyed by n (requires scheme.rows)\n");
  return exit_ok;
}

int cmd_validate(const std::string& config_path) {
  try {
    cltlab::experiment_config cfg = cltlab::load_config_file(config_path);
    std::printf("%s", cltlab::emit_config_json(cfg).c_str());
    std::printf("\n");
    return exit_ok;
  } catch (const cltlab::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return exit_config;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clt-lab: diagnostic functionals for triangular arrays of independent "
               "random variables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cltlab::artifact_name) + " " +
                                        cltlab::artifact_version);

  std::string config_path;
  std::string out_dir = "out";
  std::string mode_override;
  std::uint64_t seed_override = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
  run_cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
  run_cmd->add_option("--out", out_dir, "output directory (default: out)");
  run_cmd->add_option("--mode", mode_override, "override engine mode: exact, mc, auto")
      ->check(CLI::IsMember({"exact", "mc", "auto"}));
  CLI::Option* seed_opt = run_cmd->add_option("--seed", seed_override, "override rng seed");

  app.add_subcommand("schemes", "list the built-in schemes");

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "parse a config and echo its canonical form");
  validate_cmd->add_option("--config", config_path, "experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_config;
  }

  if (run_cmd->parsed())
    return cmd_run(config_path, out_dir, mode_override, seed_opt->count() > 0, seed_override);
  if (app.get_subcommand("schemes")->parsed()) return cmd_schemes();
  if (validate_cmd->parsed()) return cmd_validate(config_path);
  return exit_config;
}
