#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pvshare/report.hpp"

namespace {

void print_summary(const pvshare::ReportBundle& bundle) {
  std::cout << "scenario " << bundle.spec.id << ": " << bundle.spec.selectable_actions.size()
            << " selectable actions, " << bundle.spec.num_buildings << " buildings, "
            << bundle.spec.horizon_days << " days\n";
  for (const pvshare::OptimizerReport& opt : bundle.optimizers) {
    const auto& bd = opt.best.best_breakdown;
    std::cout << "  " << opt.name << ": weighted_sum " << bd.weighted_sum << " (value "
              << bd.value << "), " << opt.best.evaluations << " evaluations, ranking";
    for (pvshare::Action a : opt.best.best_ranking) std::cout << ' ' << pvshare::action_id(a);
    std::cout << ", local coverage " << opt.self_consumption.total_local_pct << "%\n";
  }
  std::cout << "best: " << bundle.best_optimizer << "; reports in " << bundle.config.out_dir
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulates PV/storage energy sharing in a small neighbourhood and searches "
               "action rankings that maximise locally consumed PV energy"};

  std::string config_path;
  std::string scenario, optimizer, profiles, out_dir;
  std::uint64_t seed = 0, sa_iters = 0;
  int seeds = 0, days = 0, cap = 0;
  double sa_sd = 0.0;

  app.add_option("--config", config_path, "key = value file; flags override it");
  app.add_option("--scenario", scenario, "scenario id (1, 2, 3a, 3b, 4a, 4b, 5a, 5b)");
  app.add_option("--optimizer", optimizer, "exhaustive, gd, sa or all");
  app.add_option("--seed", seed, "master seed for profiles and searches");
  app.add_option("--seeds", seeds, "number of gd/sa restarts");
  app.add_option("--days", days, "horizon length in days");
  app.add_option("--profiles", profiles, "load/pv CSV (default: generate from --seed)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--sa-sd", sa_sd, "annealing position step size");
  app.add_option("--sa-iters-per-action", sa_iters, "annealing budget per action");
  app.add_option("--cap", cap, "max action count for exhaustive search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits cleanly; bad flags are config errors
  }

  try {
    pvshare::RunConfig cfg;
    if (!config_path.empty()) cfg = pvshare::load_config_file(config_path);
    if (app.count("--scenario")) cfg.scenario = scenario;
    if (app.count("--optimizer")) cfg.optimizer = optimizer;
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--seeds")) cfg.num_seeds = seeds;
    if (app.count("--days")) cfg.days = days;
    if (app.count("--profiles")) cfg.profiles_csv = profiles;
    if (app.count("--out")) cfg.out_dir = out_dir;
    if (app.count("--sa-sd")) cfg.sa.sd = sa_sd;
    if (app.count("--sa-iters-per-action")) cfg.sa.iterations_per_action = sa_iters;
    if (app.count("--cap")) cfg.exhaustive.cap = cap;
    pvshare::validate_run_config(cfg);

    const pvshare::ReportBundle bundle = pvshare::run(cfg);
    pvshare::write_reports(bundle);
    print_summary(bundle);
    return 0;
  } catch (const pvshare::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const pvshare::CapExceeded& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
