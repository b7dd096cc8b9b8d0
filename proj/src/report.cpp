#include "pvshare/report.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pvshare/optim.hpp"
#include "pvshare/rng.hpp"
#include "text_format.hpp"

namespace pvshare {

namespace {

using ordered_json = nlohmann::ordered_json;

double total_load_kwh(const ProfileSet& profiles) {
  double total = 0.0;
  for (const EnergyProfile& p : profiles.loads) {
    total = std::accumulate(p.kwh.begin(), p.kwh.end(), total);
  }
  return total;
}

}  // namespace

SelfConsumption decompose_self_consumption(const FlowLedger& ledger, const ProfileSet& profiles) {
  if (profiles.loads.size() != static_cast<std::size_t>(ledger.num_buildings)) {
    throw std::invalid_argument("profiles and ledger disagree on the number of buildings");
  }
  for (const EnergyProfile& p : profiles.loads) {
    if (p.kwh.size() != static_cast<std::size_t>(ledger.steps)) {
      throw std::invalid_argument("profiles and ledger disagree on the horizon");
    }
  }
  const double denom = total_load_kwh(profiles);
  if (!(denom > 0.0)) throw std::invalid_argument("cannot decompose against zero load energy");

  double own_pv = 0.0, neighbour_pv = 0.0, own_storage = 0.0, neighbour_storage = 0.0;
  for (const LedgerCell& c : ledger.cells) {
    own_pv += c.pv_to_own_loads;
    neighbour_pv += c.pv_from_neighbour_to_loads;
    own_storage += c.storage_to_own_loads;
    neighbour_storage += c.storage_from_neighbour_to_loads;
  }

  SelfConsumption sc;
  sc.own_pv_pct = 100.0 * own_pv / denom;
  sc.neighbour_pv_pct = 100.0 * neighbour_pv / denom;
  sc.own_storage_pct = 100.0 * own_storage / denom;
  sc.neighbour_storage_pct = 100.0 * neighbour_storage / denom;
  sc.total_local_pct =
      sc.own_pv_pct + sc.neighbour_pv_pct + sc.own_storage_pct + sc.neighbour_storage_pct;
  return sc;
}

namespace {

struct LedgerStats {
  double avg_unserved = 0.0;
  double avg_pv_waste = 0.0;
};

LedgerStats ledger_stats(const FlowLedger& ledger) {
  double unserved = 0.0, waste = 0.0;
  for (const LedgerCell& c : ledger.cells) {
    unserved += c.energy_necessary_to_obtain;
    waste += c.pv_energy_remaining;
  }
  const double divisor =
      static_cast<double>(ledger.steps / ledger.steps_per_day) * ledger.num_buildings;
  return {unserved / divisor, waste / divisor};
}

bool optimizer_requested(const std::string& configured, const std::string& name) {
  if (configured == "all") return true;
  if (name == "exhaustive") return configured == "exhaustive";
  if (name == "gradient_descent") return configured == "gd" || configured == "gradient_descent";
  return configured == "sa" || configured == "simulated_annealing";
}

}  // namespace

ReportBundle run(const RunConfig& cfg) {
  validate_run_config(cfg);

  ReportBundle bundle;
  bundle.config = cfg;
  bundle.spec = scenario_preset(cfg.scenario);
  bundle.spec.horizon_days = cfg.days;

  ProfileSet profiles;
  if (cfg.profiles_csv.empty()) {
    profiles = generated_profiles(cfg.seed, bundle.spec.num_buildings, cfg.days);
  } else {
    std::ifstream in(cfg.profiles_csv);
    if (!in) throw ConfigError("cannot open profiles file " + cfg.profiles_csv);
    try {
      profiles = import_csv(in);
    } catch (const ProfileFormatError& e) {
      throw ConfigError(cfg.profiles_csv + ": " + e.what());
    }
    const auto steps = static_cast<std::size_t>(cfg.days) * bundle.spec.steps_per_day;
    if (profiles.loads.size() != static_cast<std::size_t>(bundle.spec.num_buildings) ||
        profiles.loads.front().kwh.size() != steps) {
      throw ConfigError(cfg.profiles_csv + ": expected " +
                        std::to_string(bundle.spec.num_buildings) + " buildings x " +
                        std::to_string(steps) + " steps");
    }
  }

  const SearchContext ctx{bundle.spec, &profiles, cfg.weights};

  struct Finished {
    OptimizerReport report;
    FlowLedger ledger;
  };
  std::vector<Finished> finished;

  const auto finish = [&](std::string name, SearchResult best, std::vector<SeedOutcome> per_seed) {
    Finished f;
    f.ledger = simulate(bundle.spec, best.best_ranking, profiles);
    f.report.name = std::move(name);
    f.report.best = std::move(best);
    f.report.per_seed = std::move(per_seed);
    f.report.self_consumption = decompose_self_consumption(f.ledger, profiles);
    const LedgerStats stats = ledger_stats(f.ledger);
    f.report.avg_unserved_kwh = stats.avg_unserved;
    f.report.avg_pv_waste_kwh = stats.avg_pv_waste;
    finished.push_back(std::move(f));
  };

  if (optimizer_requested(cfg.optimizer, "exhaustive")) {
    finish("exhaustive", exhaustive_search(ctx, cfg.exhaustive), {});
  }

  // Restart k of a multi-seed search runs on derive_seed(seed, k); ties keep
  // the earliest seed.
  const auto multi_seed = [&](auto&& search) {
    std::vector<SeedOutcome> outcomes;
    SearchResult best;
    bool have_best = false;
    for (int k = 1; k <= cfg.num_seeds; ++k) {
      const std::uint64_t seed_k = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
      SearchResult r = search(seed_k);
      outcomes.push_back({seed_k, r.best_breakdown.value, r.best_breakdown.weighted_sum,
                          r.evaluations, r.rounds, r.best_ranking});
      if (!have_best || compare(r.best_breakdown, best.best_breakdown) < 0) {
        best = std::move(r);
        have_best = true;
      }
    }
    return std::pair(std::move(best), std::move(outcomes));
  };

  if (optimizer_requested(cfg.optimizer, "gradient_descent")) {
    auto [best, outcomes] = multi_seed([&](std::uint64_t s) { return gradient_descent(ctx, s); });
    finish("gradient_descent", std::move(best), std::move(outcomes));
  }
  if (optimizer_requested(cfg.optimizer, "simulated_annealing")) {
    auto [best, outcomes] = multi_seed([&](std::uint64_t s) {
      SaConfig sa = cfg.sa;
      sa.seed = s;
      return simulated_annealing(ctx, sa);
    });
    finish("simulated_annealing", std::move(best), std::move(outcomes));
  }

  if (finished.empty()) throw ConfigError("no optimizer selected");

  std::size_t winner = 0;
  for (std::size_t i = 1; i < finished.size(); ++i) {
    if (compare(finished[i].report.best.best_breakdown,
                finished[winner].report.best.best_breakdown) < 0) {
      winner = i;
    }
  }
  bundle.best_optimizer = finished[winner].report.name;
  bundle.best_ranking = finished[winner].report.best.best_ranking;
  bundle.best_ledger = std::move(finished[winner].ledger);
  for (Finished& f : finished) bundle.optimizers.push_back(std::move(f.report));
  return bundle;
}

namespace {

ordered_json ranking_json(const Ranking& ranking) {
  ordered_json arr = ordered_json::array();
  for (Action a : ranking) arr.push_back(action_id(a));
  return arr;
}

ordered_json breakdown_json(const ObjectiveBreakdown& bd) {
  // +inf serialises as null; every finite double round-trips exactly.
  return ordered_json{{"value", bd.value},
                      {"weighted_sum", bd.weighted_sum},
                      {"avg_direct_local_pv", bd.avg_direct_local_pv},
                      {"avg_direct_own_pv", bd.avg_direct_own_pv},
                      {"avg_local_storage", bd.avg_local_storage},
                      {"avg_own_storage_loading", bd.avg_own_storage_loading},
                      {"gated_step_count", bd.gated_step_count}};
}

ordered_json self_consumption_json(const SelfConsumption& sc) {
  return ordered_json{{"own_pv_pct", sc.own_pv_pct},
                      {"neighbour_pv_pct", sc.neighbour_pv_pct},
                      {"own_storage_pct", sc.own_storage_pct},
                      {"neighbour_storage_pct", sc.neighbour_storage_pct},
                      {"total_local_pct", sc.total_local_pct}};
}

}  // namespace

std::string report_json(const ReportBundle& bundle) {
  const RunConfig& cfg = bundle.config;
  ordered_json doc;
  doc["schema_version"] = 1;

  ordered_json scenario;
  scenario["id"] = bundle.spec.id;
  scenario["selectable_actions"] = ranking_json(bundle.spec.selectable_actions);
  scenario["num_buildings"] = bundle.spec.num_buildings;
  scenario["horizon_days"] = bundle.spec.horizon_days;
  scenario["steps_per_day"] = bundle.spec.steps_per_day;
  scenario["storage_capacity_kwh"] = bundle.spec.storage_capacity_kwh;
  doc["scenario"] = scenario;

  ordered_json run;
  run["optimizer"] = cfg.optimizer;
  run["seed"] = cfg.seed;
  run["seeds"] = cfg.num_seeds;
  run["days"] = cfg.days;
  run["profiles"] = cfg.profiles_csv.empty() ? "generated" : cfg.profiles_csv;
  run["weights"] = ordered_json{{"direct_local_pv", cfg.weights.direct_local_pv},
                                {"direct_own_pv", cfg.weights.direct_own_pv},
                                {"local_storage", cfg.weights.local_storage},
                                {"own_storage_loading", cfg.weights.own_storage_loading}};
  run["sa"] = ordered_json{
      {"sd", cfg.sa.sd},
      {"iterations_per_action", cfg.sa.iterations_per_action},
      {"initial_temperature", cfg.sa.initial_temperature},
      {"freeze_threshold", cfg.sa.freeze_threshold},
      {"cooling_factor", cfg.sa.cooling_factor ? ordered_json(*cfg.sa.cooling_factor)
                                               : ordered_json(nullptr)}};
  run["exhaustive_cap"] = cfg.exhaustive.cap;
  doc["run"] = run;

  ordered_json results = ordered_json::array();
  for (const OptimizerReport& opt : bundle.optimizers) {
    ordered_json entry;
    entry["optimizer"] = opt.name;
    entry["evaluations"] = opt.best.evaluations;
    entry["rounds"] = opt.best.rounds;
    entry["best_ranking"] = ranking_json(opt.best.best_ranking);
    entry["best"] = breakdown_json(opt.best.best_breakdown);
    if (!opt.best.optimal_set.empty()) {
      ordered_json classes = ordered_json::array();
      for (const Ranking& r : opt.best.optimal_set) classes.push_back(ranking_json(r));
      entry["optimal_rankings"] = classes;
    }
    if (!opt.per_seed.empty()) {
      ordered_json seeds = ordered_json::array();
      for (const SeedOutcome& s : opt.per_seed) {
        seeds.push_back(ordered_json{{"seed", s.seed},
                                     {"value", s.value},
                                     {"weighted_sum", s.weighted_sum},
                                     {"evaluations", s.evaluations},
                                     {"rounds", s.rounds},
                                     {"ranking", ranking_json(s.ranking)}});
      }
      entry["seeds"] = seeds;
    }
    entry["self_consumption"] = self_consumption_json(opt.self_consumption);
    entry["avg_unserved_kwh"] = opt.avg_unserved_kwh;
    entry["avg_pv_waste_kwh"] = opt.avg_pv_waste_kwh;
    if (!opt.best.trace.empty()) {
      ordered_json trace = ordered_json::array();
      for (const auto& [iter, value] : opt.best.trace) {
        trace.push_back(ordered_json::array({iter, value}));
      }
      entry["trace"] = trace;
    }
    results.push_back(entry);
  }
  doc["results"] = results;
  doc["best"] = ordered_json{{"optimizer", bundle.best_optimizer},
                             {"ranking", ranking_json(bundle.best_ranking)}};
  return doc.dump(2) + "\n";
}

namespace {

std::string join_ranking(const Ranking& ranking) {
  std::string out;
  for (Action a : ranking) {
    if (!out.empty()) out += ' ';
    out += std::to_string(action_id(a));
  }
  return out;
}

}  // namespace

void write_table_v(const ReportBundle& bundle, std::ostream& out) {
  out << "optimizer,selectable_actions,evaluations,rounds,best_ranking\n";
  for (const OptimizerReport& opt : bundle.optimizers) {
    out << opt.name << ',' << bundle.spec.selectable_actions.size() << ','
        << opt.best.evaluations << ',' << opt.best.rounds << ','
        << join_ranking(opt.best.best_ranking) << '\n';
  }
}

void write_table_vii(const ReportBundle& bundle, std::ostream& out) {
  const auto f = [](double v) { return detail::format_double(v); };
  out << "optimizer,value,weighted_sum,avg_direct_local_pv,avg_direct_own_pv,"
         "avg_local_storage,avg_own_storage_loading,gated_steps,avg_unserved_kwh,"
         "avg_pv_waste_kwh\n";
  for (const OptimizerReport& opt : bundle.optimizers) {
    const ObjectiveBreakdown& bd = opt.best.best_breakdown;
    out << opt.name << ',' << f(bd.value) << ',' << f(bd.weighted_sum) << ','
        << f(bd.avg_direct_local_pv) << ',' << f(bd.avg_direct_own_pv) << ','
        << f(bd.avg_local_storage) << ',' << f(bd.avg_own_storage_loading) << ','
        << bd.gated_step_count << ',' << f(opt.avg_unserved_kwh) << ','
        << f(opt.avg_pv_waste_kwh) << '\n';
  }
}

void write_table_viii(const ReportBundle& bundle, std::ostream& out) {
  const auto f = [](double v) { return detail::format_double(v); };
  out << "optimizer,own_pv_pct,neighbour_pv_pct,own_storage_pct,neighbour_storage_pct,"
         "total_local_pct\n";
  for (const OptimizerReport& opt : bundle.optimizers) {
    const SelfConsumption& sc = opt.self_consumption;
    out << opt.name << ',' << f(sc.own_pv_pct) << ',' << f(sc.neighbour_pv_pct) << ','
        << f(sc.own_storage_pct) << ',' << f(sc.neighbour_storage_pct) << ','
        << f(sc.total_local_pct) << '\n';
  }
}

void write_plot_csv(const ReportBundle& bundle, std::ostream& out) {
  const auto f = [](double v) { return detail::format_double(v); };
  out << "optimizer,channel,percent\n";
  for (const OptimizerReport& opt : bundle.optimizers) {
    const SelfConsumption& sc = opt.self_consumption;
    out << opt.name << ",own_pv," << f(sc.own_pv_pct) << '\n';
    out << opt.name << ",neighbour_pv," << f(sc.neighbour_pv_pct) << '\n';
    out << opt.name << ",own_storage," << f(sc.own_storage_pct) << '\n';
    out << opt.name << ",neighbour_storage," << f(sc.neighbour_storage_pct) << '\n';
    out << opt.name << ",total_local," << f(sc.total_local_pct) << '\n';
  }
}

void write_reports(const ReportBundle& bundle) {
  namespace fs = std::filesystem;
  const fs::path dir(bundle.config.out_dir);
  fs::create_directories(dir);

  const auto open = [&](const std::string& name) {
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
  };

  { auto out = open("report.json"); out << report_json(bundle); }
  { auto out = open("tableV.csv"); write_table_v(bundle, out); }
  { auto out = open("tableVII.csv"); write_table_vii(bundle, out); }
  { auto out = open("tableVIII.csv"); write_table_viii(bundle, out); }
  { auto out = open("ledger_" + bundle.spec.id + ".csv"); export_ledger_csv(bundle.best_ledger, out); }
  { auto out = open("plot_" + bundle.spec.id + ".csv"); write_plot_csv(bundle, out); }
}

}  // namespace pvshare
