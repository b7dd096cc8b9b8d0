#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pvshare/config.hpp"
#include "pvshare/dispatch.hpp"

namespace pvshare {

// How the supplied load energy was covered, in percent of total load.
struct SelfConsumption {
  double own_pv_pct = 0.0;                // pv -> own loads, directly
  double neighbour_pv_pct = 0.0;          // pv received from neighbours -> loads
  double own_storage_pct = 0.0;           // own storage -> own loads
  double neighbour_storage_pct = 0.0;     // neighbour storage -> loads
  double total_local_pct = 0.0;           // sum of the four channels
};

// Denominator is the profiles' total load energy; ledger and profiles must
// describe the same run. Throws std::invalid_argument on zero load.
SelfConsumption decompose_self_consumption(const FlowLedger& ledger, const ProfileSet& profiles);

struct SeedOutcome {
  std::uint64_t seed = 0;
  double value = 0.0;
  double weighted_sum = 0.0;
  std::uint64_t evaluations = 0;
  int rounds = 0;
  Ranking ranking;
};

struct OptimizerReport {
  std::string name;  // "exhaustive" | "gradient_descent" | "simulated_annealing"
  SearchResult best;
  std::vector<SeedOutcome> per_seed;       // gd/sa; empty for exhaustive
  SelfConsumption self_consumption;        // of the best ranking's full run
  double avg_unserved_kwh = 0.0;           // per building-day, best ranking
  double avg_pv_waste_kwh = 0.0;
};

struct ReportBundle {
  RunConfig config;
  ScenarioSpec spec;
  std::vector<OptimizerReport> optimizers;
  std::string best_optimizer;  // owner of best_ranking below
  Ranking best_ranking;
  FlowLedger best_ledger;
};

// Executes the configured searches. Throws ConfigError / CapExceeded.
ReportBundle run(const RunConfig& cfg);

// Writes report.json, tableV.csv, tableVII.csv, tableVIII.csv,
// ledger_<scenario>.csv and plot_<scenario>.csv into cfg.out_dir.
// Output is deterministic: identical configs give identical bytes.
void write_reports(const ReportBundle& bundle);

// Individual emitters, exposed for tests.
std::string report_json(const ReportBundle& bundle);
void write_table_v(const ReportBundle& bundle, std::ostream& out);
void write_table_vii(const ReportBundle& bundle, std::ostream& out);
void write_table_viii(const ReportBundle& bundle, std::ostream& out);
void write_plot_csv(const ReportBundle& bundle, std::ostream& out);

}  // namespace pvshare
