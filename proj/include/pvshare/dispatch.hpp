#pragma once

#include <span>
#include <vector>

#include "pvshare/profiles.hpp"
#include "pvshare/ranking.hpp"

namespace pvshare {

// Everything recorded for one (timestep, building) cell. Flows are physical
// kWh amounts; the four reward variables feed the objective. The storage
// reward variables count PV-provenance energy only: charges from the grid
// (action 14) raise soc_kwh but not pv_soc_kwh, and a discharge to loads
// credits local_storage_consumption with the PV share of the tank.
struct LedgerCell {
  // Gate variables: what is still missing / unused after the prefix ran.
  double energy_necessary_to_obtain = 0.0;  // unmet load
  double pv_energy_remaining = 0.0;         // unused pv

  // Reward variables.
  double direct_local_pv_consumption = 0.0;  // pv->loads anywhere local (2, 7, 8; receiver side)
  double direct_own_pv_consumption = 0.0;    // pv->loads within the building (2)
  double local_storage_consumption = 0.0;    // pv share of storage->loads (4, 11, 12; receiver side)
  double own_storage_loading = 0.0;          // pv charged into this building's storage (3, 9, 10)

  // Per-building scalar flows.
  double pv_to_own_loads = 0.0;
  double pv_to_own_storage = 0.0;
  double storage_to_own_loads = 0.0;
  double pv_to_grid = 0.0;
  double grid_to_loads = 0.0;
  double storage_to_grid = 0.0;
  double grid_to_storage = 0.0;

  // Neighbour exchange, aggregated over partners (sent / received this step).
  double pv_to_neighbour_loads = 0.0;
  double pv_from_neighbour_to_loads = 0.0;
  double pv_to_neighbour_storage = 0.0;
  double pv_from_neighbour_to_storage = 0.0;
  double storage_to_neighbour_loads = 0.0;
  double storage_from_neighbour_to_loads = 0.0;

  // Battery content at the end of the step.
  double soc_kwh = 0.0;
  double pv_soc_kwh = 0.0;
};

// One timestep of flows: per-building cells plus the per-pair transfer
// matrices (row = giving building, column = receiving building).
struct StepFlows {
  int num_buildings = 0;
  std::vector<LedgerCell> cells;
  std::vector<double> pv_to_loads_pair;       // num_buildings^2, row-major
  std::vector<double> pv_to_storage_pair;
  std::vector<double> storage_to_loads_pair;

  double pair(const std::vector<double>& m, int from, int to) const {
    return m[static_cast<std::size_t>(from) * num_buildings + to];
  }
};

struct FlowLedger {
  int num_buildings = 0;
  int steps = 0;
  int steps_per_day = 24;
  double storage_capacity_kwh = 0.0;
  std::vector<LedgerCell> cells;              // steps * num_buildings, step-major
  std::vector<double> pv_to_loads_pair;       // steps * num_buildings^2
  std::vector<double> pv_to_storage_pair;
  std::vector<double> storage_to_loads_pair;

  LedgerCell& cell(int step, int b) {
    return cells[static_cast<std::size_t>(step) * num_buildings + b];
  }
  const LedgerCell& cell(int step, int b) const {
    return cells[static_cast<std::size_t>(step) * num_buildings + b];
  }
  double pair(const std::vector<double>& m, int step, int from, int to) const {
    const std::size_t nb = static_cast<std::size_t>(num_buildings);
    return m[(static_cast<std::size_t>(step) * nb + from) * nb + to];
  }
};

// Battery state carried across steps.
struct StorageState {
  std::vector<double> soc_kwh;
  std::vector<double> pv_soc_kwh;  // PV-charged share, invariant 0 <= pv_soc <= soc
};

// Residuals within 1e-12 of a bound are snapped onto it; the objective's
// gate then tests exact zero.
inline constexpr double kSnapKwh = 1e-12;

// Executes `prefix` for one timestep. Every action moves the maximum feasible
// amount; buildings act in ascending index order, and pairwise actions visit
// partners in ascending index order. `state` is updated in place.
StepFlows step(const ScenarioSpec& spec, std::span<const Action> prefix,
               std::span<const double> pv_kwh, std::span<const double> load_kwh,
               StorageState& state);

// Runs the ranking's effective prefix over the whole horizon. Storages start
// at `initial_soc_kwh` (empty when omitted; treated as PV-provenance energy).
// Validates the ranking and profile shapes; throws std::invalid_argument.
FlowLedger simulate(const ScenarioSpec& spec, const Ranking& ranking,
                    const ProfileSet& profiles,
                    const std::vector<double>& initial_soc_kwh = {});

// CSV dump, one row per (timestep, building) with every LedgerCell field.
void export_ledger_csv(const FlowLedger& ledger, std::ostream& out);

}  // namespace pvshare
