#include "pvshare/dispatch.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

#include "dispatch_core.hpp"
#include "text_format.hpp"

namespace pvshare {

namespace {

// Routes the template's flow callbacks into cells + pair matrices. `cells`
// and the matrices point at the current step's slices.
struct LedgerSink {
  LedgerCell* cells;
  double* pv_to_loads;
  double* pv_to_storage;
  double* storage_to_loads;
  int nb;

  void scalar(Action a, int b, double t) {
    LedgerCell& c = cells[b];
    switch (a) {
      case Action::own_pv_to_own_loads: c.pv_to_own_loads += t; break;
      case Action::own_pv_to_own_storage: c.pv_to_own_storage += t; break;
      case Action::own_storage_to_own_loads: c.storage_to_own_loads += t; break;
      case Action::own_pv_to_grid: c.pv_to_grid += t; break;
      case Action::grid_to_own_loads: c.grid_to_loads += t; break;
      case Action::own_storage_to_grid: c.storage_to_grid += t; break;
      case Action::grid_to_own_storage: c.grid_to_storage += t; break;
      default: break;
    }
  }

  void pair(Action a, int from, int to, double t) {
    const std::size_t idx = static_cast<std::size_t>(from) * nb + to;
    switch (a) {
      case Action::own_pv_to_neighbour_loads:
      case Action::neighbour_pv_to_own_loads:
        pv_to_loads[idx] += t;
        cells[from].pv_to_neighbour_loads += t;
        cells[to].pv_from_neighbour_to_loads += t;
        break;
      case Action::own_pv_to_neighbour_storage:
      case Action::neighbour_pv_to_own_storage:
        pv_to_storage[idx] += t;
        cells[from].pv_to_neighbour_storage += t;
        cells[to].pv_from_neighbour_to_storage += t;
        break;
      case Action::own_storage_to_neighbour_loads:
      case Action::neighbour_storage_to_own_loads:
        storage_to_loads[idx] += t;
        cells[from].storage_to_neighbour_loads += t;
        cells[to].storage_from_neighbour_to_loads += t;
        break;
      default: break;
    }
  }
};

struct StepBuffers {
  std::vector<double> rpv, unmet, direct_local, direct_own, local_storage, storage_loading;

  explicit StepBuffers(int nb)
      : rpv(nb), unmet(nb), direct_local(nb), direct_own(nb), local_storage(nb),
        storage_loading(nb) {}

  detail::StepScratch scratch(StorageState& state) {
    return {rpv.data(),          unmet.data(),       state.soc_kwh.data(),
            state.pv_soc_kwh.data(), direct_local.data(), direct_own.data(),
            local_storage.data(), storage_loading.data()};
  }

  void load_step(std::span<const double> pv, std::span<const double> load) {
    std::copy(pv.begin(), pv.end(), rpv.begin());
    std::copy(load.begin(), load.end(), unmet.begin());
    std::fill(direct_local.begin(), direct_local.end(), 0.0);
    std::fill(direct_own.begin(), direct_own.end(), 0.0);
    std::fill(local_storage.begin(), local_storage.end(), 0.0);
    std::fill(storage_loading.begin(), storage_loading.end(), 0.0);
  }

  // Copies gate, reward and storage values into the step's cells.
  void store_cells(LedgerCell* cells, const StorageState& state, int nb) const {
    for (int b = 0; b < nb; ++b) {
      LedgerCell& c = cells[b];
      c.energy_necessary_to_obtain = unmet[b];
      c.pv_energy_remaining = rpv[b];
      c.direct_local_pv_consumption = direct_local[b];
      c.direct_own_pv_consumption = direct_own[b];
      c.local_storage_consumption = local_storage[b];
      c.own_storage_loading = storage_loading[b];
      c.soc_kwh = state.soc_kwh[b];
      c.pv_soc_kwh = state.pv_soc_kwh[b];
    }
  }
};

void check_state(const ScenarioSpec& spec, const StorageState& state) {
  const std::size_t nb = static_cast<std::size_t>(spec.num_buildings);
  if (state.soc_kwh.size() != nb || state.pv_soc_kwh.size() != nb) {
    throw std::invalid_argument("storage state must hold one entry per building");
  }
  for (std::size_t b = 0; b < nb; ++b) {
    if (state.soc_kwh[b] < 0.0 || state.soc_kwh[b] > spec.storage_capacity_kwh) {
      throw std::invalid_argument("soc out of [0, capacity] for building " + std::to_string(b));
    }
    if (state.pv_soc_kwh[b] < 0.0 || state.pv_soc_kwh[b] > state.soc_kwh[b]) {
      throw std::invalid_argument("pv_soc out of [0, soc] for building " + std::to_string(b));
    }
  }
}

}  // namespace

StepFlows step(const ScenarioSpec& spec, std::span<const Action> prefix,
               std::span<const double> pv_kwh, std::span<const double> load_kwh,
               StorageState& state) {
  validate_scenario(spec);
  check_state(spec, state);
  const int nb = spec.num_buildings;
  if (pv_kwh.size() != static_cast<std::size_t>(nb) ||
      load_kwh.size() != static_cast<std::size_t>(nb)) {
    throw std::invalid_argument("pv/load spans must hold one value per building");
  }

  StepFlows flows;
  flows.num_buildings = nb;
  flows.cells.resize(nb);
  flows.pv_to_loads_pair.assign(static_cast<std::size_t>(nb) * nb, 0.0);
  flows.pv_to_storage_pair.assign(static_cast<std::size_t>(nb) * nb, 0.0);
  flows.storage_to_loads_pair.assign(static_cast<std::size_t>(nb) * nb, 0.0);

  StepBuffers buf(nb);
  buf.load_step(pv_kwh, load_kwh);
  LedgerSink sink{flows.cells.data(), flows.pv_to_loads_pair.data(),
                  flows.pv_to_storage_pair.data(), flows.storage_to_loads_pair.data(), nb};
  detail::run_prefix_step(prefix, nb, spec.storage_capacity_kwh, buf.scratch(state), sink);
  buf.store_cells(flows.cells.data(), state, nb);
  return flows;
}

FlowLedger simulate(const ScenarioSpec& spec, const Ranking& ranking, const ProfileSet& profiles,
                    const std::vector<double>& initial_soc_kwh) {
  validate_scenario(spec);
  validate_ranking(ranking, spec);

  const int nb = spec.num_buildings;
  const int steps = spec.horizon_days * spec.steps_per_day;
  if (profiles.steps_per_day != spec.steps_per_day) {
    throw std::invalid_argument("profiles steps_per_day does not match the scenario");
  }
  if (profiles.loads.size() != static_cast<std::size_t>(nb) ||
      profiles.pv.size() != static_cast<std::size_t>(nb)) {
    throw std::invalid_argument("profiles must hold one load and one pv series per building");
  }
  for (int b = 0; b < nb; ++b) {
    if (profiles.loads[b].kwh.size() != static_cast<std::size_t>(steps) ||
        profiles.pv[b].kwh.size() != static_cast<std::size_t>(steps)) {
      throw std::invalid_argument("profiles must cover the whole horizon for building " +
                                  std::to_string(b));
    }
  }

  StorageState state;
  if (initial_soc_kwh.empty()) {
    state.soc_kwh.assign(nb, 0.0);
    state.pv_soc_kwh.assign(nb, 0.0);
  } else {
    if (initial_soc_kwh.size() != static_cast<std::size_t>(nb)) {
      throw std::invalid_argument("initial_soc_kwh must hold one value per building");
    }
    state.soc_kwh = initial_soc_kwh;
    state.pv_soc_kwh = initial_soc_kwh;  // pre-charged energy counts as PV
  }
  check_state(spec, state);

  FlowLedger ledger;
  ledger.num_buildings = nb;
  ledger.steps = steps;
  ledger.steps_per_day = spec.steps_per_day;
  ledger.storage_capacity_kwh = spec.storage_capacity_kwh;
  ledger.cells.resize(static_cast<std::size_t>(steps) * nb);
  const std::size_t pair_size = static_cast<std::size_t>(steps) * nb * nb;
  ledger.pv_to_loads_pair.assign(pair_size, 0.0);
  ledger.pv_to_storage_pair.assign(pair_size, 0.0);
  ledger.storage_to_loads_pair.assign(pair_size, 0.0);

  const auto prefix = effective_prefix(ranking);
  StepBuffers buf(nb);
  std::vector<double> pv_row(nb), load_row(nb);
  for (int st = 0; st < steps; ++st) {
    for (int b = 0; b < nb; ++b) {
      pv_row[b] = profiles.pv[b].kwh[st];
      load_row[b] = profiles.loads[b].kwh[st];
    }
    buf.load_step(pv_row, load_row);
    const std::size_t pair_base = static_cast<std::size_t>(st) * nb * nb;
    LedgerSink sink{&ledger.cell(st, 0), ledger.pv_to_loads_pair.data() + pair_base,
                    ledger.pv_to_storage_pair.data() + pair_base,
                    ledger.storage_to_loads_pair.data() + pair_base, nb};
    detail::run_prefix_step(prefix, nb, spec.storage_capacity_kwh, buf.scratch(state), sink);
    buf.store_cells(&ledger.cell(st, 0), state, nb);
  }
  return ledger;
}

void export_ledger_csv(const FlowLedger& ledger, std::ostream& out) {
  out << "step_index,building_id,energy_necessary_to_obtain,pv_energy_remaining,"
         "direct_local_pv_consumption,direct_own_pv_consumption,local_storage_consumption,"
         "own_storage_loading,pv_to_own_loads,pv_to_own_storage,storage_to_own_loads,"
         "pv_to_grid,grid_to_loads,storage_to_grid,grid_to_storage,pv_to_neighbour_loads,"
         "pv_from_neighbour_to_loads,pv_to_neighbour_storage,pv_from_neighbour_to_storage,"
         "storage_to_neighbour_loads,storage_from_neighbour_to_loads,soc_kwh,pv_soc_kwh\n";
  const auto f = [](double v) { return detail::format_double(v); };
  for (int st = 0; st < ledger.steps; ++st) {
    for (int b = 0; b < ledger.num_buildings; ++b) {
      const LedgerCell& c = ledger.cell(st, b);
      out << st << ',' << b << ',' << f(c.energy_necessary_to_obtain) << ','
          << f(c.pv_energy_remaining) << ',' << f(c.direct_local_pv_consumption) << ','
          << f(c.direct_own_pv_consumption) << ',' << f(c.local_storage_consumption) << ','
          << f(c.own_storage_loading) << ',' << f(c.pv_to_own_loads) << ','
          << f(c.pv_to_own_storage) << ',' << f(c.storage_to_own_loads) << ','
          << f(c.pv_to_grid) << ',' << f(c.grid_to_loads) << ',' << f(c.storage_to_grid) << ','
          << f(c.grid_to_storage) << ',' << f(c.pv_to_neighbour_loads) << ','
          << f(c.pv_from_neighbour_to_loads) << ',' << f(c.pv_to_neighbour_storage) << ','
          << f(c.pv_from_neighbour_to_storage) << ',' << f(c.storage_to_neighbour_loads) << ','
          << f(c.storage_from_neighbour_to_loads) << ',' << f(c.soc_kwh) << ','
          << f(c.pv_soc_kwh) << '\n';
    }
  }
}

}  // namespace pvshare
