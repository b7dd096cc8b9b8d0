#pragma once

// Shared fixtures for the test suites: hand-built scenarios/profiles and an
// energy audit that recomputes every balance from the recorded flows alone,
// independent of how dispatch derived them.

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pvshare/dispatch.hpp"
#include "pvshare/scenario.hpp"

namespace support {

inline pvshare::ScenarioSpec make_spec(std::initializer_list<int> action_ids, int num_buildings,
                                       int days, int steps_per_day, double storage_kwh) {
  pvshare::ScenarioSpec spec;
  spec.id = "test";
  for (int id : action_ids) spec.selectable_actions.push_back(pvshare::action_from_id(id));
  spec.num_buildings = num_buildings;
  spec.horizon_days = days;
  spec.steps_per_day = steps_per_day;
  spec.storage_capacity_kwh = storage_kwh;
  pvshare::validate_scenario(spec);
  return spec;
}

inline pvshare::Ranking ranking_of(std::initializer_list<int> ids) {
  pvshare::Ranking r;
  for (int id : ids) r.push_back(pvshare::action_from_id(id));
  return r;
}

// Profiles from explicit per-building step values (each inner vector is one
// building's series).
inline pvshare::ProfileSet make_profiles(const std::vector<std::vector<double>>& loads,
                                         const std::vector<std::vector<double>>& pv,
                                         int steps_per_day) {
  pvshare::ProfileSet set;
  set.steps_per_day = steps_per_day;
  for (std::size_t b = 0; b < loads.size(); ++b) {
    set.loads.push_back({static_cast<int>(b), "load", loads[b]});
  }
  for (std::size_t b = 0; b < pv.size(); ++b) {
    set.pv.push_back({static_cast<int>(b), "pv", pv[b]});
  }
  return set;
}

inline constexpr double kAuditTolerance = 1e-9;

// Per-cell balances, recomputed from profile inputs and recorded flows:
//   pv:      production = all pv sinks + pv_energy_remaining
//   load:    demand     = all load sources + energy_necessary_to_obtain
//   storage: soc_end    = soc_start + charges - discharges
// plus soc bounds and pair-matrix consistency with the cell aggregates.
inline void audit_ledger(const pvshare::FlowLedger& ledger, const pvshare::ProfileSet& profiles,
                         std::vector<double> soc_start) {
  const int nb = ledger.num_buildings;
  if (soc_start.empty()) soc_start.assign(nb, 0.0);

  for (int st = 0; st < ledger.steps; ++st) {
    for (int b = 0; b < nb; ++b) {
      const pvshare::LedgerCell& c = ledger.cell(st, b);

      const double pv_in = profiles.pv[b].kwh[st];
      const double pv_out = c.pv_to_own_loads + c.pv_to_own_storage + c.pv_to_grid +
                            c.pv_to_neighbour_loads + c.pv_to_neighbour_storage +
                            c.pv_energy_remaining;
      CHECK(std::abs(pv_in - pv_out) <= kAuditTolerance);

      const double demand = profiles.loads[b].kwh[st];
      const double served = c.pv_to_own_loads + c.storage_to_own_loads + c.grid_to_loads +
                            c.pv_from_neighbour_to_loads + c.storage_from_neighbour_to_loads +
                            c.energy_necessary_to_obtain;
      CHECK(std::abs(demand - served) <= kAuditTolerance);

      const double soc_expected = soc_start[b] + c.pv_to_own_storage +
                                  c.pv_from_neighbour_to_storage + c.grid_to_storage -
                                  c.storage_to_own_loads - c.storage_to_neighbour_loads -
                                  c.storage_to_grid;
      CHECK(std::abs(soc_expected - c.soc_kwh) <= kAuditTolerance);
      CHECK(c.soc_kwh >= 0.0);
      CHECK(c.soc_kwh <= ledger.storage_capacity_kwh + kAuditTolerance);
      CHECK(c.pv_soc_kwh >= 0.0);
      CHECK(c.pv_soc_kwh <= c.soc_kwh + kAuditTolerance);
      soc_start[b] = c.soc_kwh;

      // Row/column sums of the pair matrices must match the cell aggregates.
      double sent_loads = 0.0, got_loads = 0.0;
      double sent_storage = 0.0, got_storage = 0.0;
      double sent_from_storage = 0.0, got_from_storage = 0.0;
      for (int k = 0; k < nb; ++k) {
        sent_loads += ledger.pair(ledger.pv_to_loads_pair, st, b, k);
        got_loads += ledger.pair(ledger.pv_to_loads_pair, st, k, b);
        sent_storage += ledger.pair(ledger.pv_to_storage_pair, st, b, k);
        got_storage += ledger.pair(ledger.pv_to_storage_pair, st, k, b);
        sent_from_storage += ledger.pair(ledger.storage_to_loads_pair, st, b, k);
        got_from_storage += ledger.pair(ledger.storage_to_loads_pair, st, k, b);
      }
      CHECK(ledger.pair(ledger.pv_to_loads_pair, st, b, b) == 0.0);
      CHECK(ledger.pair(ledger.pv_to_storage_pair, st, b, b) == 0.0);
      CHECK(ledger.pair(ledger.storage_to_loads_pair, st, b, b) == 0.0);
      CHECK(std::abs(sent_loads - c.pv_to_neighbour_loads) <= kAuditTolerance);
      CHECK(std::abs(got_loads - c.pv_from_neighbour_to_loads) <= kAuditTolerance);
      CHECK(std::abs(sent_storage - c.pv_to_neighbour_storage) <= kAuditTolerance);
      CHECK(std::abs(got_storage - c.pv_from_neighbour_to_storage) <= kAuditTolerance);
      CHECK(std::abs(sent_from_storage - c.storage_to_neighbour_loads) <= kAuditTolerance);
      CHECK(std::abs(got_from_storage - c.storage_from_neighbour_to_loads) <= kAuditTolerance);
    }
  }
}

// A random permutation of the scenario's actions, for fuzz drivers.
inline pvshare::Ranking random_ranking(const pvshare::ScenarioSpec& spec, std::mt19937_64& rng) {
  pvshare::Ranking r = spec.selectable_actions;
  for (std::size_t i = r.size() - 1; i > 0; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i);
    std::swap(r[i], r[pick(rng)]);
  }
  return r;
}

}  // namespace support
