#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pvshare/objective.hpp"
#include "support.hpp"

using namespace pvshare;

namespace {

// A bare one-day ledger whose cells are written directly by the tests.
FlowLedger blank_ledger(int num_buildings, int steps) {
  FlowLedger ledger;
  ledger.num_buildings = num_buildings;
  ledger.steps = steps;
  ledger.steps_per_day = steps;
  ledger.storage_capacity_kwh = 16.0;
  ledger.cells.resize(static_cast<std::size_t>(steps) * num_buildings);
  return ledger;
}

}  // namespace

TEST_CASE("a clean cell's rewards weight into the documented sum") {
  // 2 kWh served twice over (locally and from the own roof): the weighted
  // sum is 1000*2 + 100*2 = 2200 and the reported value its reciprocal.
  FlowLedger ledger = blank_ledger(1, 1);
  LedgerCell& c = ledger.cell(0, 0);
  c.direct_local_pv_consumption = 2.0;
  c.direct_own_pv_consumption = 2.0;

  const ObjectiveBreakdown bd = evaluate(ledger);
  CHECK(bd.weighted_sum == 2200.0);
  CHECK(bd.value == 1.0 / 2200.0);
  CHECK(bd.avg_direct_local_pv == 2.0);
  CHECK(bd.gated_step_count == 0);
}

TEST_CASE("unmet load or leftover pv voids the cell's rewards") {
  FlowLedger ledger = blank_ledger(1, 2);
  LedgerCell& good = ledger.cell(0, 0);
  good.direct_own_pv_consumption = 1.0;
  good.direct_local_pv_consumption = 1.0;
  LedgerCell& bad = ledger.cell(1, 0);
  bad.direct_own_pv_consumption = 5.0;
  bad.direct_local_pv_consumption = 5.0;

  SUBCASE("leftover pv gates") { bad.pv_energy_remaining = 0.5; }
  SUBCASE("unmet load gates") { bad.energy_necessary_to_obtain = 0.25; }
  SUBCASE("even a whisper gates") { bad.energy_necessary_to_obtain = 1e-15; }

  const ObjectiveBreakdown bd = evaluate(ledger);
  CHECK(bd.weighted_sum == 1100.0);  // only the clean cell counts
  CHECK(bd.gated_step_count == 1);
}

TEST_CASE("an entirely gated horizon has no usable value") {
  FlowLedger ledger = blank_ledger(2, 1);
  ledger.cell(0, 0).energy_necessary_to_obtain = 1.0;
  ledger.cell(0, 1).pv_energy_remaining = 1.0;

  const ObjectiveBreakdown bd = evaluate(ledger);
  CHECK(bd.weighted_sum == 0.0);
  CHECK(std::isinf(bd.value));
  CHECK(bd.gated_step_count == 2);
}

TEST_CASE("value ties and orderings") {
  ObjectiveBreakdown better, worse, unusable_a, unusable_b;
  better.value = 1.0 / 2000.0;
  worse.value = 1.0 / 1000.0;
  unusable_a.value = std::numeric_limits<double>::infinity();
  unusable_b.value = std::numeric_limits<double>::infinity();

  CHECK(compare(better, worse) == -1);
  CHECK(compare(worse, better) == 1);
  CHECK(compare(better, better) == 0);
  CHECK(compare(unusable_a, unusable_b) == 0);
  CHECK(compare(better, unusable_a) == -1);
  CHECK(compare(unusable_a, better) == 1);
}

TEST_CASE("averages divide by days times buildings") {
  FlowLedger ledger = blank_ledger(3, 4);
  ledger.steps_per_day = 2;  // so the 4 steps span 2 days
  for (int st = 0; st < 4; ++st) {
    for (int b = 0; b < 3; ++b) {
      ledger.cell(st, b).direct_local_pv_consumption = 1.5;
      ledger.cell(st, b).own_storage_loading = 0.5;
    }
  }
  const ObjectiveBreakdown bd = evaluate(ledger);
  CHECK(bd.avg_direct_local_pv == 3.0);      // 18 kWh / (2 days * 3 buildings)
  CHECK(bd.avg_own_storage_loading == 1.0);
  CHECK(bd.avg_direct_own_pv == 0.0);
}

TEST_CASE("custom weights reorder the priorities") {
  FlowLedger ledger = blank_ledger(1, 1);
  ledger.cell(0, 0).direct_local_pv_consumption = 1.0;
  ledger.cell(0, 0).own_storage_loading = 1.0;

  const ObjectiveBreakdown bd = evaluate(ledger, {2.0, 1.0, 1.0, 8.0});
  CHECK(bd.weighted_sum == 10.0);

  CHECK_THROWS_AS(evaluate(ledger, {0.0, 1.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(ledger, {1.0, -2.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("evaluate rejects malformed ledgers") {
  FlowLedger empty;
  CHECK_THROWS_AS(evaluate(empty), std::invalid_argument);
  FlowLedger ragged = blank_ledger(1, 3);
  ragged.steps_per_day = 2;
  CHECK_THROWS_AS(evaluate(ragged), std::invalid_argument);
}

TEST_CASE("the fused evaluator matches simulate plus evaluate bit for bit") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> energy(0.0, 4.0);

  for (const std::string& id : scenario_ids()) {
    ScenarioSpec spec = scenario_preset(id);
    spec.horizon_days = 2;
    spec.steps_per_day = 12;

    std::vector<std::vector<double>> loads(6), pv(6);
    for (int b = 0; b < 6; ++b) {
      for (int st = 0; st < 24; ++st) {
        loads[b].push_back(energy(rng));
        pv[b].push_back(energy(rng));
      }
    }
    const ProfileSet profiles = support::make_profiles(loads, pv, 12);
    Evaluator fused(spec, profiles);

    for (int round = 0; round < 8; ++round) {
      const Ranking ranking = support::random_ranking(spec, rng);
      const ObjectiveBreakdown via_ledger = evaluate(simulate(spec, ranking, profiles));
      const ObjectiveBreakdown direct = fused.evaluate(ranking);

      CHECK(direct.value == via_ledger.value);
      CHECK(direct.weighted_sum == via_ledger.weighted_sum);
      CHECK(direct.avg_direct_local_pv == via_ledger.avg_direct_local_pv);
      CHECK(direct.avg_direct_own_pv == via_ledger.avg_direct_own_pv);
      CHECK(direct.avg_local_storage == via_ledger.avg_local_storage);
      CHECK(direct.avg_own_storage_loading == via_ledger.avg_own_storage_loading);
      CHECK(direct.gated_step_count == via_ledger.gated_step_count);
    }
  }
}

TEST_CASE("the evaluator counts its calls and validates rankings") {
  ScenarioSpec spec = scenario_preset("1");
  spec.horizon_days = 1;
  const ProfileSet profiles = generated_profiles(1, 6, 1);
  Evaluator ev(spec, profiles);

  CHECK(ev.evaluations() == 0);
  ev.evaluate(support::ranking_of({2, 5, 6, 1}));
  ev.evaluate(support::ranking_of({1, 2, 5, 6}));
  CHECK(ev.evaluations() == 2);
  CHECK_THROWS_AS(ev.evaluate(support::ranking_of({2, 5, 6, 7})), std::invalid_argument);
  CHECK(ev.evaluations() == 2);  // the rejected call does not count

  ScenarioSpec wrong_days = spec;
  wrong_days.horizon_days = 5;
  CHECK_THROWS_AS(Evaluator(wrong_days, profiles), std::invalid_argument);
}

TEST_CASE("identical rankings evaluate to identical bits across evaluators") {
  ScenarioSpec spec = scenario_preset("4b");
  spec.horizon_days = 2;
  const ProfileSet profiles = generated_profiles(9, 6, 2);
  const Ranking ranking = support::ranking_of({2, 3, 7, 8, 4, 5, 6, 1, 13, 14});

  Evaluator first(spec, profiles);
  Evaluator second(spec, profiles);
  const ObjectiveBreakdown a = first.evaluate(ranking);
  const ObjectiveBreakdown b = second.evaluate(ranking);
  const ObjectiveBreakdown c = first.evaluate(ranking);  // scratch reuse must not leak state
  CHECK(a.value == b.value);
  CHECK(a.value == c.value);
  CHECK(a.weighted_sum == c.weighted_sum);
  CHECK(a.gated_step_count == c.gated_step_count);
}
