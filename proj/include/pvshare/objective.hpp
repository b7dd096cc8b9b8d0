#pragma once

#include <cstdint>
#include <memory>

#include "pvshare/dispatch.hpp"

namespace pvshare {

// Priority weights for the four reward averages; the defaults keep one order
// of magnitude between neighbouring priorities.
struct ObjectiveWeights {
  double direct_local_pv = 1000.0;
  double direct_own_pv = 100.0;
  double local_storage = 10.0;
  double own_storage_loading = 1.0;
};

void validate_weights(const ObjectiveWeights& w);  // all strictly positive

struct ObjectiveBreakdown {
  double value = 0.0;         // 1 / weighted_sum, +inf when the sum is zero
  double weighted_sum = 0.0;
  // Per-building per-day averages of the gated reward sums.
  double avg_direct_local_pv = 0.0;
  double avg_direct_own_pv = 0.0;
  double avg_local_storage = 0.0;
  double avg_own_storage_loading = 0.0;
  std::int64_t gated_step_count = 0;  // cells whose rewards were discarded
};

// A cell's rewards count only if the building ended the step with zero unmet
// load and zero unused PV (exact zeros after dispatch's snap). Averages
// divide by horizon days x buildings. Lower value is better.
ObjectiveBreakdown evaluate(const FlowLedger& ledger, const ObjectiveWeights& weights = {});

// Total order on value; -1/0/1. Two +inf values compare equal.
int compare(const ObjectiveBreakdown& a, const ObjectiveBreakdown& b);

// Fused dispatch + objective used by the searches: evaluates a ranking
// without materialising a ledger, bit-identical to
// evaluate(simulate(spec, ranking, profiles)). Reusable scratch keeps the
// hot path allocation-free.
class Evaluator {
 public:
  Evaluator(const ScenarioSpec& spec, const ProfileSet& profiles,
            const ObjectiveWeights& weights = {});
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  ObjectiveBreakdown evaluate_prefix(std::span<const Action> prefix);
  ObjectiveBreakdown evaluate(const Ranking& ranking);

  const ScenarioSpec& spec() const;
  const ObjectiveWeights& weights() const;
  std::uint64_t evaluations() const;  // running count across calls

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pvshare
