#pragma once

// The single implementation of one dispatch timestep, shared by simulate()
// (which records every flow into a FlowLedger) and by Evaluator (which keeps
// only the reward sums). Both paths instantiate run_prefix_step with a
// different Sink; the arithmetic and its order are therefore identical, which
// is what makes the fused evaluator bit-exact against the ledger route.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>

#include "pvshare/actions.hpp"
#include "pvshare/dispatch.hpp"
#include "pvshare/objective.hpp"

namespace pvshare::detail {

// Working vectors for one timestep, all sized num_buildings and owned by the
// caller. remaining_pv/unmet_load start as the step's profile values and end
// as the gate variables; soc/pv_soc persist across steps.
struct StepScratch {
  double* remaining_pv = nullptr;
  double* unmet_load = nullptr;
  double* soc = nullptr;
  double* pv_soc = nullptr;
  // Reward accumulators for the step, zeroed by the caller.
  double* direct_local = nullptr;
  double* direct_own = nullptr;
  double* local_storage = nullptr;
  double* storage_loading = nullptr;
};

// Sink used by the searches: flows influence the scratch state only.
struct NullFlowSink {
  void scalar(Action, int, double) {}
  void pair(Action, int, int, double) {}
};

inline void snap_down(double& v) {
  if (v < kSnapKwh) v = 0.0;
}

inline void snap_up(double& v, double bound) {
  if (bound - v < kSnapKwh) v = bound;
}

// Discharges `amount` from building b's tank and returns the PV share of the
// draw. The tank is well mixed: the share leaves in proportion to pv_soc/soc.
inline double drain_storage(const StepScratch& s, int b, double amount) {
  const double pv_part = amount * (s.pv_soc[b] / s.soc[b]);
  s.soc[b] -= amount;
  snap_down(s.soc[b]);
  s.pv_soc[b] -= pv_part;
  if (s.pv_soc[b] < 0.0) s.pv_soc[b] = 0.0;
  if (s.pv_soc[b] > s.soc[b]) s.pv_soc[b] = s.soc[b];
  return pv_part;
}

template <class Sink>
void run_prefix_step(std::span<const Action> prefix, int nb, double cap,
                     const StepScratch& s, Sink& sink) {
  double* rpv = s.remaining_pv;
  double* unmet = s.unmet_load;
  double* soc = s.soc;
  double* pv_soc = s.pv_soc;

  for (const Action action : prefix) {
    switch (action) {
      case Action::own_pv_to_own_loads:
        for (int b = 0; b < nb; ++b) {
          const double t = std::min(rpv[b], unmet[b]);
          if (t <= 0.0) continue;
          rpv[b] -= t;
          snap_down(rpv[b]);
          unmet[b] -= t;
          snap_down(unmet[b]);
          s.direct_local[b] += t;
          s.direct_own[b] += t;
          sink.scalar(action, b, t);
        }
        break;

      case Action::own_pv_to_own_storage:
        for (int b = 0; b < nb; ++b) {
          const double t = std::min(rpv[b], cap - soc[b]);
          if (t <= 0.0) continue;
          rpv[b] -= t;
          snap_down(rpv[b]);
          soc[b] += t;
          snap_up(soc[b], cap);
          pv_soc[b] += t;
          if (pv_soc[b] > soc[b]) pv_soc[b] = soc[b];
          s.storage_loading[b] += t;
          sink.scalar(action, b, t);
        }
        break;

      case Action::own_storage_to_own_loads:
        for (int b = 0; b < nb; ++b) {
          const double t = std::min(soc[b], unmet[b]);
          if (t <= 0.0) continue;
          const double pv_part = drain_storage(s, b, t);
          unmet[b] -= t;
          snap_down(unmet[b]);
          s.local_storage[b] += pv_part;
          sink.scalar(action, b, t);
        }
        break;

      case Action::own_pv_to_grid:
        for (int b = 0; b < nb; ++b) {
          const double t = rpv[b];
          if (t <= 0.0) continue;
          rpv[b] = 0.0;
          sink.scalar(action, b, t);
        }
        break;

      case Action::grid_to_own_loads:
        for (int b = 0; b < nb; ++b) {
          const double t = unmet[b];
          if (t <= 0.0) continue;
          unmet[b] = 0.0;
          sink.scalar(action, b, t);
        }
        break;

      case Action::own_pv_to_neighbour_loads:
        for (int b = 0; b < nb; ++b) {
          for (int k = 0; k < nb && rpv[b] > 0.0; ++k) {
            if (k == b || unmet[k] <= 0.0) continue;
            const double t = std::min(rpv[b], unmet[k]);
            rpv[b] -= t;
            snap_down(rpv[b]);
            unmet[k] -= t;
            snap_down(unmet[k]);
            s.direct_local[k] += t;
            sink.pair(action, b, k, t);
          }
        }
        break;

      case Action::neighbour_pv_to_own_loads:
        for (int b = 0; b < nb; ++b) {
          for (int k = 0; k < nb && unmet[b] > 0.0; ++k) {
            if (k == b || rpv[k] <= 0.0) continue;
            const double t = std::min(rpv[k], unmet[b]);
            rpv[k] -= t;
            snap_down(rpv[k]);
            unmet[b] -= t;
            snap_down(unmet[b]);
            s.direct_local[b] += t;
            sink.pair(action, k, b, t);
          }
        }
        break;

      case Action::own_pv_to_neighbour_storage:
        for (int b = 0; b < nb; ++b) {
          for (int k = 0; k < nb && rpv[b] > 0.0; ++k) {
            if (k == b) continue;
            const double t = std::min(rpv[b], cap - soc[k]);
            if (t <= 0.0) continue;
            rpv[b] -= t;
            snap_down(rpv[b]);
            soc[k] += t;
            snap_up(soc[k], cap);
            pv_soc[k] += t;
            if (pv_soc[k] > soc[k]) pv_soc[k] = soc[k];
            s.storage_loading[k] += t;
            sink.pair(action, b, k, t);
          }
        }
        break;

      case Action::neighbour_pv_to_own_storage:
        for (int b = 0; b < nb; ++b) {
          for (int k = 0; k < nb && cap - soc[b] > 0.0; ++k) {
            if (k == b || rpv[k] <= 0.0) continue;
            const double t = std::min(rpv[k], cap - soc[b]);
            if (t <= 0.0) continue;
            rpv[k] -= t;
            snap_down(rpv[k]);
            soc[b] += t;
            snap_up(soc[b], cap);
            pv_soc[b] += t;
            if (pv_soc[b] > soc[b]) pv_soc[b] = soc[b];
            s.storage_loading[b] += t;
            sink.pair(action, k, b, t);
          }
        }
        break;

      case Action::own_storage_to_neighbour_loads:
        for (int b = 0; b < nb; ++b) {
          for (int k = 0; k < nb && soc[b] > 0.0; ++k) {
            if (k == b || unmet[k] <= 0.0) continue;
            const double t = std::min(soc[b], unmet[k]);
            const double pv_part = drain_storage(s, b, t);
            unmet[k] -= t;
            snap_down(unmet[k]);
            s.local_storage[k] += pv_part;
            sink.pair(action, b, k, t);
          }
        }
        break;

      case Action::neighbour_storage_to_own_loads:
        for (int b = 0; b < nb; ++b) {
          for (int k = 0; k < nb && unmet[b] > 0.0; ++k) {
            if (k == b || soc[k] <= 0.0) continue;
            const double t = std::min(soc[k], unmet[b]);
            const double pv_part = drain_storage(s, k, t);
            unmet[b] -= t;
            snap_down(unmet[b]);
            s.local_storage[b] += pv_part;
            sink.pair(action, k, b, t);
          }
        }
        break;

      case Action::own_storage_to_grid:
        for (int b = 0; b < nb; ++b) {
          const double t = soc[b];
          if (t <= 0.0) continue;
          soc[b] = 0.0;
          pv_soc[b] = 0.0;
          sink.scalar(action, b, t);
        }
        break;

      case Action::grid_to_own_storage:
        for (int b = 0; b < nb; ++b) {
          const double t = cap - soc[b];
          if (t <= 0.0) continue;
          soc[b] = cap;  // grid energy: pv_soc stays put
          sink.scalar(action, b, t);
        }
        break;

      case Action::do_no_more_activity:
        return;  // not part of any valid prefix; stop defensively
    }
  }

  // Residue snapping so the objective's gate can test exact zeros.
  for (int b = 0; b < nb; ++b) {
    snap_down(rpv[b]);
    snap_down(unmet[b]);
  }
}

// The objective's final arithmetic, shared verbatim between evaluate(ledger)
// and Evaluator so both produce the same bits.
inline ObjectiveBreakdown finalize_breakdown(double sum_direct_local, double sum_direct_own,
                                             double sum_local_storage, double sum_storage_loading,
                                             std::int64_t gated_steps, int days, int num_buildings,
                                             const ObjectiveWeights& w) {
  ObjectiveBreakdown out;
  const double divisor = static_cast<double>(days) * num_buildings;
  out.avg_direct_local_pv = sum_direct_local / divisor;
  out.avg_direct_own_pv = sum_direct_own / divisor;
  out.avg_local_storage = sum_local_storage / divisor;
  out.avg_own_storage_loading = sum_storage_loading / divisor;
  out.weighted_sum = w.direct_local_pv * out.avg_direct_local_pv +
                     w.direct_own_pv * out.avg_direct_own_pv +
                     w.local_storage * out.avg_local_storage +
                     w.own_storage_loading * out.avg_own_storage_loading;
  out.value = out.weighted_sum == 0.0 ? std::numeric_limits<double>::infinity()
                                      : 1.0 / out.weighted_sum;
  out.gated_step_count = gated_steps;
  return out;
}

}  // namespace pvshare::detail
