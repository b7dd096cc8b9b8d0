#include "pvshare/objective.hpp"

#include <algorithm>
#include <stdexcept>

#include "dispatch_core.hpp"

namespace pvshare {

void validate_weights(const ObjectiveWeights& w) {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " weight must be > 0");
  };
  positive(w.direct_local_pv, "direct_local_pv");
  positive(w.direct_own_pv, "direct_own_pv");
  positive(w.local_storage, "local_storage");
  positive(w.own_storage_loading, "own_storage_loading");
}

ObjectiveBreakdown evaluate(const FlowLedger& ledger, const ObjectiveWeights& weights) {
  validate_weights(weights);
  if (ledger.num_buildings < 1 || ledger.steps < 1) {
    throw std::invalid_argument("ledger is empty");
  }
  if (ledger.steps_per_day < 1 || ledger.steps % ledger.steps_per_day != 0) {
    throw std::invalid_argument("ledger steps must be a multiple of steps_per_day");
  }
  const int days = ledger.steps / ledger.steps_per_day;

  double sum_direct_local = 0.0, sum_direct_own = 0.0;
  double sum_local_storage = 0.0, sum_storage_loading = 0.0;
  std::int64_t gated = 0;
  for (int st = 0; st < ledger.steps; ++st) {
    for (int b = 0; b < ledger.num_buildings; ++b) {
      const LedgerCell& c = ledger.cell(st, b);
      if (c.energy_necessary_to_obtain == 0.0 && c.pv_energy_remaining == 0.0) {
        sum_direct_local += c.direct_local_pv_consumption;
        sum_direct_own += c.direct_own_pv_consumption;
        sum_local_storage += c.local_storage_consumption;
        sum_storage_loading += c.own_storage_loading;
      } else {
        ++gated;
      }
    }
  }
  return detail::finalize_breakdown(sum_direct_local, sum_direct_own, sum_local_storage,
                                    sum_storage_loading, gated, days, ledger.num_buildings,
                                    weights);
}

int compare(const ObjectiveBreakdown& a, const ObjectiveBreakdown& b) {
  if (a.value < b.value) return -1;
  if (a.value > b.value) return 1;
  return 0;  // covers two +inf values: neither < the other
}

struct Evaluator::Impl {
  ScenarioSpec spec;
  ObjectiveWeights weights;
  int nb = 0;
  int steps = 0;
  double cap = 0.0;

  // Profiles flattened step-major so each timestep is one contiguous row.
  std::vector<double> pv_flat, load_flat;

  // Reused per-step scratch.
  std::vector<double> rpv, unmet, soc, pv_soc;
  std::vector<double> direct_local, direct_own, local_storage, storage_loading;

  std::uint64_t evaluations = 0;
};

Evaluator::Evaluator(const ScenarioSpec& spec, const ProfileSet& profiles,
                     const ObjectiveWeights& weights)
    : impl_(std::make_unique<Impl>()) {
  validate_scenario(spec);
  validate_weights(weights);

  Impl& im = *impl_;
  im.spec = spec;
  im.weights = weights;
  im.nb = spec.num_buildings;
  im.steps = spec.horizon_days * spec.steps_per_day;
  im.cap = spec.storage_capacity_kwh;

  if (profiles.steps_per_day != spec.steps_per_day) {
    throw std::invalid_argument("profiles steps_per_day does not match the scenario");
  }
  if (profiles.loads.size() != static_cast<std::size_t>(im.nb) ||
      profiles.pv.size() != static_cast<std::size_t>(im.nb)) {
    throw std::invalid_argument("profiles must hold one load and one pv series per building");
  }
  const std::size_t total = static_cast<std::size_t>(im.steps) * im.nb;
  im.pv_flat.resize(total);
  im.load_flat.resize(total);
  for (int b = 0; b < im.nb; ++b) {
    if (profiles.loads[b].kwh.size() != static_cast<std::size_t>(im.steps) ||
        profiles.pv[b].kwh.size() != static_cast<std::size_t>(im.steps)) {
      throw std::invalid_argument("profiles must cover the whole horizon for building " +
                                  std::to_string(b));
    }
    for (int st = 0; st < im.steps; ++st) {
      im.pv_flat[static_cast<std::size_t>(st) * im.nb + b] = profiles.pv[b].kwh[st];
      im.load_flat[static_cast<std::size_t>(st) * im.nb + b] = profiles.loads[b].kwh[st];
    }
  }

  im.rpv.resize(im.nb);
  im.unmet.resize(im.nb);
  im.soc.resize(im.nb);
  im.pv_soc.resize(im.nb);
  im.direct_local.resize(im.nb);
  im.direct_own.resize(im.nb);
  im.local_storage.resize(im.nb);
  im.storage_loading.resize(im.nb);
}

Evaluator::~Evaluator() = default;

ObjectiveBreakdown Evaluator::evaluate_prefix(std::span<const Action> prefix) {
  Impl& im = *impl_;
  const int nb = im.nb;
  std::fill(im.soc.begin(), im.soc.end(), 0.0);
  std::fill(im.pv_soc.begin(), im.pv_soc.end(), 0.0);

  const detail::StepScratch scratch{im.rpv.data(),          im.unmet.data(),
                                    im.soc.data(),          im.pv_soc.data(),
                                    im.direct_local.data(), im.direct_own.data(),
                                    im.local_storage.data(), im.storage_loading.data()};
  detail::NullFlowSink sink;

  double sum_direct_local = 0.0, sum_direct_own = 0.0;
  double sum_local_storage = 0.0, sum_storage_loading = 0.0;
  std::int64_t gated = 0;
  for (int st = 0; st < im.steps; ++st) {
    const double* pv_row = im.pv_flat.data() + static_cast<std::size_t>(st) * nb;
    const double* load_row = im.load_flat.data() + static_cast<std::size_t>(st) * nb;
    std::copy(pv_row, pv_row + nb, im.rpv.begin());
    std::copy(load_row, load_row + nb, im.unmet.begin());
    std::fill(im.direct_local.begin(), im.direct_local.end(), 0.0);
    std::fill(im.direct_own.begin(), im.direct_own.end(), 0.0);
    std::fill(im.local_storage.begin(), im.local_storage.end(), 0.0);
    std::fill(im.storage_loading.begin(), im.storage_loading.end(), 0.0);

    detail::run_prefix_step(prefix, nb, im.cap, scratch, sink);

    for (int b = 0; b < nb; ++b) {
      if (im.unmet[b] == 0.0 && im.rpv[b] == 0.0) {
        sum_direct_local += im.direct_local[b];
        sum_direct_own += im.direct_own[b];
        sum_local_storage += im.local_storage[b];
        sum_storage_loading += im.storage_loading[b];
      } else {
        ++gated;
      }
    }
  }
  ++im.evaluations;
  return detail::finalize_breakdown(sum_direct_local, sum_direct_own, sum_local_storage,
                                    sum_storage_loading, gated, im.spec.horizon_days, nb,
                                    im.weights);
}

ObjectiveBreakdown Evaluator::evaluate(const Ranking& ranking) {
  validate_ranking(ranking, impl_->spec);
  return evaluate_prefix(effective_prefix(ranking));
}

const ScenarioSpec& Evaluator::spec() const { return impl_->spec; }
const ObjectiveWeights& Evaluator::weights() const { return impl_->weights; }
std::uint64_t Evaluator::evaluations() const { return impl_->evaluations; }

}  // namespace pvshare
