#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pvshare/objective.hpp"

namespace pvshare {

struct SearchContext {
  ScenarioSpec spec;
  const ProfileSet* profiles = nullptr;
  ObjectiveWeights weights;
};

struct SearchResult {
  Ranking best_ranking;
  ObjectiveBreakdown best_breakdown;
  std::uint64_t evaluations = 0;
  int rounds = 0;                  // gradient descent: improvement rounds incl. the final idle one
  std::vector<Ranking> optimal_set;  // exhaustive: one canonical ranking per optimal prefix class
  std::vector<std::pair<std::uint64_t, double>> trace;  // (iteration, best value), <= 10^4 points
};

struct ExhaustiveOptions {
  int cap = 10;  // refuse factorial enumeration beyond this many actions
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Visits every permutation of the selectable actions (n! evaluations,
// deduplicating ties by effective prefix). best_ranking is the canonical
// completion of the lexicographically smallest optimal prefix.
// Throws CapExceeded when n exceeds options.cap.
SearchResult exhaustive_search(const SearchContext& ctx, const ExhaustiveOptions& options = {});

// Steepest adjacent-transposition descent from a seeded uniform random
// ranking. Each round scores all n-1 adjacent swaps, applies the biggest
// strict improvement (ties: lowest position), stops when none improves.
SearchResult gradient_descent(const SearchContext& ctx, std::uint64_t seed);

struct SaConfig {
  std::uint64_t seed = 1;
  double sd = 1.5;                        // Gaussian step on each position variable
  std::uint64_t iterations_per_action = 67350;
  double initial_temperature = 1.0;
  double freeze_threshold = 1e-3;         // below: greedy (improvements only)
  // Per-iteration geometric factor; derived so the freeze point lands at 90%
  // of the budget when unset: (freeze/initial)^(1/(0.9*budget)).
  std::optional<double> cooling_factor;
};

void validate_sa_config(const SaConfig& cfg);

// Annealing over continuous position variables in [0, n]: every iteration
// perturbs all positions, reflects at the bounds, re-draws colliding variables
// (closer than 1e-9), decodes by descending position and Metropolis-tests the
// result.
// Runs exactly iterations_per_action * n evaluations (the first being the
// unperturbed start) and returns the best solution ever seen.
SearchResult simulated_annealing(const SearchContext& ctx, const SaConfig& config = {});

// Decodes position variables into a ranking: highest position first.
// Ties keep the earlier action first (callers keep positions distinct).
Ranking positions_to_ranking(std::span<const Action> actions, std::span<const double> positions);

// Accepts a worsening move with probability exp(-delta_rel / temperature);
// delta_rel <= 0 always accepts. Consumes one uniform draw.
bool metropolis_accept(double delta_rel, double temperature, std::mt19937_64& rng);

// Mirrors x into [lo, hi] (e.g. 10.3 on [0, 10] -> 9.7).
double reflect_into(double x, double lo, double hi);

}  // namespace pvshare
