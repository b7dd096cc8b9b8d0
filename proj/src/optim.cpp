#include "pvshare/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "pvshare/rng.hpp"

namespace pvshare {

namespace {

constexpr double kPositionTolerance = 1e-9;

void check_context(const SearchContext& ctx) {
  if (ctx.profiles == nullptr) throw std::invalid_argument("search context has no profiles");
  validate_scenario(ctx.spec);
  validate_weights(ctx.weights);
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// prefix + terminator + the unused actions in ascending id order. Rankings
// with the same effective prefix behave identically, so this is the one
// representative reported per tie class.
Ranking canonical_completion(std::span<const Action> prefix, const std::vector<Action>& selectable) {
  Ranking full(prefix.begin(), prefix.end());
  full.push_back(kTerminator);
  for (Action a : selectable) {
    if (a == kTerminator) continue;
    if (std::find(prefix.begin(), prefix.end(), a) == prefix.end()) full.push_back(a);
  }
  return full;
}

void decimate_trace(std::vector<std::pair<std::uint64_t, double>>& trace) {
  constexpr std::size_t kMaxPoints = 10000;
  if (trace.size() <= kMaxPoints) return;
  const std::size_t stride = (trace.size() + kMaxPoints - 2) / (kMaxPoints - 1);
  std::vector<std::pair<std::uint64_t, double>> kept;
  for (std::size_t i = 0; i < trace.size(); i += stride) kept.push_back(trace[i]);
  if (kept.back() != trace.back()) kept.push_back(trace.back());
  trace = std::move(kept);
}

}  // namespace

SearchResult exhaustive_search(const SearchContext& ctx, const ExhaustiveOptions& options) {
  check_context(ctx);
  const int n = static_cast<int>(ctx.spec.selectable_actions.size());
  if (options.cap < 1) throw std::invalid_argument("exhaustive cap must be >= 1");
  if (n > options.cap) {
    throw CapExceeded("refusing to enumerate " + std::to_string(n) + "! = " +
                      std::to_string(factorial(n)) + " rankings (cap is " +
                      std::to_string(options.cap) + " actions); raise the cap to force it");
  }

  Evaluator ev(ctx.spec, *ctx.profiles, ctx.weights);
  std::vector<Action> arr = ctx.spec.selectable_actions;

  bool seen_any = false;
  ObjectiveBreakdown best_bd;
  std::vector<Action> best_prefix;
  std::set<std::vector<Action>> optimal_prefixes;

  const auto visit = [&] {
    const auto stop = std::find(arr.begin(), arr.end(), kTerminator);
    const std::span<const Action> prefix(arr.data(),
                                         static_cast<std::size_t>(stop - arr.begin()));
    const ObjectiveBreakdown bd = ev.evaluate_prefix(prefix);
    if (!seen_any || compare(bd, best_bd) < 0) {
      seen_any = true;
      best_bd = bd;
      best_prefix.assign(prefix.begin(), prefix.end());
      optimal_prefixes.clear();
      optimal_prefixes.insert(best_prefix);
    } else if (compare(bd, best_bd) == 0) {
      std::vector<Action> key(prefix.begin(), prefix.end());
      if (key < best_prefix) {
        best_prefix = key;
        best_bd = bd;
      }
      optimal_prefixes.insert(std::move(key));
    }
  };

  const auto permute = [&](auto&& self, int k) -> void {
    if (k == n) {
      visit();
      return;
    }
    for (int i = k; i < n; ++i) {
      std::swap(arr[k], arr[i]);
      self(self, k + 1);
      std::swap(arr[k], arr[i]);
    }
  };
  permute(permute, 0);

  SearchResult result;
  result.best_ranking = canonical_completion(best_prefix, ctx.spec.selectable_actions);
  result.best_breakdown = best_bd;
  result.evaluations = ev.evaluations();
  result.optimal_set.reserve(optimal_prefixes.size());
  for (const auto& prefix : optimal_prefixes) {
    result.optimal_set.push_back(canonical_completion(prefix, ctx.spec.selectable_actions));
  }
  return result;
}

SearchResult gradient_descent(const SearchContext& ctx, std::uint64_t seed) {
  check_context(ctx);
  const int n = static_cast<int>(ctx.spec.selectable_actions.size());
  Evaluator ev(ctx.spec, *ctx.profiles, ctx.weights);

  // Fisher-Yates start so every permutation is an equally likely basin probe.
  Ranking order = ctx.spec.selectable_actions;
  auto rng = seeded_rng(seed, stream::kGradientDescent);
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(order[i], order[pick(rng)]);
  }

  SearchResult result;
  ObjectiveBreakdown current = ev.evaluate(order);
  result.trace.push_back({ev.evaluations(), current.value});

  while (true) {
    ++result.rounds;
    int best_swap = -1;
    ObjectiveBreakdown best_bd;
    for (int i = 0; i + 1 < n; ++i) {
      std::swap(order[i], order[i + 1]);
      const ObjectiveBreakdown bd = ev.evaluate(order);
      std::swap(order[i], order[i + 1]);
      // Steepest descent; the < keeps the lowest index on equal improvements.
      if (compare(bd, current) < 0 && (best_swap < 0 || compare(bd, best_bd) < 0)) {
        best_swap = i;
        best_bd = bd;
      }
    }
    if (best_swap < 0) break;
    std::swap(order[best_swap], order[best_swap + 1]);
    current = best_bd;
    result.trace.push_back({ev.evaluations(), current.value});
  }

  result.best_ranking = std::move(order);
  result.best_breakdown = current;
  result.evaluations = ev.evaluations();
  decimate_trace(result.trace);
  return result;
}

void validate_sa_config(const SaConfig& cfg) {
  if (!(cfg.sd > 0.0)) throw std::invalid_argument("sa sd must be > 0");
  if (cfg.iterations_per_action < 1) {
    throw std::invalid_argument("sa iterations_per_action must be >= 1");
  }
  if (!(cfg.initial_temperature > 0.0)) {
    throw std::invalid_argument("sa initial_temperature must be > 0");
  }
  if (!(cfg.freeze_threshold > 0.0) || cfg.freeze_threshold > cfg.initial_temperature) {
    throw std::invalid_argument("sa freeze_threshold must be in (0, initial_temperature]");
  }
  if (cfg.cooling_factor && !(*cfg.cooling_factor > 0.0 && *cfg.cooling_factor < 1.0)) {
    throw std::invalid_argument("sa cooling_factor must be in (0, 1)");
  }
}

Ranking positions_to_ranking(std::span<const Action> actions, std::span<const double> positions) {
  if (actions.size() != positions.size()) {
    throw std::invalid_argument("one position per action required");
  }
  std::vector<int> idx(actions.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return positions[a] > positions[b]; });
  Ranking out;
  out.reserve(actions.size());
  for (int i : idx) out.push_back(actions[i]);
  return out;
}

bool metropolis_accept(double delta_rel, double temperature, std::mt19937_64& rng) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  return uniform(rng) < std::exp(-delta_rel / temperature);
}

double reflect_into(double x, double lo, double hi) {
  const double width = hi - lo;
  double t = std::fmod(x - lo, 2.0 * width);
  if (t < 0.0) t += 2.0 * width;
  return lo + (t <= width ? t : 2.0 * width - t);
}

SearchResult simulated_annealing(const SearchContext& ctx, const SaConfig& config) {
  check_context(ctx);
  validate_sa_config(config);
  const auto& actions = ctx.spec.selectable_actions;
  const int n = static_cast<int>(actions.size());
  const double hi = static_cast<double>(n);
  const std::uint64_t budget = config.iterations_per_action * static_cast<std::uint64_t>(n);

  Evaluator ev(ctx.spec, *ctx.profiles, ctx.weights);
  auto rng = seeded_rng(config.seed, stream::kSimulatedAnnealing);
  std::uniform_real_distribution<double> uniform_pos(0.0, hi);
  std::normal_distribution<double> gauss(0.0, config.sd);

  const auto collides_with_earlier = [&](const std::vector<double>& p, int i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(p[i] - p[j]) < kPositionTolerance) return true;
    }
    return false;
  };

  std::vector<double> incumbent(n);
  for (int i = 0; i < n; ++i) {
    incumbent[i] = uniform_pos(rng);
    while (collides_with_earlier(incumbent, i)) incumbent[i] = uniform_pos(rng);
  }

  // Reused decode buffers: index sort by descending position, then prefix scan.
  std::vector<int> idx(n);
  Ranking decoded(n, kTerminator);
  const auto decode = [&](const std::vector<double>& pos) -> std::span<const Action> {
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 1; i < n; ++i) {  // insertion sort: n is tiny and this allocates nothing
      const int key = idx[i];
      int j = i - 1;
      while (j >= 0 && pos[idx[j]] < pos[key]) {
        idx[j + 1] = idx[j];
        --j;
      }
      idx[j + 1] = key;
    }
    int terminator_at = -1;
    for (int i = 0; i < n; ++i) {
      decoded[i] = actions[idx[i]];
      if (decoded[i] == kTerminator && terminator_at < 0) terminator_at = i;
    }
    return {decoded.data(), static_cast<std::size_t>(terminator_at < 0 ? n : terminator_at)};
  };

  SearchResult result;
  ObjectiveBreakdown current = ev.evaluate_prefix(decode(incumbent));
  ObjectiveBreakdown best_bd = current;
  Ranking best_ranking = decoded;
  result.trace.push_back({1, current.value});

  double temperature = config.initial_temperature;
  const double cooling =
      config.cooling_factor
          ? *config.cooling_factor
          : std::pow(config.freeze_threshold / config.initial_temperature,
                     1.0 / (0.9 * static_cast<double>(budget)));
  temperature *= cooling;

  std::vector<double> candidate(n);
  for (std::uint64_t iter = 2; iter <= budget; ++iter) {
    for (int i = 0; i < n; ++i) {
      candidate[i] = reflect_into(incumbent[i] + gauss(rng), 0.0, hi);
    }
    for (int i = 1; i < n; ++i) {
      while (collides_with_earlier(candidate, i)) {
        candidate[i] = reflect_into(incumbent[i] + gauss(rng), 0.0, hi);
      }
    }

    const ObjectiveBreakdown bd = ev.evaluate_prefix(decode(candidate));
    const int cmp = compare(bd, current);
    bool accept;
    if (temperature < config.freeze_threshold) {
      accept = cmp < 0;  // frozen: strict improvements only
    } else if (cmp < 0) {
      accept = true;
    } else {
      const double delta_rel = cmp == 0 ? 0.0 : (bd.value - current.value) / current.value;
      accept = metropolis_accept(delta_rel, temperature, rng);
    }
    if (accept) {
      std::swap(incumbent, candidate);
      current = bd;
    }
    if (compare(bd, best_bd) < 0) {
      best_bd = bd;
      best_ranking = decoded;
      result.trace.push_back({iter, bd.value});
    }
    temperature *= cooling;
  }

  result.best_ranking = std::move(best_ranking);
  result.best_breakdown = best_bd;
  result.evaluations = ev.evaluations();
  decimate_trace(result.trace);
  return result;
}

}  // namespace pvshare
