#include "pvshare/config.hpp"

#include <fstream>
#include <set>

#include "pvshare/scenario.hpp"
#include "text_format.hpp"

namespace pvshare {

namespace {

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double need_double(std::string_view value, std::size_t line) {
  const auto parsed = detail::parse_double(value);
  if (!parsed) fail_line(line, "expected a number, got \"" + std::string(value) + "\"");
  return *parsed;
}

template <class Int>
Int need_int(std::string_view value, std::size_t line) {
  const auto parsed = detail::parse_int<Int>(value);
  if (!parsed) fail_line(line, "expected an integer, got \"" + std::string(value) + "\"");
  return *parsed;
}

}  // namespace

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);

  RunConfig cfg;
  std::string section;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_line(line_no, "unterminated section header");
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (section != "weights" && section != "sa" && section != "exhaustive") {
        fail_line(line_no, "unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail_line(line_no, "expected key = value");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));

    if (section.empty()) {
      if (key == "scenario") cfg.scenario = std::string(value);
      else if (key == "optimizer") cfg.optimizer = std::string(value);
      else if (key == "seed") cfg.seed = need_int<std::uint64_t>(value, line_no);
      else if (key == "seeds") cfg.num_seeds = need_int<int>(value, line_no);
      else if (key == "days") cfg.days = need_int<int>(value, line_no);
      else if (key == "profiles") cfg.profiles_csv = std::string(value);
      else if (key == "out") cfg.out_dir = std::string(value);
      else fail_line(line_no, "unknown key \"" + key + "\"");
    } else if (section == "weights") {
      if (key == "direct_local_pv") cfg.weights.direct_local_pv = need_double(value, line_no);
      else if (key == "direct_own_pv") cfg.weights.direct_own_pv = need_double(value, line_no);
      else if (key == "local_storage") cfg.weights.local_storage = need_double(value, line_no);
      else if (key == "own_storage_loading") {
        cfg.weights.own_storage_loading = need_double(value, line_no);
      } else {
        fail_line(line_no, "unknown key \"" + key + "\" in [weights]");
      }
    } else if (section == "sa") {
      if (key == "sd") cfg.sa.sd = need_double(value, line_no);
      else if (key == "iterations_per_action") {
        cfg.sa.iterations_per_action = need_int<std::uint64_t>(value, line_no);
      } else if (key == "initial_temperature") {
        cfg.sa.initial_temperature = need_double(value, line_no);
      } else if (key == "freeze_threshold") {
        cfg.sa.freeze_threshold = need_double(value, line_no);
      } else if (key == "cooling_factor") {
        cfg.sa.cooling_factor = need_double(value, line_no);
      } else {
        fail_line(line_no, "unknown key \"" + key + "\" in [sa]");
      }
    } else {  // exhaustive
      if (key == "cap") cfg.exhaustive.cap = need_int<int>(value, line_no);
      else fail_line(line_no, "unknown key \"" + key + "\" in [exhaustive]");
    }
  }

  validate_run_config(cfg);
  return cfg;
}

void validate_run_config(const RunConfig& cfg) {
  try {
    scenario_preset(cfg.scenario);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  static const std::set<std::string> optimizers = {
      "exhaustive", "gd", "gradient_descent", "sa", "simulated_annealing", "all"};
  if (!optimizers.contains(cfg.optimizer)) {
    throw ConfigError("unknown optimizer \"" + cfg.optimizer +
                      "\" (use exhaustive, gd, sa or all)");
  }
  if (cfg.num_seeds < 1) throw ConfigError("seeds must be >= 1");
  if (cfg.days < 1) throw ConfigError("days must be >= 1");
  if (cfg.out_dir.empty()) throw ConfigError("out dir must not be empty");

  try {
    validate_weights(cfg.weights);
    validate_sa_config(cfg.sa);
    if (cfg.exhaustive.cap < 1) throw std::invalid_argument("exhaustive cap must be >= 1");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace pvshare
