#include "pvshare/profiles.hpp"

#include <array>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

#include "pvshare/rng.hpp"
#include "text_format.hpp"

namespace pvshare {

namespace {

constexpr int kHoursPerDay = 24;

void check_generator_args(int num_buildings, int days) {
  if (num_buildings < 1) throw std::invalid_argument("num_buildings must be >= 1");
  if (days < 1) throw std::invalid_argument("days must be >= 1");
}

// Hourly consumption shape before jitter: 0.2 kWh base with a narrow morning
// bump around 7:30 and a wider evening bump around 19:30.
struct LoadShape {
  std::array<double, kHoursPerDay> morning{};
  std::array<double, kHoursPerDay> evening{};
};

const LoadShape& load_shape() {
  static const LoadShape shape = [] {
    LoadShape s;
    for (int h = 0; h < kHoursPerDay; ++h) {
      const double dm = h - 7.5;
      const double de = h - 19.5;
      s.morning[h] = 1.5 * std::exp(-dm * dm / (2.0 * 1.2 * 1.2));
      s.evening[h] = 1.68 * std::exp(-de * de / (2.0 * 1.8 * 1.8));
    }
    return s;
  }();
  return shape;
}

}  // namespace

std::vector<EnergyProfile> generate_loads(std::uint64_t seed, int num_buildings, int days) {
  check_generator_args(num_buildings, days);
  const LoadShape& shape = load_shape();

  std::vector<EnergyProfile> out;
  out.reserve(num_buildings);
  for (int b = 0; b < num_buildings; ++b) {
    auto rng = seeded_rng(seed, stream::kLoadJitter + static_cast<std::uint64_t>(b));
    std::uniform_real_distribution<double> jitter(0.7, 1.3);

    EnergyProfile p;
    p.building_id = b;
    p.kind = "load";
    p.kwh.resize(static_cast<std::size_t>(days) * kHoursPerDay);
    for (int d = 0; d < days; ++d) {
      const double jm = jitter(rng);
      const double je = jitter(rng);
      for (int h = 0; h < kHoursPerDay; ++h) {
        p.kwh[static_cast<std::size_t>(d) * kHoursPerDay + h] =
            0.2 + jm * shape.morning[h] + je * shape.evening[h];
      }
    }
    out.push_back(normalize(std::move(p), kDailyTargetKwh, kHoursPerDay));
  }
  return out;
}

std::vector<EnergyProfile> generate_pv(std::uint64_t seed, int num_buildings, int days) {
  check_generator_args(num_buildings, days);

  // One shared irradiance trace: all roofs see the same sky.
  auto rng = seeded_rng(seed, stream::kPvJitter);
  std::uniform_real_distribution<double> amplitude(0.3, 1.3);

  EnergyProfile base;
  base.building_id = 0;
  base.kind = "pv";
  base.kwh.resize(static_cast<std::size_t>(days) * kHoursPerDay);
  for (int d = 0; d < days; ++d) {
    const double amp = amplitude(rng);
    for (int h = 6; h < 18; ++h) {
      // Half-cosine over daylight, sampled at the hour's midpoint.
      const double angle = std::numbers::pi * (h + 0.5 - 12.0) / 12.0;
      base.kwh[static_cast<std::size_t>(d) * kHoursPerDay + h] = amp * std::cos(angle);
    }
  }
  base = normalize(std::move(base), kDailyTargetKwh, kHoursPerDay);

  std::vector<EnergyProfile> out;
  out.reserve(num_buildings);
  for (int b = 0; b < num_buildings; ++b) {
    EnergyProfile p = base;
    p.building_id = b;
    out.push_back(std::move(p));
  }
  return out;
}

ProfileSet generated_profiles(std::uint64_t seed, int num_buildings, int days) {
  ProfileSet set;
  set.loads = generate_loads(seed, num_buildings, days);
  set.pv = generate_pv(seed, num_buildings, days);
  set.steps_per_day = kHoursPerDay;
  return set;
}

EnergyProfile normalize(EnergyProfile profile, double target_daily_kwh, int steps_per_day) {
  if (steps_per_day < 1) throw std::invalid_argument("steps_per_day must be >= 1");
  if (profile.kwh.empty() || profile.kwh.size() % static_cast<std::size_t>(steps_per_day) != 0) {
    throw std::invalid_argument("profile length must be a positive multiple of steps_per_day");
  }
  const double total = std::accumulate(profile.kwh.begin(), profile.kwh.end(), 0.0);
  if (!(total > 0.0)) {
    throw std::invalid_argument("cannot normalize a profile with zero total energy");
  }
  const double days = static_cast<double>(profile.kwh.size() / steps_per_day);
  const double scale = target_daily_kwh * days / total;
  for (double& v : profile.kwh) v *= scale;
  return profile;
}

void export_csv(const ProfileSet& set, std::ostream& out) {
  out << "building_id,step_index,kind,kwh\n";
  const auto dump = [&](const std::vector<EnergyProfile>& profiles) {
    for (const EnergyProfile& p : profiles) {
      for (std::size_t i = 0; i < p.kwh.size(); ++i) {
        out << p.building_id << ',' << i << ',' << p.kind << ','
            << detail::format_double(p.kwh[i]) << '\n';
      }
    }
  };
  dump(set.loads);
  dump(set.pv);
}

namespace {

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(detail::trim(line.substr(start)));
      return fields;
    }
    fields.push_back(detail::trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

[[noreturn]] void fail_row(std::size_t row, const std::string& what) {
  throw ProfileFormatError("row " + std::to_string(row) + ": " + what);
}

}  // namespace

ProfileSet import_csv(std::istream& in) {
  std::string line;
  std::size_t row = 1;
  if (!std::getline(in, line)) throw ProfileFormatError("row 1: missing header");
  if (detail::trim(line) != "building_id,step_index,kind,kwh") {
    fail_row(1, "expected header building_id,step_index,kind,kwh");
  }

  // (kind, building) -> step -> kwh; tolerant of row order, strict about gaps.
  std::map<std::pair<std::string, int>, std::map<int, double>> series;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto fields = split_row(line);
    if (fields.size() != 4) fail_row(row, "expected 4 comma-separated fields");

    const auto building = detail::parse_int<int>(fields[0]);
    if (!building || *building < 0) fail_row(row, "bad building_id");
    const auto step = detail::parse_int<int>(fields[1]);
    if (!step || *step < 0) fail_row(row, "bad step_index");
    const std::string kind(fields[2]);
    if (kind != "load" && kind != "pv") fail_row(row, "kind must be load or pv");
    const auto kwh = detail::parse_double(fields[3]);
    if (!kwh || !std::isfinite(*kwh)) fail_row(row, "bad kwh value");
    if (*kwh < 0.0) fail_row(row, "negative kwh");

    const auto [it, inserted] = series[{kind, *building}].emplace(*step, *kwh);
    (void)it;
    if (!inserted) fail_row(row, "duplicate (building, step, kind) sample");
  }
  if (series.empty()) throw ProfileFormatError("no profile rows found");

  ProfileSet set;
  std::size_t expected_steps = 0;
  int expected_buildings = 0;
  for (const auto& [key, samples] : series) {
    const auto& [kind, building] = key;
    // Steps must be 0..n-1 with no holes.
    if (samples.begin()->first != 0 || samples.rbegin()->first + 1 != static_cast<int>(samples.size())) {
      throw ProfileFormatError("profile " + kind + "/" + std::to_string(building) +
                               " has missing step indices");
    }
    if (expected_steps == 0) expected_steps = samples.size();
    if (samples.size() != expected_steps) {
      throw ProfileFormatError("profile " + kind + "/" + std::to_string(building) +
                               " length differs from the others");
    }
    EnergyProfile p;
    p.building_id = building;
    p.kind = kind;
    p.kwh.reserve(samples.size());
    for (const auto& [step, kwh] : samples) p.kwh.push_back(kwh);
    auto& bucket = kind == "load" ? set.loads : set.pv;
    if (building != static_cast<int>(bucket.size())) {
      throw ProfileFormatError("profile " + kind + "/" + std::to_string(building) +
                               " breaks the contiguous 0..n-1 building numbering");
    }
    bucket.push_back(std::move(p));
    expected_buildings = std::max(expected_buildings, building + 1);
  }
  if (set.loads.size() != set.pv.size()) {
    throw ProfileFormatError("load and pv profile counts differ");
  }
  return set;
}

}  // namespace pvshare
