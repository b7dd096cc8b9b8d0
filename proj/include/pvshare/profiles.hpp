#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvshare {

// Mean daily energy every generated profile is scaled to, in kWh.
inline constexpr double kDailyTargetKwh = 16.0;

struct EnergyProfile {
  int building_id = 0;
  std::string kind;          // "load" or "pv"
  std::vector<double> kwh;   // one value per timestep, horizon-long
};

struct ProfileSet {
  std::vector<EnergyProfile> loads;  // one per building, index order
  std::vector<EnergyProfile> pv;
  int steps_per_day = 24;
};

// Raised by import_csv with the offending 1-based row number in the message.
struct ProfileFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Synthetic household consumption: flat base plus morning (hours 6-9) and
// evening (hours 17-22) bumps, jittered per building and day, normalised to
// kDailyTargetKwh mean per day. Deterministic in `seed`.
std::vector<EnergyProfile> generate_loads(std::uint64_t seed, int num_buildings, int days);

// Synthetic generation: half-cosine between hours 6 and 18 with a per-day
// amplitude jitter in [0.3, 1.3], identical for every building (one shared
// irradiance), normalised like the loads. Night steps are exactly zero.
std::vector<EnergyProfile> generate_pv(std::uint64_t seed, int num_buildings, int days);

// Both of the above with consistent streams derived from one seed.
ProfileSet generated_profiles(std::uint64_t seed, int num_buildings, int days);

// Scales the profile so its per-day mean equals target_daily_kwh.
// Throws std::invalid_argument if the profile sums to zero, is empty, or is
// not a whole number of days long.
EnergyProfile normalize(EnergyProfile profile, double target_daily_kwh, int steps_per_day = 24);

// CSV round-trip. Columns: building_id,step_index,kind,kwh with a header row.
// Numbers use shortest exact formatting so import(export(s)) == s.
void export_csv(const ProfileSet& set, std::ostream& out);
ProfileSet import_csv(std::istream& in);

}  // namespace pvshare
