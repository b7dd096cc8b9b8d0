#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "pvshare/profiles.hpp"

using namespace pvshare;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("generated profiles have the right shape and scale") {
  const ProfileSet set = generated_profiles(7, 6, 30);
  REQUIRE(set.loads.size() == 6);
  REQUIRE(set.pv.size() == 6);
  CHECK(set.steps_per_day == 24);

  for (int b = 0; b < 6; ++b) {
    CHECK(set.loads[b].building_id == b);
    CHECK(set.loads[b].kind == "load");
    REQUIRE(set.loads[b].kwh.size() == 30 * 24);
    CHECK(set.pv[b].kind == "pv");
    REQUIRE(set.pv[b].kwh.size() == 30 * 24);

    // Normalisation pins the horizon total, not each single day.
    CHECK(sum(set.loads[b].kwh) == doctest::Approx(30 * kDailyTargetKwh).epsilon(1e-12));
    CHECK(sum(set.pv[b].kwh) == doctest::Approx(30 * kDailyTargetKwh).epsilon(1e-12));
    for (double v : set.loads[b].kwh) CHECK(v > 0.0);
  }
}

TEST_CASE("pv is one shared irradiance trace with dark nights") {
  const ProfileSet set = generated_profiles(3, 4, 5);
  for (int b = 1; b < 4; ++b) CHECK(set.pv[b].kwh == set.pv[0].kwh);

  for (int d = 0; d < 5; ++d) {
    for (int h = 0; h < 24; ++h) {
      const double v = set.pv[0].kwh[d * 24 + h];
      if (h < 6 || h >= 18) {
        CHECK(v == 0.0);
      } else {
        CHECK(v > 0.0);
      }
    }
    // The half-cosine peaks at noon.
    const auto day = set.pv[0].kwh.begin() + d * 24;
    CHECK(*(day + 12) >= *(day + 6));
    CHECK(*(day + 11) >= *(day + 17));
  }
}

TEST_CASE("loads are jittered per building and day") {
  const ProfileSet set = generated_profiles(11, 3, 4);
  CHECK(set.loads[0].kwh != set.loads[1].kwh);
  CHECK(set.loads[1].kwh != set.loads[2].kwh);

  // Day shapes differ within one building too (independent day jitters).
  const std::vector<double> day0(set.loads[0].kwh.begin(), set.loads[0].kwh.begin() + 24);
  const std::vector<double> day1(set.loads[0].kwh.begin() + 24, set.loads[0].kwh.begin() + 48);
  CHECK(day0 != day1);
}

TEST_CASE("generation is deterministic in the seed") {
  const ProfileSet a = generated_profiles(99, 2, 3);
  const ProfileSet b = generated_profiles(99, 2, 3);
  const ProfileSet c = generated_profiles(100, 2, 3);
  CHECK(a.loads[0].kwh == b.loads[0].kwh);
  CHECK(a.pv[0].kwh == b.pv[0].kwh);
  CHECK(a.loads[0].kwh != c.loads[0].kwh);
  CHECK(a.pv[0].kwh != c.pv[0].kwh);

  CHECK_THROWS_AS(generated_profiles(1, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(generated_profiles(1, 2, 0), std::invalid_argument);
}

TEST_CASE("normalize rescales to the daily target") {
  // Two days of constant 1 kWh sum to 48; hitting a 12 kWh/day target means
  // scaling by exactly one half (all quantities dyadic, so no rounding).
  EnergyProfile p{0, "load", std::vector<double>(48, 1.0)};
  const EnergyProfile scaled = normalize(p, 12.0, 24);
  for (double v : scaled.kwh) CHECK(v == 0.5);

  EnergyProfile zero{0, "load", std::vector<double>(24, 0.0)};
  CHECK_THROWS_AS(normalize(zero, 16.0, 24), std::invalid_argument);
  EnergyProfile empty{0, "load", {}};
  CHECK_THROWS_AS(normalize(empty, 16.0, 24), std::invalid_argument);
  EnergyProfile ragged{0, "load", std::vector<double>(30, 1.0)};
  CHECK_THROWS_AS(normalize(ragged, 16.0, 24), std::invalid_argument);
}

TEST_CASE("csv export/import round-trips exactly") {
  ProfileSet set;
  set.steps_per_day = 2;
  // Values chosen to stress shortest-form formatting.
  set.loads.push_back({0, "load", {0.1, 1.0 / 3.0}});
  set.loads.push_back({1, "load", {16.0, 1e-17}});
  set.pv.push_back({0, "pv", {2.5000000000000004, 0.0}});
  set.pv.push_back({1, "pv", {123456.789, 9.999999999999999e-5}});

  std::stringstream buffer;
  export_csv(set, buffer);
  const ProfileSet back = import_csv(buffer);

  REQUIRE(back.loads.size() == 2);
  REQUIRE(back.pv.size() == 2);
  for (int b = 0; b < 2; ++b) {
    CHECK(back.loads[b].kwh == set.loads[b].kwh);
    CHECK(back.pv[b].kwh == set.pv[b].kwh);
  }

  // And the bytes are stable under a second export.
  std::stringstream again;
  export_csv(back, again);
  CHECK(again.str() == buffer.str());
}

TEST_CASE("csv import rejects malformed input with the row number") {
  const auto expect_error = [](const std::string& csv, const std::string& needle) {
    std::stringstream in(csv);
    try {
      import_csv(in);
      FAIL_CHECK("expected ProfileFormatError for: " << csv);
    } catch (const ProfileFormatError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  const std::string header = "building_id,step_index,kind,kwh\n";

  expect_error("bad,header,row,x\n", "header");
  expect_error(header + "0,0,load\n", "row 2");
  expect_error(header + "0,0,load,1.0\n0,1,load,-0.5\n", "row 3: negative kwh");
  expect_error(header + "0,0,load,abc\n", "bad kwh");
  expect_error(header + "0,zero,load,1.0\n", "bad step_index");
  expect_error(header + "0,0,heat,1.0\n", "kind must be load or pv");
  expect_error(header + "0,0,load,1.0\n0,0,load,2.0\n", "duplicate");
  expect_error(header + "0,0,load,1.0\n0,2,load,2.0\n", "missing step indices");
  expect_error(header + "0,0,load,1.0\n0,0,pv,1.0\n1,0,load,1.0\n1,0,pv,1.0\n1,1,load,1.0\n",
               "length differs");
  expect_error(header + "2,0,load,1.0\n2,0,pv,1.0\n", "contiguous");
  expect_error(header + "0,0,load,1.0\n", "counts differ");
  expect_error("", "missing header");
}

TEST_CASE("generated profiles survive the csv round-trip bit for bit") {
  const ProfileSet set = generated_profiles(5, 6, 2);
  std::stringstream buffer;
  export_csv(set, buffer);
  const ProfileSet back = import_csv(buffer);
  for (int b = 0; b < 6; ++b) {
    CHECK(back.loads[b].kwh == set.loads[b].kwh);
    CHECK(back.pv[b].kwh == set.pv[b].kwh);
  }
}
