#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ffsim/config.hpp"

using namespace ffsim;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ffsim_config_test_" + name)).string();
}

}  // namespace

TEST(Config, EmptyTextGivesDefaults) {
  const SimulationConfig c = parse_config("  \n");
  const SimulationConfig d;
  EXPECT_EQ(config_to_json(c), config_to_json(d));
  EXPECT_EQ(config_to_json(parse_config("{}")), config_to_json(d));
}

TEST(Config, PartialFileOverridesOnlyGivenKeys) {
  const SimulationConfig c = parse_config(R"({"duration": 600, "controller": {"orbit": "lqr",
      "orbit_nftsm": {"epsilon": 0.02}}, "initial": {"position_error": [1, 2, 3]}})");
  EXPECT_EQ(c.duration, 600.0);
  EXPECT_EQ(c.control.orbit, ControllerKind::kLqr);
  EXPECT_EQ(c.control.attitude, ControllerKind::kNftsm);
  EXPECT_EQ(c.control.orbit_nftsm.sliding.epsilon, 0.02);
  EXPECT_EQ(c.control.orbit_nftsm.sliding.rho, 1.9);
  EXPECT_EQ(c.initial.position_error, Vector3(1, 2, 3));
}

TEST(Config, RhoOutOfRangeRejected) {
  try {
    parse_config(R"({"controller": {"orbit_nftsm": {"rho": 2.5}}})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("rho out of (1,2)"), std::string::npos);
  }
}

TEST(Config, UnknownKeysAndTypeErrorsReportedTogether) {
  try {
    parse_config(R"({"durration": 10, "chief": {"altitude": "high", "colour": 1}})");
    FAIL();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("durration"), std::string::npos);
    EXPECT_NE(what.find("chief.colour"), std::string::npos);
    EXPECT_NE(what.find("chief.altitude"), std::string::npos);
  }
}

TEST(Config, ParseErrorCarriesLineAndColumn) {
  try {
    parse_config("{\n  \"duration\": 10,\n  \"dt\": ,\n}", "bad.json");
    FAIL();
  } catch (const ConfigParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 9);
    EXPECT_EQ(std::string(e.what()).rfind("bad.json:3:9", 0), 0u);
  }
}

TEST(Config, SaveLoadRoundTripIsIdempotent) {
  SimulationConfig c;
  c.duration = 1200;
  c.seed = 99;
  c.control.attitude = ControllerKind::kPd;
  c.control.attitude_pd = {1.5e-4, 2.5e-3};
  c.initial.attitude_axis = Vector3(0.1, -0.2, 0.7);
  c.chief.raan_deg = -17.3;
  c.environment.cp_offset = Vector3(0.01, 0.005, -0.002);
  c.uncertainty.random_dipole = false;
  const std::string path = temp_path("roundtrip.json");
  save_config(c, path);
  const SimulationConfig back = load_config(path);
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  save_config(back, path);
  EXPECT_EQ(config_to_json(load_config(path)), config_to_json(c));
  std::filesystem::remove(path);
}

TEST(Config, MissingFileIsConfigError) {
  EXPECT_THROW(load_config(temp_path("does_not_exist.json")), ConfigError);
}

TEST(Config, BadControllerName) {
  EXPECT_THROW(parse_config(R"({"controller": {"orbit": "bangbang"}})"), ConfigError);
}
