#include "lidarscan/config.hpp"
#include "lidarscan/csv.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace lidarscan;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST(Config, EmptyTextGivesDefaults) {
  const RunConfig c = parse_config("");
  EXPECT_TRUE(c.large);
  EXPECT_EQ(c.correction, Correction::zero_pivot_stiffness);
  EXPECT_EQ(c.controller.u0, 20.0);
  EXPECT_EQ(c.controller.ts_control, 1e-3);
  EXPECT_EQ(c.controller.ts_demand, 1e-3);
  EXPECT_TRUE(c.controller.prediction);
  EXPECT_EQ(c.output_path, "-");
}

TEST(Config, SingleOverride) {
  const RunConfig c = parse_config("controller.u0_volts=10\n");
  EXPECT_EQ(c.controller.u0, 10.0);
  const RunConfig d;
  EXPECT_EQ(c.controller.ts_control, d.controller.ts_control);
  EXPECT_EQ(c.large, d.large);
}

TEST(Config, TwoRateMode) {
  const RunConfig c = parse_config("controller.ts_demand_s=0.004\ncontroller.ts_control_s=0.001\n");
  EXPECT_EQ(c.controller.ts_demand, 0.004);
  EXPECT_EQ(c.controller.ts_control, 0.001);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, CommentsAndWhitespace) {
  const RunConfig c = parse_config("# baseline\n\n  actuator = small   # inline\nplant.kind=friction3\n");
  EXPECT_FALSE(c.large);
  EXPECT_EQ(c.plant, PlantKind::friction3);
  EXPECT_EQ(c.plant_spec().params.Tc, kCalibratedTc);
}

TEST(Config, ErrorsNameTheLine) {
  try {
    parse_config("actuator=large\n\nnot.a.key=1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_key);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    parse_config("actuator=large\nthis line has no equals\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_EQ(kind_of([] { parse_config("controller.u0_volts=abc\n"); }), ErrorKind::parse_error);
}

TEST(Config, EveryListedKeyAcceptsItsDefault) {
  const auto keys = config_keys();
  EXPECT_GE(keys.size(), 20u);
  RunConfig c;
  for (const auto& [key, value] : keys) EXPECT_NO_THROW(apply_setting(c, key, value)) << key;
  EXPECT_EQ(kind_of([&] { apply_setting(c, "controller.gain", "1"); }), ErrorKind::unknown_key);
}

TEST(Config, UnsupportedCombination) {
  RunConfig c;
  c.plant = PlantKind::friction3;
  c.controller.ts_demand = 0.0025;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Config, LoadFile) {
  const auto path = std::filesystem::temp_directory_path() / "lidarscan_config_test.cfg";
  {
    std::ofstream f(path);
    f << "actuator=small\ncontroller.u0_volts=15\n";
  }
  const RunConfig c = load_config(path.string());
  EXPECT_FALSE(c.large);
  EXPECT_EQ(c.controller.u0, 15.0);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path.string()), Error);
}

TEST(Config, DerivedDemandUsesScanDefaults) {
  RunConfig c;
  c.large = false;
  const DemandSignal d = c.demand();
  EXPECT_EQ(d.kind, DemandKind::sinusoid);
  EXPECT_NEAR(rad_to_deg(d.amplitude), 3.57, 1e-12);
  EXPECT_EQ(d.frequency_hz, 20.0);
  EXPECT_NEAR(c.target(), 3.57, 1e-12);
}

TEST(Csv, FixedFormatting) {
  EXPECT_EQ(format_fixed(1.0, 6), "1.000000");
  EXPECT_EQ(format_fixed(-0.0000001, 6), "0.000000");
  EXPECT_EQ(format_fixed(-1.25, 2), "-1.25");
  EXPECT_EQ(format_fixed(std::nan(""), 6), "nan");
}

TEST(Csv, LayoutAndRoundTrip) {
  CsvTable t;
  t.header = {"t_s", "phi_deg"};
  t.rows = {{0.0, 1.5}, {0.001, -2.25}};
  const std::string text = to_csv(t);
  EXPECT_EQ(text, "t_s,phi_deg\n0.000000,1.500000\n0.001000,-2.250000\n");
  const CsvTable back = parse_csv(text);
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(to_csv(back), text);
}

TEST(Csv, ScanTableRoundTrip) {
  const auto samples = flatten(generate_ideal_scan(ScanConfig{}, 0.4));
  const std::string text = to_csv(scan_table(samples));
  const auto back = scan_samples(parse_csv(text));
  ASSERT_EQ(back.size(), samples.size());
  EXPECT_EQ(to_csv(scan_table(back)), text);
  for (std::size_t k = 0; k < samples.size(); ++k) EXPECT_NEAR(back[k].x, samples[k].x, 5e-7);
}

TEST(Csv, TwoDecimalFormat) {
  const auto samples = flatten(generate_ideal_scan(ScanConfig{}, 0.004));
  const std::string text = to_csv(scan_table(samples), paper_format_decimals());
  EXPECT_EQ(text, "t_s,phi_lm_deg,phi_sm_deg,x_m,y_m\n0.000,8.35,0.00,60.00,0.00\n0.004,8.33,-1.72,59.88,-12.57\n");
}

TEST(Csv, ParseErrorsNameTheLine) {
  try {
    parse_csv("a,b\n1,2\n3\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_csv("a\nx1\n"), Error);
  EXPECT_THROW(parse_csv(""), Error);
}

TEST(Csv, SeriesTableHasTimeFirst) {
  TimeSeries s(0.5, 0.0, {"phi_rad"});
  s.push_row({1.0});
  s.push_row({2.0});
  const CsvTable t = series_table(s);
  EXPECT_EQ(t.header, (std::vector<std::string>{"time_s", "phi_rad"}));
  EXPECT_EQ(t.rows[1], (std::vector<double>{0.5, 2.0}));
}
