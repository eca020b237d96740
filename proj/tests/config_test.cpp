#include <sstream>

#include <gtest/gtest.h>

#include "fringefit/config.hpp"

namespace fringefit {
namespace {

TEST(ScenarioConfig, Defaults) {
  const ScenarioConfig c;
  EXPECT_EQ(c.params.mean_o, 2.21);
  EXPECT_EQ(c.params.mean_h, 6.33);
  EXPECT_EQ(c.params.amplitude, 1.03);
  EXPECT_EQ(c.params.phase, 4.83);
  EXPECT_EQ(c.positions, 8u);
  EXPECT_EQ(c.samples, 690u);
  EXPECT_EQ(c.runs, 20u);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.windows(), WindowGrid::equidistant(32));
}

TEST(ParseConfig, KeysCommentsAndWhitespace) {
  std::istringstream in(
      "# scenario\n"
      "i_o = 0.551\n"
      "  i_h=1.582   # trailing comment\n"
      "i_v = 0.258\n"
      "theta = -1.0\n"
      "positions = 12\n"
      "samples = 5\n"
      "runs = 3\n"
      "seed = 18446744073709551615\n"
      "windows = 4\n"
      "out = /tmp/x.csv\n"
      "\n");
  const ScenarioConfig c = parse_config(in);
  EXPECT_EQ(c.params.mean_o, 0.551);
  EXPECT_EQ(c.params.mean_h, 1.582);
  EXPECT_EQ(c.params.amplitude, 0.258);
  EXPECT_DOUBLE_EQ(c.params.phase, kTwoPi - 1.0);
  EXPECT_EQ(c.positions, 12u);
  EXPECT_EQ(c.samples, 5u);
  EXPECT_EQ(c.runs, 3u);
  EXPECT_EQ(c.seed, 18446744073709551615ull);
  EXPECT_EQ(c.window_count, 4u);
  EXPECT_EQ(c.output_path, "/tmp/x.csv");
}

TEST(ParseConfig, Errors) {
  auto fails = [](const char* text) {
    std::istringstream in(text);
    try {
      parse_config(in);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_EQ(fails("i_o = 1\nvisibility = 3\n"), "line 2: unknown config key 'visibility'");
  EXPECT_NE(fails("i_o = abc\n"), "");
  EXPECT_NE(fails("positions = -3\n"), "");
  EXPECT_NE(fails("positions = 2.5\n"), "");
  EXPECT_EQ(fails("i_o 1\n"), "line 1: expected key = value");
  EXPECT_NE(fails("theta = nan\n"), "");
}

TEST(ScenarioConfig, Validation) {
  ScenarioConfig c;
  c.params.amplitude = 3.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.positions = 1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.samples = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.window_count = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(WriteConfig, RoundTrip) {
  ScenarioConfig c;
  c.params = {0.1, 0.3, 0.05, 1.0 / 3.0};
  c.positions = 6;
  c.seed = 77;
  c.output_path = "result.csv";
  std::ostringstream out;
  write_config(out, c);
  std::istringstream in(out.str());
  const ScenarioConfig back = parse_config(in);
  EXPECT_EQ(back.params.phase, c.params.phase);
  EXPECT_EQ(back.params.amplitude, c.params.amplitude);
  EXPECT_EQ(back.positions, 6u);
  EXPECT_EQ(back.seed, 77u);
  EXPECT_EQ(back.output_path, "result.csv");
}

TEST(ScenarioPreset, Values) {
  const auto fig2 = scenario_preset("fig2");
  ASSERT_TRUE(fig2);
  EXPECT_EQ(fig2->params.amplitude, 1.03);
  EXPECT_EQ(fig2->samples, 690u);
  EXPECT_EQ(fig2->runs, 20u);
  EXPECT_EQ(fig2->windows().size(), 33u);

  const auto a = scenario_preset("fig3a");
  EXPECT_EQ(a->params.amplitude, 0.258);
  EXPECT_EQ(a->params.mean_o, 2.21);

  const auto c = scenario_preset("fig3c");
  EXPECT_EQ(c->params.mean_o, 0.551);
  EXPECT_EQ(c->params.mean_h, 1.582);
  EXPECT_EQ(c->params.amplitude, 0.258);

  const auto f4 = scenario_preset("fig4");
  EXPECT_EQ(f4->params.mean_o, 22.1);
  EXPECT_EQ(f4->params.mean_h, 63.3);
  EXPECT_EQ(f4->params.amplitude, 10.3);
  EXPECT_GE(f4->samples, 5000u);
  for (const auto* p : {&*fig2, &*a, &*c, &*f4}) EXPECT_NO_THROW(p->validate());

  EXPECT_FALSE(scenario_preset("fig5"));
}

TEST(ScenarioConfig, BatchSpec) {
  ScenarioConfig c;
  c.positions = 5;
  c.samples = 9;
  const BatchSpec b = c.batch(123);
  EXPECT_EQ(b.grid.count(), 5u);
  EXPECT_EQ(b.sample_count, 9u);
  EXPECT_EQ(b.master_seed, 123u);
}

}  // namespace
}  // namespace fringefit
