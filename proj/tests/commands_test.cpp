#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fringefit/commands.hpp"
#include "fringefit/csv_io.hpp"

namespace fringefit::cli {
namespace {

namespace fs = std::filesystem;

class CommandsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fringefit_cmd_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  static std::size_t lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
  }

  ScenarioConfig small(std::size_t samples = 40) const {
    ScenarioConfig c;
    c.samples = samples;
    c.runs = 2;
    c.seed = 5;
    return c;
  }

  fs::path dir_;
  std::ostringstream out_, log_;
};

TEST_F(CommandsTest, SimulateReferenceRows) {
  ScenarioConfig c = small(690);
  ASSERT_EQ(simulate(c, out_, log_), kSuccess);
  EXPECT_EQ(lines(out_.str()), 1u + 690u * 8u);
  EXPECT_EQ(log_.str(), "simulated M=690 N=8 seed=5\n");

  std::ostringstream one;
  c.samples = 1;
  simulate(c, one, log_);
  EXPECT_EQ(lines(one.str()), 9u);
}

TEST_F(CommandsTest, SimulateIsByteReproducible) {
  ScenarioConfig c = small();
  c.output_path = dir_ / "a.csv";
  simulate(c, out_, log_);
  c.output_path = dir_ / "b.csv";
  simulate(c, out_, log_);
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));
  EXPECT_TRUE(out_.str().empty());
}

TEST_F(CommandsTest, SimulateRejectsInvalidSetup) {
  ScenarioConfig c = small();
  c.params.amplitude = 9.0;
  EXPECT_EQ(guarded([&] { return simulate(c, out_, log_); }, log_), kUsageError);
}

TEST_F(CommandsTest, EstimateBothMethods) {
  ScenarioConfig c = small(25);
  c.output_path = dir_ / "s.csv";
  simulate(c, out_, log_);
  EstimateArgs args;
  args.input = dir_ / "s.csv";
  args.output = dir_ / "e.csv";
  ASSERT_EQ(estimate(args, out_, log_), kSuccess);
  std::ifstream in(args.output);
  const auto rows = read_estimates(in);
  ASSERT_EQ(rows.size(), 50u);
  EXPECT_EQ(rows[0].method, Method::gauss_dft);
  EXPECT_EQ(rows[25].method, Method::poisson_ml);
  EXPECT_EQ(rows[49].sample_id, 24u);

  args.methods = {Method::poisson_ml};
  std::ostringstream only;
  estimate(args, only, log_);
  std::istringstream again(slurp(args.output));
  EXPECT_EQ(read_estimates(again).size(), 25u);
}

TEST_F(CommandsTest, EstimateNoiselessGaussDft) {
  std::ofstream(dir_ / "exact.csv")
      << "sample_id,j,delta,n_o,n_h\n0,0,0,3,1\n0,1,1.5707963267948966,2,2\n"
         "0,2,3.1415926535897931,1,3\n0,3,4.7123889803846897,2,2\n"
         "1,0,0,2,2\n1,1,1.5707963267948966,2,2\n1,2,3.1415926535897931,2,2\n"
         "1,3,4.7123889803846897,2,2\n";
  EstimateArgs args;
  args.input = dir_ / "exact.csv";
  args.methods = {Method::gauss_dft};
  ASSERT_EQ(estimate(args, out_, log_), kSuccess);
  std::istringstream in(out_.str());
  const auto rows = read_estimates(in);
  ASSERT_EQ(rows.size(), 2u);
  const PhaseEstimate& e = rows[0].record.estimate;
  ASSERT_TRUE(e.informative());
  EXPECT_NEAR(*e.phase, 0.0, 1e-12);
  EXPECT_EQ(e.mean_o, 2.0);
  EXPECT_EQ(e.mean_h, 2.0);
  EXPECT_NEAR(e.amplitude, 1.0, 1e-12);
  EXPECT_NE(out_.str().find("\n1,gauss-dft,uninformative,,2,2,0,0,true\n"),
            std::string::npos);
}

TEST_F(CommandsTest, EstimateMalformedInput) {
  std::ofstream(dir_ / "bad.csv") << "sample_id,j,delta,n_o,n_h\n0,0,0,1,2\n0,1,zz,1,2\n";
  EstimateArgs args;
  args.input = dir_ / "bad.csv";
  std::ostringstream err;
  EXPECT_EQ(guarded([&] { return estimate(args, out_, log_); }, err), kDataError);
  EXPECT_EQ(err.str(), "error: line 3: invalid delta 'zz'\n");

  args.input = dir_ / "missing.csv";
  EXPECT_EQ(guarded([&] { return estimate(args, out_, log_); }, err), kUsageError);
}

TEST_F(CommandsTest, CompareFromSamplesAndEstimates) {
  ScenarioConfig c = small(60);
  c.output_path = dir_ / "s.csv";
  simulate(c, out_, log_);
  EstimateArgs est;
  est.input = dir_ / "s.csv";
  est.output = dir_ / "both.csv";
  estimate(est, out_, log_);

  CompareArgs a;
  a.samples = dir_ / "s.csv";
  a.truth = 4.83;
  a.output = dir_ / "from_samples.csv";
  ASSERT_EQ(compare(a, out_, log_), kSuccess);

  CompareArgs b;
  b.estimates = {dir_ / "both.csv"};
  b.truth = 4.83;
  b.output = dir_ / "from_estimates.csv";
  ASSERT_EQ(compare(b, out_, log_), kSuccess);
  const std::string text = slurp(a.output);
  EXPECT_EQ(text, slurp(b.output));
  EXPECT_EQ(lines(text), 33u);
  EXPECT_NE(text.find("\n6.2831853071795862,1,1,0\n"), std::string::npos);
}

TEST_F(CommandsTest, CompareSelfGivesZeros) {
  ScenarioConfig c = small(30);
  c.output_path = dir_ / "s.csv";
  simulate(c, out_, log_);
  EstimateArgs est;
  est.input = dir_ / "s.csv";
  est.methods = {Method::gauss_dft};
  est.output = dir_ / "g.csv";
  estimate(est, out_, log_);

  // relabel the Gaussian estimates as the Poisson set
  std::string text = slurp(est.output);
  for (std::size_t p = text.find("gauss-dft"); p != std::string::npos;
       p = text.find("gauss-dft", p))
    text.replace(p, 9, "poisson-ml");
  std::ofstream(dir_ / "p.csv") << text;

  CompareArgs a;
  a.estimates = {dir_ / "g.csv", dir_ / "p.csv"};
  a.truth = 4.83;
  ASSERT_EQ(compare(a, out_, log_), kSuccess);
  std::istringstream in(out_.str());
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) EXPECT_EQ(line.substr(line.rfind(',') + 1), "0");
}

TEST_F(CommandsTest, CompareMismatchedIds) {
  std::ofstream(dir_ / "e.csv")
      << "sample_id,method,status,phase,mean_o,mean_h,amplitude,"
         "normalized_visibility,converged\n"
         "0,gauss-dft,informative,1,1,1,0.5,0.5,true\n"
         "3,poisson-ml,informative,1,1,1,0.5,0.5,true\n";
  CompareArgs a;
  a.estimates = {dir_ / "e.csv"};
  EXPECT_EQ(guarded([&] { return compare(a, out_, log_); }, log_), kDataError);
}

TEST_F(CommandsTest, EnsembleTwoRuns) {
  ScenarioConfig c = small(50);
  ASSERT_EQ(ensemble(c, out_, log_), kSuccess);
  std::istringstream in(out_.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "window_width,f_gauss,f_poisson,delta_e,errbar");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 32u);

  c.runs = 1;
  EXPECT_EQ(guarded([&] { return ensemble(c, out_, log_); }, log_), kUsageError);
}

TEST_F(CommandsTest, VisibilityAllInformative) {
  ScenarioConfig c = *scenario_preset("fig4");
  c.samples = 200;
  ASSERT_EQ(visibility(c, Method::poisson_ml, out_, log_), kSuccess);
  const std::string text = out_.str();
  EXPECT_NE(text.find("informative=200 samples=200"), std::string::npos);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "bin_lo,bin_hi,count");
  std::size_t total = 0;
  while (std::getline(in, line) && line[0] != '#')
    total += std::stoul(line.substr(line.rfind(',') + 1));
  EXPECT_EQ(total, 200u);
}

TEST_F(CommandsTest, ScenarioDispatch) {
  ScenarioConfig c = *scenario_preset("fig3c");
  c.samples = 20;
  c.runs = 2;
  ASSERT_EQ(scenario("fig3c", c, out_, log_), kSuccess);
  EXPECT_EQ(lines(out_.str()), 34u);
  EXPECT_EQ(guarded([&] { return scenario("nope", c, out_, log_); }, log_),
            kUsageError);
}

}  // namespace
}  // namespace fringefit::cli
