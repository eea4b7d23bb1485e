#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "oracles.h"
#include "spinlattice/io.h"
#include "spinlattice/random.h"
#include "spinlattice/weyl_direct.h"

namespace sl = spinlattice;
namespace io = spinlattice::io;
namespace fs = std::filesystem;
using sl::Complex;
using sl::ComplexMatrix;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome r;
  r.code = sl::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spinlattice_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kExample = R"({"N": 1, "m": 1, "alpha": [[{"re": 0, "im": 2}]],
  "theta1": [[1.4142135623730951]], "theta2": [[1.4142135623730951]]})";

const char* kZeroTheta1 = R"({"N": 1, "m": 1, "alpha": [[{"re": 0, "im": 1}]],
  "theta1": [[0]], "theta2": [[1.4142135623730951]]})";

}  // namespace

TEST_F(Cli, ExampleReproducesClosedForms) {
  const Outcome r = invoke({"example", "--h", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Sigma_1 = 1.25"), std::string::npos);
  EXPECT_NE(r.out.find(" ok\n"), std::string::npos);
}

TEST_F(Cli, ExampleJson) {
  const Outcome r = invoke({"example", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = io::parse(r.out);
  EXPECT_NEAR(j["sigma"][1].get<double>(), 1.25, 1e-15);
  EXPECT_NEAR(j["sigma"][2].get<double>(), 164.0 / 64.0, 1e-14);
  EXPECT_NEAR(j["S0"][0][0]["re"].get<double>(), -0.6, 1e-12);
  EXPECT_NEAR(j["S0"][0][1]["re"].get<double>(), 0.8, 1e-12);
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST_F(Cli, ValidateReportsIdentityOnlyWithExitZero) {
  const Outcome r = invoke({"validate", write("zero_theta1.json", kZeroTheta1)});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = io::parse(r.out);
  EXPECT_EQ(j["class"], "identity-only");
  EXPECT_FALSE(j["theta1_full_range"].get<bool>());
}

TEST_F(Cli, SpinsCsvAndJsonAgree) {
  const std::string in = write("example.json", kExample);
  const Outcome csv = invoke({"spins", in, "--nmax", "3", "--format", "csv"});
  const Outcome json = invoke({"spins", in, "--nmax", "3"});
  ASSERT_EQ(csv.code, 0);
  ASSERT_EQ(json.code, 0);
  EXPECT_EQ(csv.out.rfind("n,i,j,re,im\n", 0), 0u);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 1 + 3 * 4);
  EXPECT_EQ(io::parse(json.out)["spins"].size(), 3u);
}

TEST_F(Cli, InvertThenWeylRoundTrip) {
  sl::RandomSource rng(404);
  const sl::Realization r = oracle::random_minimal_realization(rng, 3, 2);
  const std::string in = write("realization.json", io::dump(io::to_json(r)));
  const std::string triple = path("triple.json");
  const Outcome inv = invoke({"invert", in, "-o", triple});
  ASSERT_EQ(inv.code, 0) << inv.err;
  const Outcome w = invoke({"weyl", triple, "--lambda-grid", "0,0,8,12"});
  ASSERT_EQ(w.code, 0) << w.err;
  const auto rows = io::parse(w.out);
  ASSERT_EQ(rows.size(), 12u);
  for (const auto& row : rows) {
    const Complex lam = io::complex_from_json(row["lambda"], "lambda");
    const ComplexMatrix phi = io::matrix_from_json(row["phi"], "phi");
    EXPECT_LE(sl::relative_residual(phi, r.evaluate(lam)), 1e-9) << lam;
  }
}

TEST_F(Cli, OutputIsByteIdenticalAcrossRunsAndThreads) {
  const std::string in = write("example.json", kExample);
  const Outcome a = invoke({"weyl", in});
  const Outcome b = invoke({"weyl", in, "--serial"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Outcome c = invoke({"evolve", in, "--time-grid", "0,1,5"});
  const Outcome d = invoke({"evolve", in, "--time-grid", "0,1,5", "--serial"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.out, d.out);
  EXPECT_EQ(c.out.rfind("t,n,s1,s2,s3,zc_residual,ihm_residual\n", 0), 0u);
}

TEST_F(Cli, OutputFile) {
  const std::string out = path("spins.json");
  const Outcome r = invoke({"spins", write("example.json", kExample), "-o", out});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(io::parse(slurp(out))["horizon"], 20);
}

TEST_F(Cli, FundamentalTable) {
  const Outcome r = invoke({"fundamental", write("example.json", kExample), "--lambda", "0.5,-1.5", "--lambda", "3,1",
                     "--nmax", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::parse(r.out).size(), 10u);
}

TEST_F(Cli, VerifySelectedChecks) {
  const Outcome r = invoke({"verify", "--check", "lattice.involution", "--check", "example.closed_form", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = io::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  for (const auto& row : j) EXPECT_TRUE(row["passed"].get<bool>());
}

TEST_F(Cli, ToleranceOverrideCanFailACheck) {
  const Outcome r = invoke({"verify", "--check", "lattice.involution", "--tol", "sigma_overflow=10"});
  EXPECT_EQ(r.code, 1) << r.out << r.err;
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  const std::string example = write("example.json", kExample);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"nonsense"}).code, 2);
  EXPECT_EQ(invoke({"spins", path("missing.json")}).code, 2);
  const Outcome parse = invoke({"spins", write("broken.json", "{\n  \"N\": 1,\n  \"m\": \n}")});
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.err.find("broken.json:4:"), std::string::npos) << parse.err;
  EXPECT_EQ(invoke({"fundamental", example, "--lambda", "0,2"}).code, 2);
  EXPECT_EQ(invoke({"fundamental", example, "--lambda", "x,2"}).code, 2);
  EXPECT_EQ(invoke({"weyl", write("zero_theta1.json", kZeroTheta1)}).code, 2);
  EXPECT_EQ(invoke({"example", "--h", "0.5"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--check", "no.such.check"}).code, 2);
  EXPECT_EQ(invoke({"spins", example, "--tol", "nonsense=1"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(Cli, NumericFailureExitCode) {
  const Outcome r = invoke({"spins", write("example.json", kExample), "--tol", "sigma_overflow=10"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("overflow"), std::string::npos) << r.err;
}
