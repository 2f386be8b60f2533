#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using json = nlohmann::json;

namespace {
struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(LPAPPROX_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args, int expected_code) {
  const CliRun r = run(args);
  EXPECT_EQ(r.code, expected_code) << args << "\n" << r.out;
  if (r.out.empty()) return json::object();
  return json::parse(r.out);
}
}  // namespace

TEST(Cli, SolveReportsConfigAndReferences) {
  const json j = run_json("solve --omega monomial:1,1 --p 1 --basis analytic:3 --grid 64,64 --split 0.70710678118654752 --seed 4", 0);
  EXPECT_EQ(j["config"]["command"], "solve");
  EXPECT_EQ(j["config"]["seed"], 4);
  EXPECT_EQ(j["config"]["omega"], "monomial:1,1");
  EXPECT_FALSE(j["paper_refs"].empty());
  EXPECT_NEAR(j["result"]["lambda"].get<double>(), 0.25, 1e-6);
  EXPECT_EQ(j["exit_code"], 0);
}

TEST(Cli, CertifyExitCodes) {
  run_json("certify --omega monomial:0,1 --fstar zero --basis analytic:4 --grid 32,64", 0);
  const json r = run_json("certify --omega conj_shift:2 --fstar zero --basis analytic:4 --grid 32,64", 2);
  EXPECT_EQ(r["result"]["verdict"]["status"], "refuted");
  run_json("certify --omega monomial:2,1 --fstar oracle --p 2 --basis analytic:3 --grid 32,64", 0);
  run_json("certify --omega monomial:1,1 --fstar oracle --p 1 --basis analytic:3 --grid 64,64", 0);
  run_json("certify --omega monomial:1,2 --fstar oracle --p 1 --basis harmonic2d:3 --grid 64,64", 0);
}

TEST(Cli, OracleMonomial) {
  const json j = run_json("oracle monomial 2 1 --p 1", 0);
  EXPECT_NEAR(j["result"]["coefficient"].get<double>(), std::pow(2.0, -2.0 / 3.0), 1e-10);
  const json z = run_json("oracle monomial 1 2 --p 1", 0);
  EXPECT_EQ(z["result"]["zero"], true);
  EXPECT_EQ(run("oracle monomial 2 1 --p 0.5").code, 1);
}

TEST(Cli, NewtonCertificateRefutesOutsideRadius) {
  run_json("certify --omega newton:0.3,0,0@3 --fstar oracle --samples 5000", 0);
  run_json("certify --omega newton:0.9,0,0@3 --fstar oracle --samples 5000", 2);
}

TEST(Cli, PotentialAndPeakset) {
  const json c = run_json("potential cauchy --region b0 --z 1,0", 0);
  EXPECT_NEAR(c["result"]["value"]["re"].get<double>(), 0.5, 1e-4);
  const json t = run_json("peakset thinness --region cusp3", 0);
  EXPECT_EQ(t["result"]["verdict"], "not-weak-peak");
}

TEST(Cli, SweepCsvHasTable) {
  const CliRun r = run("sweep boundary-norm --omega monomial:2,1 --p 2 --degrees 1..3 --grid 16,32 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("degree"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("0.6666666666666"), std::string::npos) << r.out;
}

TEST(Cli, ErrorsExitWithOne) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("solve").code, 1);
  EXPECT_EQ(run("solve --omega unknown_fn").code, 1);
  EXPECT_EQ(run("solve --omega monomial:1,1 --format xml").code, 1);
  EXPECT_EQ(run("solve --omega monomial:1,1 --grid 0,3").code, 1);
}

TEST(Cli, SamplesInputRoundTrip) {
  {
    std::ofstream f("cli_samples.csv");
    f << "x,y,re,im\n0.1,0.1,1,0\n0.2,-0.3,2,0\n-0.5,0.4,3,0\n0.6,0.1,4,0\n-0.2,-0.2,5,0\n";
  }
  const json j = run_json("solve --omega samples:cli_samples.csv --p 2 --basis constants", 0);
  EXPECT_NEAR(j["result"]["coefficients"][0]["re"].get<double>(), 3.0, 1e-12);
}

TEST(Cli, OutputIsDeterministic) {
  const std::string args = "potential cor74 --dim 2 --count 3 --seed 9";
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
}
