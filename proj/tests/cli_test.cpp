#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace ascount::cli {
namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "ascount");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, CountExamples) {
  EXPECT_EQ(call({"count", "local", "--p", "2", "--n", "1", "--r", "1", "--exp", "2"}).out, "2\n");
  EXPECT_EQ(call({"count", "global", "--p", "2", "--n", "1", "--r", "1", "--degree", "2"}).out, "6\n");
  EXPECT_EQ(call({"count", "global", "--p", "2", "--n", "1", "--r", "1", "--divisor", "t^2"}).out,
            "2\n");
  auto r = call({"count", "global", "--p", "2", "--n", "1", "--r", "1", "--divisor", "t^2,t+1^2"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "2\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"count", "local", "--p", "4", "--n", "1", "--r", "1", "--exp", "2"}).code, kUsage);
  EXPECT_EQ(call({"count", "local", "--p", "2", "--n", "1", "--r", "1"}).code, kUsage);
  EXPECT_EQ(call({"count", "global", "--p", "2", "--n", "1", "--r", "1", "--divisor", "t2+1"}).code,
            kUsage);
  EXPECT_EQ(call({"count", "global", "--p", "2", "--n", "1", "--r", "1", "--divisor", "t,t"}).code,
            kUsage);
  EXPECT_EQ(call({"series", "local", "--p", "2", "--n", "1", "--r", "1"}).code, kUsage);
  EXPECT_EQ(call({"verify", "--suite", "nope"}).code, kUsage);
  EXPECT_EQ(call({"--help"}).code, kOk);
}

TEST(Cli, ParseDivisor) {
  PrimeContext k(2, 2, 1);
  Divisor D = parse_divisor(k, "t+[0,1]^2,inf^3,t^0");
  ASSERT_EQ(D.size(), 2u);
  EXPECT_EQ(D.at(Place::infinity(&k)), 3);
  EXPECT_ANY_THROW(parse_divisor(k, ""));
  EXPECT_ANY_THROW(parse_divisor(k, "t^x"));
  EXPECT_ANY_THROW(parse_divisor(k, "[1,1t"));
}

TEST(Cli, SeriesFormats) {
  auto tsv = call({"series", "local", "--p", "2", "--n", "1", "--r", "1", "--max", "4", "--format", "tsv"});
  EXPECT_EQ(tsv.out, "m\tc_m\n0\t1\n1\t0\n2\t2\n3\t0\n4\t4\n");
  auto js = nlohmann::json::parse(
      call({"series", "local", "--p", "2", "--n", "1", "--r", "1", "--max", "4"}).out);
  EXPECT_TRUE(js.contains("rational"));
  EXPECT_TRUE(js.contains("recurrence"));
}

TEST(Cli, BigCoefficientsAreStrings) {
  auto js = nlohmann::json::parse(
      call({"series", "global", "--p", "2", "--n", "2", "--r", "1", "--max", "60"}).out);
  ASSERT_EQ(js["coefficients"].size(), 61u);
  for (auto& v : js["coefficients"]) EXPECT_TRUE(v.is_string());
  EXPECT_GT(js["coefficients"][60].get<std::string>().size(), 16u);
}

TEST(Cli, OutputIndependentOfWorkers) {
  std::vector<std::string> base{"series", "global", "--p", "2", "--n", "1", "--r", "2", "--max", "80"};
  auto one = base, four = base;
  one.insert(one.begin(), {"--workers", "1"});
  four.insert(four.begin(), {"--workers", "4"});
  EXPECT_EQ(call(one).out, call(four).out);
}

TEST(Cli, VerifyWithinBudget) {
  auto r = call({"verify", "--suite", "psi", "--budget", "1", "--seed", "5"});
  EXPECT_EQ(r.code, kOk) << r.err;
  auto js = nlohmann::json::parse(r.out);
  EXPECT_TRUE(js["passed"].get<bool>());
  EXPECT_EQ(js["seed"], "5");
  EXPECT_FALSE(js["items"].empty());
  EXPECT_NE(r.err.find("checks passed"), std::string::npos);

  auto tiny = call({"verify", "--suite", "oracle", "--budget", "0.001"});
  auto tj = nlohmann::json::parse(tiny.out);
  EXPECT_FALSE(tj["skipped"].empty());
}

TEST(Cli, AsymptoticsLocal) {
  auto r = call({"asymptotics", "--local", "--p", "2", "--n", "1", "--r", "1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto js = nlohmann::json::parse(r.out);
  EXPECT_EQ(js["constants"]["period"], 2);
  EXPECT_TRUE(js["validation"]["trend_decreasing"].get<bool>());
}

}  // namespace
}  // namespace ascount::cli
