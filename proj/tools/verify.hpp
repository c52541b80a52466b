#ifndef ASCOUNT_TOOLS_VERIFY_HPP_
#define ASCOUNT_TOOLS_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ascount::cli {

struct Outcome {
  bool passed = true;
  std::string detail;  // counterexample on failure, optional note otherwise
};

struct VerifyItem {
  std::string suite;
  std::string name;
  double cost = 0;  // estimated seconds on one core
  std::function<Outcome()> check;
};

struct ItemResult {
  std::string suite, name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<ItemResult> results;
  std::vector<std::string> skipped;  // suite/name
  double budget = 0;
  std::uint64_t seed = 0;
  bool passed() const;
  nlohmann::json to_json() const;
  std::string summary() const;
};

extern const std::vector<std::string> kSuites;

// items of one suite, or of every suite for "all"
std::vector<VerifyItem> verify_items(const std::string& suite, std::uint64_t seed);

// keeps the cheapest items whose estimated total fits the budget; ties by name
void shrink_to_budget(std::vector<VerifyItem>& items, double budget,
                      std::vector<std::string>& skipped);

VerifyReport run_verify(const std::string& suite, double budget, int workers, std::uint64_t seed);

}  // namespace ascount::cli

#endif
