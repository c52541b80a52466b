#include "verify.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <tuple>

#include "ascount/asw.hpp"
#include "ascount/asym.hpp"
#include "ascount/count.hpp"
#include "ascount/parallel.hpp"
#include "ascount/series.hpp"

namespace ascount::cli {

namespace {

using Triple = std::tuple<int, int, int>;

const std::vector<Triple> kLocalGrid = {{2, 1, 1}, {2, 2, 1}, {3, 1, 1},
                                        {2, 1, 2}, {2, 2, 2}, {3, 1, 2}};
const std::vector<std::pair<int, int>> kPsiGrid = {{2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 3}};
const std::vector<int> kPsiNorms = {2, 3, 4, 8, 9};

std::string label(const Triple& t) {
  auto [p, n, r] = t;
  std::ostringstream os;
  os << "p=" << p << ",n=" << n << ",r=" << r;
  return os.str();
}

std::optional<std::string> local_oracle(const Triple& t, int max_exp) {
  auto [p, n, r] = t;
  PrimeContext ctx(p, n, r);
  auto brute = oracle_local(ctx, max_exp, 1);
  for (int e = 0; e <= max_exp; ++e) {
    BigInt a = brute.count(e) ? brute.at(e) : BigInt(0);
    BigInt b = z_count_local(e, ctx);
    if (a != b)
      return "exponent " + std::to_string(e) + ": enumeration " + a.str() + ", formula " + b.str();
  }
  return std::nullopt;
}

std::optional<std::string> global_oracle(const Triple& t, int max_deg) {
  auto [p, n, r] = t;
  PrimeContext ctx(p, n, r);
  auto brute = oracle_global(ctx, max_deg, 1);
  IntSeries series = global_dirichlet(ctx, max_deg, 1);
  for (int m = 0; m <= max_deg; ++m) {
    BigInt a = brute.count(m) ? brute.at(m) : BigInt(0);
    BigInt b = series[m], c = z_total_by_degree(m, ctx);
    if (a != b || b != c)
      return "degree " + std::to_string(m) + ": enumeration " + a.str() + ", series " + b.str() +
             ", divisor sum " + c.str();
  }
  return std::nullopt;
}

Poly random_poly(const PrimeContext& ctx, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<std::int64_t> coef(0, ctx.q() - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<FieldElement> c(deg(rng) + 1);
  for (auto& x : c) x = ctx.element(coef(rng));
  return Poly(&ctx, c);
}

std::optional<std::string> reduction_invariance(int p, std::uint64_t seed, int cases) {
  PrimeContext ctx(p, 1, 1);
  ArtinSchreier asw(ctx);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    Poly num = random_poly(ctx, rng, 5), den = random_poly(ctx, rng, 3);
    if (den.is_zero()) continue;
    RationalFunction z(num, den.monic());
    Poly yn = random_poly(ctx, rng, 2), yd = random_poly(ctx, rng, 2);
    if (yd.is_zero()) continue;
    RationalFunction y(yn, yd.monic());
    GlobalRep rep = asw.reduce(z);
    RationalFunction shifted = z + y.pow(p) - y;
    std::string where = num.format() + " / " + den.monic().format();
    if (!(asw.reduce(asw.to_rational_function(rep)) == rep)) return "not idempotent on " + where;
    if (!(asw.reduce(shifted) == rep)) return "not invariant under y^p - y on " + where;
    for (auto& [P, part] : rep.parts) {
      int a = asc(part);
      if (a > 0 && a % p == 0) return "leading index divisible by p on " + where;
    }
  }
  return std::nullopt;
}

std::optional<std::string> psi_identity(int p, int r) {
  PrimeContext ctx(p, 1, r);
  for (int N : kPsiNorms)
    for (int f = 0; f <= r; ++f) {
      if (psi_polynomial(f, N, ctx) != psi_closed_form(f, N, ctx))
        return "f=" + std::to_string(f) + " N=" + std::to_string(N) + ": series and closed form differ";
    }
  return std::nullopt;
}

std::optional<std::string> psi_positive(int p, int r) {
  PrimeContext ctx(p, 1, r);
  for (int N : kPsiNorms)
    for (int f = 0; f <= r; ++f)
      if (psi_sign_at_rightmost(f, N, ctx) <= 0)
        return "f=" + std::to_string(f) + " N=" + std::to_string(N) + ": not positive";
  return std::nullopt;
}

std::optional<std::string> integrality(const Triple& t, int max_deg) {
  auto [p, n, r] = t;
  PrimeContext ctx(p, n, r);
  // global_dirichlet rejects non-integral or negative coefficients itself
  try {
    global_dirichlet(ctx, max_deg, 1);
  } catch (const std::logic_error& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

std::optional<std::string> rationality(const Triple& t) {
  auto [p, n, r] = t;
  PrimeContext ctx(p, n, r);
  for (int f = 0; f <= r; ++f) {
    try {
      psi_polynomial(f, ctx.q(), ctx);
    } catch (const std::logic_error& e) {
      return "f=" + std::to_string(f) + ": " + e.what();
    }
  }
  TruncatedSeries direct = to_rational(local_series(ctx, 40));
  TruncatedSeries expanded = local_rational(ctx).expand(40);
  for (int m = 0; m <= 40; ++m)
    if (direct[m] != expanded[m])
      return "coefficient " + std::to_string(m) + ": series " + to_string(direct[m]) +
             ", rational form " + to_string(expanded[m]);
  return std::nullopt;
}

Outcome outcome(std::optional<std::string> bad) {
  if (bad) return {false, *bad};
  return {};
}

std::string equality_note(const InequalityReport& rep) {
  std::map<std::string, int> kinds;
  for (auto& e : rep.equalities) kinds[e.substr(0, e.find(" p="))]++;
  std::ostringstream os;
  os << rep.checks << " checks; equalities:";
  for (auto& [k, n] : kinds) os << " " << k << " x" << n << ";";
  return os.str();
}

}  // namespace

const std::vector<std::string> kSuites = {"oracle", "psi", "integrality", "inequalities"};

std::vector<VerifyItem> verify_items(const std::string& suite, std::uint64_t seed) {
  std::vector<VerifyItem> items;
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  if (want("oracle")) {
    for (auto& t : kLocalGrid) {
      auto [p, n, r] = t;
      double cost = 0.002 * static_cast<double>(ipow64(p, n * r));
      items.push_back({"oracle", "local " + label(t), cost, [t] { return outcome(local_oracle(t, 12)); }});
    }
    items.push_back({"oracle", "global " + label({2, 1, 1}), 0.05,
                     [] { return outcome(global_oracle({2, 1, 1}, 8)); }});
    items.push_back({"oracle", "global " + label({2, 1, 2}), 0.2,
                     [] { return outcome(global_oracle({2, 1, 2}, 6)); }});
    for (int p : {2, 3})
      items.push_back({"oracle", "reduction p=" + std::to_string(p), 0.05,
                       [p, seed] { return outcome(reduction_invariance(p, seed + p, 200)); }});
  }
  if (want("psi")) {
    for (auto [p, r] : kPsiGrid) {
      std::string tag = "p=" + std::to_string(p) + ",r=" + std::to_string(r);
      double cost = 0.001 * static_cast<double>(ipow64(p, r));
      items.push_back({"psi", "identity " + tag, cost, [p, r] { return outcome(psi_identity(p, r)); }});
      items.push_back({"psi", "positivity " + tag, cost, [p, r] { return outcome(psi_positive(p, r)); }});
    }
  }
  if (want("integrality")) {
    for (auto& t : kLocalGrid) {
      auto [p, n, r] = t;
      int deg = ipow64(p, n) == 2 ? 40 : 24;
      double cost = 0.0005 * deg * static_cast<double>(ipow64(p, n * r));
      items.push_back({"integrality", "global " + label(t) + " to " + std::to_string(deg), cost,
                       [t, deg] { return outcome(integrality(t, deg)); }});
      items.push_back({"integrality", "rational form " + label(t), 0.01,
                       [t] { return outcome(rationality(t)); }});
    }
  }
  if (want("inequalities")) {
    items.push_back({"inequalities", "p<=7 r<=6", 1.0, []() -> Outcome {
                       auto rep = verify_inequalities(7, 6);
                       if (!rep.passed()) return {false, rep.violations.front()};
                       return {true, equality_note(rep)};
                     }});
  }
  if (items.empty()) throw std::invalid_argument("unknown suite: " + suite);
  return items;
}

void shrink_to_budget(std::vector<VerifyItem>& items, double budget,
                      std::vector<std::string>& skipped) {
  std::stable_sort(items.begin(), items.end(), [](const VerifyItem& a, const VerifyItem& b) {
    return std::tie(a.cost, a.suite, a.name) < std::tie(b.cost, b.suite, b.name);
  });
  double total = 0;
  std::size_t keep = 0;
  while (keep < items.size() && total + items[keep].cost <= budget) total += items[keep++].cost;
  for (std::size_t i = keep; i < items.size(); ++i)
    skipped.push_back(items[i].suite + "/" + items[i].name);
  items.resize(keep);
  std::stable_sort(items.begin(), items.end(), [](const VerifyItem& a, const VerifyItem& b) {
    return std::tie(a.suite, a.name) < std::tie(b.suite, b.name);
  });
}

VerifyReport run_verify(const std::string& suite, double budget, int workers, std::uint64_t seed) {
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  VerifyReport rep;
  rep.budget = budget;
  rep.seed = seed;
  auto items = verify_items(suite, seed);
  shrink_to_budget(items, budget, rep.skipped);
  rep.results.resize(items.size());
  parallel_for(static_cast<int>(items.size()), resolve_workers(workers), [&](int i) {
    ItemResult& out = rep.results[i];
    out.suite = items[i].suite;
    out.name = items[i].name;
    Outcome o = items[i].check();
    out.passed = o.passed;
    out.detail = o.detail;
  });
  return rep;
}

bool VerifyReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const ItemResult& r) { return r.passed; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json items = nlohmann::json::array();
  for (auto& r : results) {
    nlohmann::json j{{"suite", r.suite}, {"name", r.name}, {"passed", r.passed}};
    if (!r.passed)
      j["counterexample"] = r.detail;
    else if (!r.detail.empty())
      j["note"] = r.detail;
    items.push_back(j);
  }
  return {{"passed", passed()}, {"budget", budget}, {"seed", std::to_string(seed)},
          {"items", items},     {"skipped", skipped}};
}

std::string VerifyReport::summary() const {
  std::ostringstream os;
  int ok = 0;
  for (auto& r : results) {
    if (r.passed) {
      ++ok;
      if (!r.detail.empty()) os << "ok   " << r.suite << "/" << r.name << ": " << r.detail << "\n";
      continue;
    }
    os << "FAIL " << r.suite << "/" << r.name << ": " << r.detail << "\n";
  }
  os << ok << "/" << results.size() << " checks passed";
  if (!skipped.empty()) os << ", " << skipped.size() << " skipped for budget";
  os << "\n";
  return os.str();
}

}  // namespace ascount::cli
