#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ascount/asym.hpp"
#include "ascount/count.hpp"
#include "ascount/parallel.hpp"
#include "ascount/series.hpp"
#include "verify.hpp"

namespace ascount::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (depth < 0) throw UsageError("unbalanced brackets in '" + s + "'");
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw UsageError("unbalanced brackets in '" + s + "'");
  out.push_back(cur);
  return out;
}

void emit(const CliConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw UsageError("cannot write " + cfg.output);
  f << text;
}

void check_common(const CliConfig& cfg) {
  if (cfg.n < 1 || cfg.r < 1) throw UsageError("--n and --r must be positive");
  if (!is_prime(cfg.p)) throw UsageError("--p must be prime");
}

int cmd_count(const CliConfig& cfg, std::ostream& out) {
  check_common(cfg);
  const int given = (cfg.exponent >= 0) + (cfg.degree >= 0) + !cfg.divisor.empty();
  if (given != 1) throw UsageError("count needs exactly one of --exp, --degree, --divisor");
  PrimeContext ctx(cfg.p, cfg.n, cfg.r);
  BigInt v;
  if (cfg.scope == "local") {
    if (cfg.exponent < 0) throw UsageError("count local takes --exp");
    v = z_count_local(cfg.exponent, ctx);
  } else if (cfg.degree >= 0) {
    v = global_dirichlet(ctx, cfg.degree, resolve_workers(cfg.workers))[cfg.degree];
  } else if (!cfg.divisor.empty()) {
    v = z_count_divisor(parse_divisor(ctx, cfg.divisor), ctx);
  } else {
    throw UsageError("count global takes --degree or --divisor");
  }
  emit(cfg, out, v.str() + "\n");
  return kOk;
}

int cmd_series(const CliConfig& cfg, std::ostream& out) {
  check_common(cfg);
  if (cfg.max < 0) throw UsageError("--max must be >= 0");
  PrimeContext ctx(cfg.p, cfg.n, cfg.r);
  IntSeries s = cfg.scope == "local" ? local_series(ctx, cfg.max)
                                     : global_dirichlet(ctx, cfg.max, resolve_workers(cfg.workers));
  auto coeffs = coefficient_strings(s);
  std::ostringstream os;
  if (cfg.format == "tsv") {
    os << "m\tc_m\n";
    for (std::size_t m = 0; m < coeffs.size(); ++m) os << m << "\t" << coeffs[m] << "\n";
  } else {
    nlohmann::json j = series_json(ctx, coeffs, s.truncation());
    if (cfg.scope == "local") {
      RationalForm form = local_rational(ctx).reduced();
      j["rational"] = {{"numerator", coefficient_strings(form.num)},
                       {"denominator", coefficient_strings(form.den)}};
      j["recurrence"] = coefficient_strings(form.recurrence());
    }
    os << j.dump(2) << "\n";
  }
  emit(cfg, out, os.str());
  return kOk;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  VerifyReport rep = run_verify(cfg.suite, cfg.budget, cfg.workers, cfg.seed);
  emit(cfg, out, rep.to_json().dump(2) + "\n");
  err << rep.summary();
  return rep.passed() ? kOk : kInvariantFailure;
}

int cmd_asymptotics(const CliConfig& cfg, std::ostream& out) {
  check_common(cfg);
  PrimeContext ctx(cfg.p, cfg.n, cfg.r);
  AsymptoticParams params = asymptotic_params(cfg.p, cfg.r);
  nlohmann::json j;
  j["p"] = cfg.p;
  j["n"] = cfg.n;
  j["r"] = cfg.r;
  j["q"] = std::to_string(ctx.q());
  j["inequality_report"] = to_json(verify_inequalities(cfg.p, cfg.r));
  if (cfg.local) {
    // exponent of the main term is the rightmost local pole, not the global abscissa
    PoleCatalog cat = local_pole_catalog(ctx);
    j["params"] = to_json(params);
    j["pole_catalog"] = to_json(cat);
    auto constants = local_leading_constants(ctx);
    nlohmann::json cj = nlohmann::json::array();
    for (auto& c : constants) cj.push_back(static_cast<double>(c));
    j["constants"] = {{"period", params.L_loc},
                      {"exponent", to_string(cat.entries.front().real_part)},
                      {"per_class", cj}};
    int m_max = cfg.fit_max >= 0 ? cfg.fit_max : 600;
    if (m_max < 10 * params.L_loc) throw UsageError("--fit-max too small for the local check");
    LocalValidation v = validate_local_constants(ctx, constants, m_max);
    j["validation"] = {{"m_max", v.m_max},
                       {"max_relative_error", static_cast<double>(v.max_error)},
                       {"trend_decreasing", v.trend_decreasing}};
  } else {
    int M = cfg.fit_max >= 0 ? cfg.fit_max : default_fit_truncation(cfg.p, cfg.r);
    IntSeries c = global_dirichlet(ctx, M, resolve_workers(cfg.workers));
    FitReport fit;
    try {
      fit = main_term_fit(ctx, c);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    j["params"] = to_json(params);
    j["pole_catalog"] = to_json(global_pole_catalog(ctx));
    j["fit_truncation"] = M;
    j["fits"] = to_json(fit);
    nlohmann::json lead = nlohmann::json::array();
    for (auto& cf : fit.classes) lead.push_back(static_cast<double>(cf.coefficients.back()));
    j["constants"] = {{"period", params.L}, {"leading", lead}};
    if (cfg.p == 2 && cfg.r == 2) j["constants"]["c22"] = to_json(c22_constant_check(ctx, c));
  }
  emit(cfg, out, j.dump(2) + "\n");
  return kOk;
}

}  // namespace

Divisor parse_divisor(const PrimeContext& ctx, const std::string& text) {
  if (text.empty()) throw UsageError("empty divisor");
  Divisor D;
  for (const std::string& term : split_top_level(text, ',')) {
    auto pieces = split_top_level(term, '^');
    if (pieces.size() > 2 || pieces[0].empty()) throw UsageError("bad divisor term '" + term + "'");
    int e = 1;
    if (pieces.size() == 2) {
      try {
        std::size_t used = 0;
        e = std::stoi(pieces[1], &used);
        if (used != pieces[1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw UsageError("bad exponent in '" + term + "'");
      }
      if (e < 0) throw UsageError("negative exponent in '" + term + "'");
    }
    Place P = Place::infinity(&ctx);
    if (pieces[0] != "inf") {
      Poly f;
      try {
        f = parse_poly(&ctx, pieces[0]);
      } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
      }
      if (f.degree() < 1 || !(f.leading() == ctx.one()))
        throw UsageError("'" + pieces[0] + "' is not monic of positive degree");
      if (!is_irreducible(f)) throw UsageError("'" + pieces[0] + "' is not irreducible");
      P = Place::finite(f);
    }
    if (D.count(P)) throw UsageError("place " + P.format() + " repeated");
    if (e > 0) D[P] = e;
  }
  return D;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Counts elementary abelian p-extensions of F_q(t) and F_q((t)) by discriminant",
               "ascount"};
  app.require_subcommand(1);
  app.add_option("--workers", cfg.workers, "worker threads (default: ASCOUNT_WORKERS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("-o,--output", cfg.output, "write the result to a file");

  auto field = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "characteristic")->required();
    sub->add_option("--n", cfg.n, "degree of F_q over F_p")->required();
    sub->add_option("--r", cfg.r, "rank of the group C_p^r")->required();
  };

  auto* count = app.add_subcommand("count", "exact number of extensions");
  count->add_option("scope", cfg.scope)->required()->check(CLI::IsMember({"local", "global"}));
  field(count);
  count->add_option("--exp", cfg.exponent, "discriminant exponent (local)");
  count->add_option("--degree", cfg.degree, "discriminant degree (global)");
  count->add_option("--divisor", cfg.divisor, "discriminant divisor, e.g. t2+t+1^2,inf^3");

  auto* series = app.add_subcommand("series", "coefficients of the counting series");
  series->add_option("scope", cfg.scope)->required()->check(CLI::IsMember({"local", "global"}));
  field(series);
  series->add_option("--max", cfg.max, "truncation degree")->required();
  series->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "tsv"}));

  auto* verify = app.add_subcommand("verify", "run invariant suites");
  std::vector<std::string> suites = kSuites;
  suites.push_back("all");
  verify->add_option("--suite", cfg.suite)->check(CLI::IsMember(suites));
  verify->add_option("--budget", cfg.budget, "seconds")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed);

  auto* asym = app.add_subcommand("asymptotics", "poles, constants and main-term fits");
  field(asym);
  asym->add_flag("--local", cfg.local, "local field F_q((t))");
  asym->add_option("--fit-max", cfg.fit_max, "coefficients used for fits and checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (cfg.subcommand == "count") return cmd_count(cfg, out);
    if (cfg.subcommand == "series") return cmd_series(cfg, out);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out, err);
    return cmd_asymptotics(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "invariant failure: " << e.what() << "\n";
    return kInvariantFailure;
  }
}

}  // namespace ascount::cli
