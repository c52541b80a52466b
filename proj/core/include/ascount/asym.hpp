#ifndef ASCOUNT_ASYM_HPP_
#define ASCOUNT_ASYM_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ascount/gf.hpp"
#include "ascount/series.hpp"

namespace ascount {

struct AsymptoticParams {
  BigRational a;  // abscissa
  int b = 0;      // pole order at the abscissa
  std::int64_t L = 0, L_loc = 0, L_max = 0, M = 0;
  BigRational error_exponent;
};

AsymptoticParams asymptotic_params(int p, int r);

enum class Certainty { Definite, Candidate };

// Poles at real_part + 2*pi*i*(angle + k*angular_step)/log q.
struct PoleEntry {
  BigRational real_part;
  BigRational angle;
  BigRational angular_step;
  int max_order = 0;
  Certainty certainty = Certainty::Candidate;
};

struct PoleCatalog {
  std::vector<PoleEntry> entries;
  bool definite_verified = false;
  std::string detail;
};

PoleCatalog local_pole_catalog(const PrimeContext& ctx);
PoleCatalog global_pole_catalog(const PrimeContext& ctx);

// constant of the main term per residue class of m modulo L_loc
std::vector<Real> local_leading_constants(const PrimeContext& ctx, int precision_bits = 128);

struct LocalValidation {
  int m_max = 0;
  std::vector<Real> error_at_max;  // per residue class
  Real max_error;
  bool trend_decreasing = false;
};

// compares the constants with exact coefficients obtained from the recurrence
LocalValidation validate_local_constants(const PrimeContext& ctx,
                                         const std::vector<Real>& constants, int m_max);

struct ClassFit {
  int residue = 0;
  bool zero_class = false;
  int points = 0;                 // points in the fit window
  std::vector<Real> coefficients;  // polynomial in m, low to high
  std::vector<int> m_values;
  std::vector<Real> residuals;
  // max normalized residual over the second half of the window divided by the
  // max over the first half; residuals are scaled by q^{(a - error_exponent) m}
  Real residual_ratio;
};

struct FitReport {
  AsymptoticParams params;
  int q = 0;
  std::vector<ClassFit> classes;
};

// y_m = c_m q^{-m a}, fitted per class modulo L by a polynomial of degree b-1
FitReport main_term_fit(const PrimeContext& ctx, const IntSeries& c);
// smallest truncation giving every class enough points for the fit
int default_fit_truncation(int p, int r);

struct DifferenceReport {
  int period = 0;
  std::vector<int> good_classes;  // third differences eventually >= 0 and non-decreasing
  std::vector<std::vector<Real>> third_differences;
};
DifferenceReport third_difference_report(const PrimeContext& ctx, const IntSeries& c,
                                         int period, int tail);

struct HolomorphyReport {
  bool passed = false;
  int m_lo = 0, m_hi = 0;
  BigRational epsilon;
  std::vector<Real> ratios;  // |d_m| q^{-a m}
  std::vector<Real> bounds;  // q^{-epsilon m / 2}
};
HolomorphyReport holomorphy_check(const PrimeContext& ctx, const IntSeries& c, int m_lo, int m_hi);

struct InequalityReport {
  long long checks = 0;
  std::vector<std::string> equalities;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};
InequalityReport verify_inequalities(int p_max, int r_max);

struct C22Report {
  Real predicted_even;   // leading coefficient of P(log X), even class
  Real predicted_odd;    // always 0
  Real euler_product;
  Real tail_bound;
  int euler_degree = 0;
  Real fitted_even;      // fitted m^3 coefficient divided by log(q)^3
  Real ratio;
};
C22Report c22_constant_check(const PrimeContext& ctx, const IntSeries& c);

std::string to_string(const Real& x, int digits = 12);
nlohmann::json to_json(const AsymptoticParams& p);
nlohmann::json to_json(const PoleCatalog& c);
nlohmann::json to_json(const FitReport& f);
nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const C22Report& r);

}  // namespace ascount

#endif
