#include "ascount/asym.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "ascount/comb.hpp"
#include "ascount/count.hpp"

namespace ascount {

namespace {

Real rpow(const Real& base, const Real& e) { return boost::multiprecision::pow(base, e); }

Real log_q(const PrimeContext& ctx) { return boost::multiprecision::log(Real(ctx.q())); }

// q^{x m} for a rational x
Real qpow(const PrimeContext& ctx, const BigRational& x, int m) {
  return boost::multiprecision::exp(to_real(x) * Real(m) * log_q(ctx));
}

Complex horner(const Polynomial<BigInt>& poly, const Complex& z) {
  Complex v(0);
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * z + Complex(Real(*it));
  return v;
}

Real horner(const Polynomial<BigRational>& poly, const Real& x) {
  Real v = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + to_real(*it);
  return v;
}

Real horner_abs(const Polynomial<BigRational>& poly, const Real& x) {
  Real v = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + abs(to_real(*it));
  return v;
}

std::string rat(const BigRational& x) { return to_string(x); }

}  // namespace

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

AsymptoticParams asymptotic_params(int p, int r) {
  if (!is_prime(p) || r < 1) throw std::invalid_argument("need prime p and r >= 1");
  AsymptoticParams P;
  const std::int64_t pr = ipow64(p, r);
  P.a = BigRational(1 + r * (p - 1), p * (pr - 1));
  P.b = r == 1 ? p - 1 : (r == 2 && p == 2 ? 4 : 1);
  P.M = lcm_range(2, p);
  P.L = r == 1 ? (p - 1) * P.M : (r == 2 && p == 2 ? 12 : p * (pr - 1));
  P.L_loc = p * (pr - 1);
  if (r == 1 && p != 2)
    P.L_max = p - 1;
  else if (p == 2 && (r == 1 || r == 2))
    P.L_max = 2;
  else
    P.L_max = p * (pr - 1);
  P.error_exponent = (BigRational(1) - BigRational(1, p) + r * (p - 1)) / BigRational(p * (pr - 1));
  return P;
}

// ---------------------------------------------------------------- pole catalogs

PoleCatalog local_pole_catalog(const PrimeContext& ctx) {
  const int p = ctx.p(), r = ctx.r();
  PoleCatalog cat;
  for (int j = 1; j <= r; ++j) {
    PoleEntry e;
    std::int64_t A = delta_degree(j, p, r);
    e.real_part = BigRational(j * (p - 1), A);
    e.angle = 0;
    e.angular_step = BigRational(1, A);
    e.max_order = 1;
    e.certainty = j == r ? Certainty::Definite : Certainty::Candidate;
    cat.entries.push_back(e);
  }
  std::stable_sort(cat.entries.begin(), cat.entries.end(),
                   [](const PoleEntry& x, const PoleEntry& y) { return x.real_part > y.real_part; });
  if (cat.entries.front().certainty != Certainty::Definite)
    throw std::logic_error("rightmost local pole is not the top structural factor");

  // the reduced denominator must vanish simply at t = q^{-real part}, the numerator not
  RationalForm red = local_rational(ctx).reduced();
  Real R = rpow(Real(ctx.q()), -to_real(cat.entries.front().real_part));
  Real d = horner(red.den, R), n = horner(red.num, R);
  Polynomial<BigRational> dd;
  for (std::size_t k = 1; k < red.den.size(); ++k) dd.push_back(red.den[k] * BigRational(k));
  Real scale = horner_abs(red.den, R), dscale = horner_abs(dd, R);
  Real tol = Real(1e-40);
  bool root = abs(d) <= tol * scale;
  bool simple = abs(horner(dd, R)) > Real(1e-20) * dscale;
  bool num_ok = abs(n) > Real(1e-20) * horner_abs(red.num, R);
  cat.definite_verified = root && simple && num_ok;
  std::ostringstream os;
  os << "reduced denominator degree " << red.den.size() - 1 << "; root at rightmost modulus "
     << (root ? "yes" : "no") << ", simple " << (simple ? "yes" : "no") << ", numerator nonzero "
     << (num_ok ? "yes" : "no");
  cat.detail = os.str();
  return cat;
}

PoleCatalog global_pole_catalog(const PrimeContext& ctx) {
  const int p = ctx.p(), r = ctx.r();
  AsymptoticParams P = asymptotic_params(p, r);
  auto factors = lambda_factors(ctx, r);
  PoleCatalog cat;
  for (std::int64_t k = 0; k < P.L; ++k) {
    BigRational x(k, P.L);
    int order = 0;
    for (auto& z : factors) {
      if (BigRational(z.B + 1) != BigRational(z.A) * P.a) continue;
      if (is_integer(BigRational(z.A) * x)) order += z.multiplicity;
    }
    if (order == 0) continue;
    PoleEntry e;
    e.real_part = P.a;
    e.angle = x;
    e.angular_step = BigRational(1, P.L);
    e.max_order = order;
    e.certainty = k == 0 ? Certainty::Definite : Certainty::Candidate;
    cat.entries.push_back(e);
  }
  cat.definite_verified = !cat.entries.empty() && cat.entries.front().angle == 0 &&
                          cat.entries.front().max_order == P.b;
  cat.detail = "orders are those of the comparison zeta product; only the real point is asserted";
  return cat;
}

// ---------------------------------------------------------------- local constants

std::vector<Real> local_leading_constants(const PrimeContext& ctx, int precision_bits) {
  if (precision_bits < 1) throw std::invalid_argument("precision must be positive");
  if (precision_bits > 160) throw std::invalid_argument("precision above 160 bits is not supported");
  const int p = ctx.p(), r = ctx.r();
  AsymptoticParams P = asymptotic_params(p, r);
  const std::int64_t L = P.L_loc;
  const BigInt q = ctx.q();
  Real R = rpow(Real(q), -Real(r * (p - 1)) / Real(L));
  Polynomial<BigInt> psi = psi_closed_form(r, q, ctx);
  std::vector<Polynomial<BigInt>> deltas;
  for (int i = 1; i < r; ++i) deltas.push_back(delta_poly(i, q, p, r));
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  std::vector<Complex> upsilon(L + 1);
  for (std::int64_t j = 1; j <= L; ++j) {
    Real th = -two_pi * Real(j) / Real(L);
    Complex alpha(R * cos(th), R * sin(th));
    Complex v = horner(psi, alpha);
    for (auto& d : deltas) {
      Complex dv = horner(d, alpha);
      if (abs(dv) < Real(1e-30)) throw std::domain_error("structural factor vanishes at a pole point");
      v /= dv;
    }
    upsilon[j] = v;
  }
  Real er = to_real(e_constant(r, r, p));
  std::vector<Real> out(L);
  for (std::int64_t m = 0; m < L; ++m) {
    Complex s(0);
    for (std::int64_t j = 1; j <= L; ++j) {
      Real th = two_pi * Real((j * m) % L) / Real(L);
      s += Complex(cos(th), sin(th)) * upsilon[j];
    }
    Real c = er / Real(L) * s.real();
    if (c < Real(-1e-20)) throw std::logic_error("negative main-term constant");
    // cancellation noise in classes without a main term
    out[m] = c < Real(1e-30) ? Real(0) : c;
  }
  return out;
}

LocalValidation validate_local_constants(const PrimeContext& ctx, const std::vector<Real>& constants,
                                         int m_max) {
  const int p = ctx.p(), r = ctx.r();
  AsymptoticParams P = asymptotic_params(p, r);
  const int L = static_cast<int>(P.L_loc);
  if (static_cast<int>(constants.size()) != L) throw std::invalid_argument("wrong number of constants");
  if (m_max < 10 * L) throw std::invalid_argument("m_max too small for ten samples per class");
  TruncatedSeries c = local_rational(ctx).expand(m_max);
  BigRational a(r * (p - 1), L);
  auto err = [&](int m) {
    Real scale = qpow(ctx, a, m);
    Real pred = constants[m % L] * scale;
    Real exact = to_real(c[m]);
    if (exact != 0) return abs(exact - pred) / exact;
    return abs(pred) / scale;
  };
  LocalValidation v;
  v.m_max = m_max;
  v.max_error = 0;
  v.trend_decreasing = true;
  for (int rho = 0; rho < L; ++rho) {
    int top = m_max - ((m_max - rho) % L + L) % L;
    std::vector<Real> e;
    for (int k = 9; k >= 0; --k) e.push_back(err(top - k * L));
    v.error_at_max.push_back(e.back());
    v.max_error = std::max(v.max_error, e.back());
    if (e.back() > e.front() + Real(1e-40)) v.trend_decreasing = false;
  }
  return v;
}

// ---------------------------------------------------------------- global fits

int default_fit_truncation(int p, int r) {
  AsymptoticParams P = asymptotic_params(p, r);
  int per_class = static_cast<int>(std::ceil(2.0 * P.b / 0.6)) + 1;
  return std::max<int>(40, static_cast<int>(P.L) * per_class);
}

FitReport main_term_fit(const PrimeContext& ctx, const IntSeries& c) {
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  const int p = ctx.p(), r = ctx.r();
  FitReport rep;
  rep.params = asymptotic_params(p, r);
  rep.q = static_cast<int>(ctx.q());
  const AsymptoticParams& P = rep.params;
  const int M = c.truncation(), L = static_cast<int>(P.L), b = P.b;
  const BigRational gap = P.a - P.error_exponent;
  for (int rho = 0; rho < L; ++rho) {
    ClassFit cf;
    cf.residue = rho;
    std::vector<int> ms;
    bool all_zero = true;
    for (int m = rho; m <= M; m += L) {
      ms.push_back(m);
      if (c[m] != 0) all_zero = false;
    }
    if (all_zero) {
      cf.zero_class = true;
      cf.coefficients.assign(b, Real(0));
      cf.residual_ratio = 0;
      rep.classes.push_back(cf);
      continue;
    }
    int w = static_cast<int>(std::ceil(0.6 * ms.size()));
    if (w < 2 * b)
      throw std::invalid_argument("fit window for class " + std::to_string(rho) + " has " +
                                  std::to_string(w) + " points, need " + std::to_string(2 * b));
    cf.m_values.assign(ms.end() - w, ms.end());
    cf.points = w;
    Mat X(w, b);
    Vec y(w);
    const Real scale = Real(M);
    for (int i = 0; i < w; ++i) {
      int m = cf.m_values[i];
      y(i) = to_real(c[m]) / qpow(ctx, P.a, m);
      Real xm = Real(m) / scale, pw = 1;
      for (int k = 0; k < b; ++k, pw *= xm) X(i, k) = pw;
    }
    Vec beta = X.colPivHouseholderQr().solve(y);
    Real sk = 1;
    for (int k = 0; k < b; ++k, sk *= scale) cf.coefficients.push_back(beta(k) / sk);
    Vec res = y - X * beta;
    Real first = 0, second = 0;
    for (int i = 0; i < w; ++i) {
      cf.residuals.push_back(res(i));
      Real n = abs(res(i)) * qpow(ctx, gap, cf.m_values[i]);
      (2 * i < w ? first : second) = std::max(2 * i < w ? first : second, n);
    }
    Real tiny = Real(1e-40);
    if (first <= tiny)
      cf.residual_ratio = second <= tiny ? Real(0) : Real(1e300);
    else
      cf.residual_ratio = second / first;
    rep.classes.push_back(cf);
  }
  return rep;
}

DifferenceReport third_difference_report(const PrimeContext& ctx, const IntSeries& c, int period,
                                         int tail) {
  AsymptoticParams P = asymptotic_params(ctx.p(), ctx.r());
  DifferenceReport rep;
  rep.period = period;
  for (int rho = 0; rho < period; ++rho) {
    std::vector<Real> y;
    for (int m = rho; m <= c.truncation(); m += period) y.push_back(to_real(c[m]) / qpow(ctx, P.a, m));
    std::vector<Real> d3;
    for (std::size_t i = 0; i + 3 < y.size(); ++i)
      d3.push_back(y[i + 3] - 3 * y[i + 2] + 3 * y[i + 1] - y[i]);
    rep.third_differences.push_back(d3);
    if (static_cast<int>(d3.size()) < tail || tail < 2) continue;
    bool nonneg = true, zero = true;
    for (std::size_t i = d3.size() - tail; i < d3.size(); ++i) {
      if (d3[i] < 0) nonneg = false;
      if (d3[i] != 0) zero = false;
    }
    // least-squares slope over the tail
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < tail; ++i) {
      Real yi = d3[d3.size() - tail + i];
      sx += i;
      sy += yi;
      sxx += Real(i) * i;
      sxy += Real(i) * yi;
    }
    Real slope = (Real(tail) * sxy - sx * sy) / (Real(tail) * sxx - sx * sx);
    // a plateau counts as non-decreasing: drift over the tail within 0.1% of its level
    Real level = sy / tail;
    if (nonneg && !zero && slope * tail >= -Real(1e-3) * level) rep.good_classes.push_back(rho);
  }
  return rep;
}

HolomorphyReport holomorphy_check(const PrimeContext& ctx, const IntSeries& c, int m_lo, int m_hi) {
  const int p = ctx.p(), r = ctx.r();
  if (m_hi > c.truncation()) throw std::out_of_range("holomorphy check beyond truncation");
  AsymptoticParams P = asymptotic_params(p, r);
  HolomorphyReport rep;
  rep.m_lo = m_lo;
  rep.m_hi = m_hi;
  rep.epsilon = BigRational(1, p * p * (ipow64(p, r) - 1));
  IntSeries d = c * IntSeries(lambda_inverse(ctx, r), c.truncation());
  rep.passed = true;
  for (int m = m_lo; m <= m_hi; ++m) {
    Real ratio = abs(to_real(d[m])) / qpow(ctx, P.a, m);
    Real bound = qpow(ctx, -rep.epsilon / 2, m);
    rep.ratios.push_back(ratio);
    rep.bounds.push_back(bound);
    if (ratio > bound) rep.passed = false;
  }
  return rep;
}

// ---------------------------------------------------------------- inequalities

InequalityReport verify_inequalities(int p_max, int r_max) {
  InequalityReport rep;
  auto P = [](int p, int e) { return BigRational(ipow(BigInt(p), static_cast<std::uint64_t>(e))); };
  auto tag = [](const std::string& name, int p, int r, const std::string& extra) {
    std::ostringstream os;
    os << name << " p=" << p << " r=" << r << extra;
    return os.str();
  };
  for (int p = 2; p <= p_max; ++p) {
    if (!is_prime(p)) continue;
    for (int r = 1; r <= r_max; ++r) {
      // abscissae of the structural factors increase with the index
      for (int f = 2; f <= r; ++f) {
        ++rep.checks;
        BigRational lo = BigRational((f - 1) * (p - 1)) / (P(p, r + 2 - f) * (P(p, f - 1) - 1));
        BigRational hi = BigRational(f * (p - 1)) / (P(p, r + 1 - f) * (P(p, f) - 1));
        if (!(lo < hi)) rep.violations.push_back(tag("local abscissa", p, r, " f=" + std::to_string(f)));
      }
      // global chain of abscissae
      for (int j = 2; j <= r; ++j) {
        ++rep.checks;
        BigRational left = BigRational(1 + (j - 1) * (p - 1)) / (P(p, r + 2 - j) * (P(p, j - 1) - 1));
        BigRational mid = (BigRational(1) - BigRational(1, p) + j * (p - 1)) /
                          (P(p, r + 1 - j) * (P(p, j) - 1));
        BigRational right = BigRational(1 + j * (p - 1)) / (P(p, r + 1 - j) * (P(p, j) - 1));
        std::string where = " j=" + std::to_string(j);
        if (j == 2 && p == 2) {
          if (left == right && left == BigRational(1) / P(2, r - 1))
            rep.equalities.push_back(tag("global outer equality", p, r, where));
          else
            rep.violations.push_back(tag("global exceptional case", p, r, where));
          continue;
        }
        bool expect_left_eq = p == 2 && j == 3;
        if (!(mid < right)) rep.violations.push_back(tag("global right", p, r, where));
        if (left > mid) rep.violations.push_back(tag("global left", p, r, where));
        if (left == mid) {
          if (expect_left_eq)
            rep.equalities.push_back(tag("global left equality", p, r, where));
          else
            rep.violations.push_back(tag("unexpected global left equality", p, r, where));
        } else if (expect_left_eq) {
          rep.violations.push_back(tag("missing global left equality", p, r, where));
        }
      }
      // single outer block
      for (int h = 2; h <= r; ++h) {
        BigRational rhs = (BigRational(1) - BigRational(1, p) + h * (p - 1)) /
                          (P(p, r + 1 - h) * (P(p, h) - 1));
        BigRational top = BigRational(1 + h * (p - 1)) / (P(p, r + 1 - h) * (P(p, h) - 1));
        std::vector<int> ell;
        std::function<void(int, int)> rec = [&](int i, int cap) {
          if (i == h) {
            ++rep.checks;
            BigRational num = 1, den = 0;
            bool all_top = true;
            for (int k = 0; k < h; ++k) {
              num += ell[k];
              den += BigRational(p - 1) * P(p, r - 1 - k) * (ell[k] + 1);
              if (ell[k] != p - 1) all_top = false;
            }
            BigRational lhs = num / den;
            std::ostringstream os;
            os << " h=" << h << " l=(";
            for (int k = 0; k < h; ++k) os << (k ? "," : "") << ell[k];
            os << ")";
            if (all_top) {
              if (lhs == top)
                rep.equalities.push_back(tag("single block equality", p, r, os.str()));
              else
                rep.violations.push_back(tag("single block top case", p, r, os.str()));
            } else if (!(lhs < rhs)) {
              rep.violations.push_back(tag("single block", p, r, os.str()));
            }
            return;
          }
          for (int l = cap; l >= 1; --l) {
            ell.push_back(l);
            rec(i + 1, l);
            ell.pop_back();
          }
        };
        rec(0, p - 1);
      }
      // several outer blocks
      for (int h = 2; h <= std::min(r, 5); ++h) {
        BigRational rhs = (BigRational(1) - BigRational(1, p) + h * (p - 1)) /
                          (P(p, r + 1 - h) * (P(p, h) - 1));
        for (auto& rho : compositions(h)) {
          const int lambda = static_cast<int>(rho.size());
          if (lambda < 2) continue;
          std::vector<int> B{0};
          for (int b : rho) B.push_back(B.back() + b);
          BigRational extra_num = 0, extra_den = 0;
          for (int i = 1; i < lambda; ++i) {
            extra_num += BigRational((p - 1) * (lambda - i) * rho[i - 1]);
            for (int j = B[i - 1] + 1; j <= B[i]; ++j)
              extra_den += BigRational((p - 1) * (lambda - i)) * P(p, r + 1 - j);
          }
          std::vector<int> ell(h);
          std::function<void(int, int)> rec = [&](int i, int cap) {
            if (i == h) {
              ++rep.checks;
              BigRational num = 1 + extra_num, den = extra_den;
              for (int k = 0; k < h; ++k) {
                num += ell[k];
                den += BigRational(p - 1) * P(p, r - 1 - k) * (ell[k] + 1);
              }
              if (!(num / den < rhs)) {
                std::ostringstream os;
                os << " h=" << h << " blocks=" << lambda << " l=(";
                for (int k = 0; k < h; ++k) os << (k ? "," : "") << ell[k];
                os << ")";
                rep.violations.push_back(tag("several blocks", p, r, os.str()));
              }
              return;
            }
            // new outer block resets the cap
            bool starts_block = std::find(B.begin(), B.end(), i) != B.end();
            int c = starts_block ? p - 1 : cap;
            for (int l = c; l >= 1; --l) {
              ell[i] = l;
              rec(i + 1, l);
            }
          };
          rec(0, p - 1);
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- C_2^2 constant

C22Report c22_constant_check(const PrimeContext& ctx, const IntSeries& c) {
  if (ctx.p() != 2 || ctx.r() != 2) throw std::invalid_argument("constant check needs p = 2, r = 2");
  C22Report rep;
  const Real lq = log_q(ctx);
  const Real q = Real(ctx.q());
  // |log((1 + 4x + x^2)(1 - x)^4)| <= 16 x^2 for 0 < x <= 1/2
  Real log_ep = 0;
  int D = 0;
  for (int d = 1; d <= 200; ++d) {
    Real x = rpow(q, -Real(d));
    Real f = (1 + 4 * x + x * x) * rpow(1 - x, Real(4));
    log_ep += to_real(place_count(ctx, d)) * boost::multiprecision::log(f);
    D = d;
    Real tail = 16 * rpow(q, -Real(d)) / (Real(d + 1) * (q - 1));
    if (d >= 25 && tail < Real(1e-12)) break;
  }
  Real tail_log = 16 * rpow(q, -Real(D)) / (Real(D + 1) * (q - 1));
  rep.euler_product = boost::multiprecision::exp(log_ep);
  rep.tail_bound = rep.euler_product * (boost::multiprecision::exp(tail_log) - 1);
  rep.euler_degree = D;
  Real zres = 1 / ((1 - 1 / q) * lq);
  rep.predicted_even = Real(4) / Real(6) * lq / 144 * rpow(zres, Real(4)) * rep.euler_product;
  rep.predicted_odd = 0;

  FitReport fit = main_term_fit(ctx, c);
  Real sum = 0;
  int count = 0;
  for (auto& cf : fit.classes)
    if (cf.residue % 2 == 0 && !cf.zero_class) {
      sum += cf.coefficients.back();
      ++count;
    }
  rep.fitted_even = count ? sum / count / (lq * lq * lq) : Real(0);
  rep.ratio = rep.predicted_even != 0 ? rep.fitted_even / rep.predicted_even : Real(0);
  return rep;
}

// ---------------------------------------------------------------- serialization

static double dbl(const Real& x) { return static_cast<double>(x); }

nlohmann::json to_json(const AsymptoticParams& P) {
  return {{"a", rat(P.a)},           {"b", P.b},         {"L", P.L},
          {"L_loc", P.L_loc},        {"L_max", P.L_max}, {"M", P.M},
          {"error_exponent", rat(P.error_exponent)}};
}

nlohmann::json to_json(const PoleCatalog& c) {
  nlohmann::json entries = nlohmann::json::array();
  for (auto& e : c.entries)
    entries.push_back({{"real_part", rat(e.real_part)},
                       {"angle", rat(e.angle)},
                       {"angular_step", rat(e.angular_step)},
                       {"max_order", e.max_order},
                       {"certainty", e.certainty == Certainty::Definite ? "definite" : "candidate"}});
  return {{"entries", entries}, {"definite_verified", c.definite_verified}, {"detail", c.detail}};
}

nlohmann::json to_json(const FitReport& f) {
  nlohmann::json classes = nlohmann::json::array();
  for (auto& cf : f.classes) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (auto& x : cf.coefficients) coeffs.push_back(dbl(x));
    classes.push_back({{"residue", cf.residue},
                       {"degree", f.params.b - 1},
                       {"zero_class", cf.zero_class},
                       {"points", cf.points},
                       {"coefficients", coeffs},
                       {"residual_trend", dbl(cf.residual_ratio)}});
  }
  return classes;
}

nlohmann::json to_json(const InequalityReport& r) {
  return {{"checks", r.checks},
          {"passed", r.passed()},
          {"equalities", r.equalities},
          {"violations", r.violations}};
}

nlohmann::json to_json(const C22Report& r) {
  return {{"predicted_even", dbl(r.predicted_even)},
          {"predicted_odd", dbl(r.predicted_odd)},
          {"euler_product", dbl(r.euler_product)},
          {"euler_degree", r.euler_degree},
          {"tail_bound", dbl(r.tail_bound)},
          {"fitted_even", dbl(r.fitted_even)},
          {"ratio", dbl(r.ratio)}};
}

}  // namespace ascount
