#include "ascount/series.hpp"

#include <algorithm>
#include <numeric>
#include <functional>

#include "ascount/comb.hpp"
#include "ascount/count.hpp"
#include "ascount/parallel.hpp"

namespace ascount {

Polynomial<BigRational> to_rational(const Polynomial<BigInt>& a) {
  Polynomial<BigRational> out;
  for (auto& x : a) out.emplace_back(x);
  return out;
}

void poly_divmod(const Polynomial<BigRational>& a, const Polynomial<BigRational>& b,
                 Polynomial<BigRational>& quo, Polynomial<BigRational>& rem) {
  Polynomial<BigRational> bb = b;
  poly_trim(bb);
  if (bb.empty()) throw std::domain_error("polynomial division by zero");
  rem = a;
  poly_trim(rem);
  quo.assign(rem.size() >= bb.size() ? rem.size() - bb.size() + 1 : 0, BigRational(0));
  const std::size_t db = bb.size() - 1;
  while (rem.size() >= bb.size()) {
    std::size_t shift = rem.size() - bb.size();
    BigRational f = rem.back() / bb.back();
    quo[shift] = f;
    for (std::size_t i = 0; i <= db; ++i) rem[shift + i] -= f * bb[i];
    poly_trim(rem);
  }
  poly_trim(quo);
}

Polynomial<BigRational> poly_gcd(Polynomial<BigRational> a, Polynomial<BigRational> b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Polynomial<BigRational> q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = poly_scale(a, BigRational(1) / a.back());
  return a;
}

TruncatedSeries to_rational(const IntSeries& s) {
  TruncatedSeries out(s.truncation());
  for (int i = 0; i <= s.truncation(); ++i) out.at(i) = BigRational(s[i]);
  return out;
}

IntSeries to_integral(const TruncatedSeries& s) {
  IntSeries out(s.truncation());
  for (int i = 0; i <= s.truncation(); ++i) out.at(i) = to_integer(s[i]);
  return out;
}

TruncatedSeries RationalForm::expand(int m) const {
  if (den.empty() || den[0] == 0) throw std::domain_error("denominator vanishes at 0");
  TruncatedSeries s(m);
  for (int i = 0; i <= m; ++i) {
    BigRational v = i < static_cast<int>(num.size()) ? num[i] : BigRational(0);
    for (int k = 1; k < static_cast<int>(den.size()) && k <= i; ++k)
      if (den[k] != 0) v -= den[k] * s[i - k];
    s.at(i) = v / den[0];
  }
  return s;
}

std::vector<BigRational> RationalForm::recurrence() const {
  std::vector<BigRational> rec;
  for (std::size_t k = 1; k < den.size(); ++k) rec.push_back(-den[k] / den[0]);
  return rec;
}

RationalForm RationalForm::reduced() const {
  Polynomial<BigRational> g = poly_gcd(num, den), q, r;
  RationalForm out;
  poly_divmod(num, g, out.num, r);
  poly_divmod(den, g, out.den, r);
  BigRational c = out.den.at(0);
  out.num = poly_scale(out.num, BigRational(1) / c);
  out.den = poly_scale(out.den, BigRational(1) / c);
  return out;
}

// ---------------------------------------------------------------- local factors

IntSeries euler_factor_series(int f, const BigInt& norm, const PrimeContext& ctx, int m) {
  auto table = phi_f_local_table(f, m, norm, ctx);
  IntSeries s(m);
  for (int i = 0; i <= m; ++i) s.at(i) = table[i];
  return s;
}

std::int64_t delta_degree(int j, int p, int r) {
  return ipow64(p, r + 1 - j) * (ipow64(p, j) - 1);
}

Polynomial<BigInt> delta_poly(int j, const BigInt& norm, int p, int r) {
  Polynomial<BigInt> d(delta_degree(j, p, r) + 1, BigInt(0));
  d[0] = 1;
  d.back() = -ipow(norm, j * (p - 1));
  return d;
}

Polynomial<BigInt> psi_polynomial(int f, const BigInt& norm, const PrimeContext& ctx) {
  const int p = ctx.p(), r = ctx.r();
  std::int64_t S = 0;
  for (int j = 1; j <= f; ++j) S += delta_degree(j, p, r);
  const int top = static_cast<int>(2 * S);
  IntSeries phi = euler_factor_series(f, norm, ctx, top);
  Polynomial<BigInt> prod{1};
  for (int j = 1; j <= f; ++j) prod = poly_mul(prod, delta_poly(j, norm, p, r));
  IntSeries psi = phi * IntSeries(prod, top);
  for (int i = static_cast<int>(S) + 1; i <= top; ++i)
    if (psi[i] != 0)
      throw std::logic_error("structural factors leave a nonzero tail at degree " +
                             std::to_string(i));
  Polynomial<BigInt> out(psi.coeffs().begin(), psi.coeffs().begin() + S + 1);
  poly_trim(out);
  return out;
}

namespace {

// ell assignments: strictly decreasing across the inner blocks of one outer block
void for_each_ell(const TwoLevel& theta, int p, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> ell;
  std::function<void(std::size_t, std::size_t, int)> rec = [&](std::size_t b, std::size_t i,
                                                              int cap) {
    if (b == theta.blocks.size()) {
      fn(ell);
      return;
    }
    if (i == theta.blocks[b].size()) {
      rec(b + 1, 0, p - 1);
      return;
    }
    for (int l = cap; l >= 1; --l) {
      ell.push_back(l);
      rec(b, i + 1, l - 1);
      ell.pop_back();
    }
  };
  rec(0, 0, p - 1);
}

}  // namespace

Polynomial<BigInt> psi_closed_form(int f, const BigInt& norm, const PrimeContext& ctx) {
  const int p = ctx.p(), r = ctx.r();
  Polynomial<BigInt> result{1};
  for (int j = 1; j <= f; ++j) result = poly_mul(result, delta_poly(j, norm, p, r));
  for (int h = 1; h <= f; ++h) {
    BigInt binom = gaussian_binomial(f, h, p);
    for (auto& theta : two_level_compositions(h)) {
      if (!is_admissible(theta, p)) continue;
      Composition inner = theta.inner(), outer = theta.outer();
      std::vector<int> B;
      int acc = 0;
      for (int b : outer) B.push_back(acc += b);
      Polynomial<BigInt> term{binom * gamma(inner, p)};
      for (int j = 1; j <= f; ++j)
        if (std::find(B.begin(), B.end(), j) == B.end())
          term = poly_mul(term, delta_poly(j, norm, p, r));
      for (std::size_t i = 0; i + 1 < B.size(); ++i) {
        Polynomial<BigInt> mono(delta_degree(B[i], p, r) + 1, BigInt(0));
        mono.back() = ipow(norm, B[i] * (p - 1));
        term = poly_mul(term, mono);
      }
      // sum over ell of prod_i N^{a_i(l_i - 1)} u^{(p-1) sum_{j in block i} p^{r-j}(l_i + 1)}
      Polynomial<BigInt> ell_sum;
      for_each_ell(theta, p, [&](const std::vector<int>& ell) {
        BigInt coef = 1;
        std::int64_t deg = 0;
        int pos = 0;
        for (std::size_t i = 0; i < inner.size(); ++i) {
          coef *= ipow(norm, inner[i] * (ell[i] - 1));
          std::int64_t w = 0;
          for (int j = pos + 1; j <= pos + inner[i]; ++j) w += ipow64(p, r - j);
          deg += (p - 1) * w * (ell[i] + 1);
          pos += inner[i];
        }
        if (static_cast<std::int64_t>(ell_sum.size()) <= deg) ell_sum.resize(deg + 1, BigInt(0));
        ell_sum[deg] += coef;
      });
      term = poly_mul(term, poly_scale(ell_sum, structure_poly_value(theta, norm, p)));
      result = poly_add(result, term);
    }
  }
  poly_trim(result);
  return result;
}

Real psi_at_rightmost(int f, const BigInt& norm, const PrimeContext& ctx) {
  const int p = ctx.p(), r = ctx.r();
  Polynomial<BigInt> psi = psi_closed_form(f, norm, ctx);
  if (f == 0) return Real(psi.empty() ? 0 : psi[0]);
  // u^A = N^{-f(p-1)} at the rightmost real pole
  Real A = Real(delta_degree(f, p, r));
  Real u = pow(Real(norm), -Real(f * (p - 1)) / A);
  Real v = 0, mag = 0, uk = 1;
  for (auto& c : psi) {
    Real t = Real(c) * uk;
    v += t;
    mag += abs(t);
    uk *= u;
  }
  // values below the rounding level are reported as zero
  if (abs(v) <= mag * Real(1e-40)) return 0;
  return v;
}

int psi_sign_at_rightmost(int f, const BigInt& norm, const PrimeContext& ctx) {
  const int p = ctx.p(), r = ctx.r();
  Polynomial<BigInt> psi = psi_closed_form(f, norm, ctx);
  auto sgn = [](const BigRational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
  if (f == 0) return psi.empty() ? 0 : sgn(BigRational(psi[0]));
  if (norm < 2) throw std::invalid_argument("norm must be at least 2");
  // u = 1/w with w^den = N^num
  std::int64_t num = f * (p - 1), den = delta_degree(f, p, r);
  std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  const BigInt target = ipow(norm, static_cast<std::uint64_t>(num));
  auto eval = [&](const BigRational& u, int part) {
    BigRational v = 0;
    for (auto it = psi.rbegin(); it != psi.rend(); ++it) {
      BigInt c = part > 0 ? (*it > 0 ? *it : BigInt(0)) : (*it < 0 ? BigInt(-*it) : BigInt(0));
      v = v * u + BigRational(c);
    }
    return v;
  };
  // exact root
  {
    BigInt lo = 1, hi = target;
    while (lo < hi) {
      BigInt mid = (lo + hi) / 2;
      if (ipow(mid, static_cast<std::uint64_t>(den)) < target)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (ipow(lo, static_cast<std::uint64_t>(den)) == target) {
      BigRational u(BigInt(1), lo);
      return sgn(eval(u, 1) - eval(u, -1));
    }
  }
  BigRational wlo = 1, whi = BigRational(target);
  for (int step = 0; step < 4000; ++step) {
    // both parts are increasing in u > 0
    BigRational ulo = 1 / whi, uhi = 1 / wlo;
    BigRational pos_lo = eval(ulo, 1), pos_hi = eval(uhi, 1);
    BigRational neg_lo = eval(ulo, -1), neg_hi = eval(uhi, -1);
    if (pos_lo - neg_hi > 0) return 1;
    if (pos_hi - neg_lo < 0) return -1;
    BigRational mid = (wlo + whi) / 2;
    BigRational m = 1;
    for (std::int64_t k = 0; k < den; ++k) m *= mid;
    if (m < BigRational(target))
      wlo = mid;
    else
      whi = mid;
  }
  throw std::runtime_error("sign of structure polynomial not resolved");
}

BigRational nested_geometric_closed(const std::vector<int>& alpha, const BigRational& X) {
  const int J = static_cast<int>(alpha.size());
  auto xpow = [&](std::int64_t e) {
    BigRational b = e >= 0 ? X : BigRational(1) / X;
    BigRational out = 1;
    for (std::int64_t i = 0; i < (e >= 0 ? e : -e); ++i) out *= b;
    return out;
  };
  std::int64_t e = 0;
  for (int i = 1; i <= J; ++i) e += static_cast<std::int64_t>(J - i) * alpha[i - 1];
  BigRational v = xpow(e);
  std::int64_t partial = 0;
  for (int i = 0; i < J; ++i) {
    partial += alpha[i];
    BigRational d = 1 - xpow(partial);
    if (d == 0) throw std::domain_error("nested geometric sum diverges");
    v /= d;
  }
  return v;
}

bool nested_geometric_check(const std::vector<int>& alpha, int m) {
  const int J = static_cast<int>(alpha.size());
  for (int a : alpha)
    if (a >= 0) throw std::invalid_argument("formal check needs negative exponents");
  // left side: sum over k_1 > k_2 > ... > k_J >= 0 of Y^{-sum alpha_i k_i}
  TruncatedSeries lhs(m);
  std::function<void(int, int, int)> rec = [&](int i, int bound, int deg) {
    if (i == J) {
      lhs.at(deg) += 1;
      return;
    }
    for (int k = 0; k < bound; ++k) {
      int d = deg - alpha[i] * k;
      if (d > m) break;
      rec(i + 1, k, d);
    }
  };
  rec(0, m + 1, 0);
  // right side: Y^{-sum (J-i) alpha_i} / prod (1 - Y^{-(alpha_1 + ... + alpha_i)})
  std::int64_t e = 0;
  for (int i = 1; i <= J; ++i) e -= static_cast<std::int64_t>(J - i) * alpha[i - 1];
  TruncatedSeries rhs(m);
  if (e <= m) rhs.at(static_cast<int>(e)) = 1;
  std::int64_t partial = 0;
  for (int i = 0; i < J; ++i) {
    partial -= alpha[i];
    TruncatedSeries geo(m);
    for (std::int64_t k = 0; k * partial <= m; ++k) geo.at(static_cast<int>(k * partial)) = 1;
    rhs = rhs * geo;
  }
  return lhs == rhs;
}

// ---------------------------------------------------------------- global series

RationalForm zeta_shift(const PrimeContext& ctx, int A, int B, const Polynomial<BigInt>& L) {
  if (!(L.size() == 1 && L[0] == 1))
    throw std::invalid_argument("only the rational function field (L = 1) is supported");
  if (A < 1) throw std::invalid_argument("zeta_shift: A must be positive");
  BigInt q = ctx.q();
  Polynomial<BigRational> f1(A + 1, BigRational(0)), f2(A + 1, BigRational(0));
  f1[0] = f2[0] = 1;
  // negative B gives rational powers of q, kept exact
  auto qpow = [&](int e) {
    return e >= 0 ? BigRational(ipow(q, e)) : BigRational(1) / BigRational(ipow(q, -e));
  };
  f1[A] = -qpow(B);
  f2[A] = -qpow(B + 1);
  RationalForm z;
  z.num = {BigRational(1)};
  z.den = poly_mul(f1, f2);
  return z;
}

RationalForm zeta_p1(const PrimeContext& ctx, const Polynomial<BigInt>& L) {
  return zeta_shift(ctx, 1, 0, L);
}

IntSeries global_phi_f(int f, const PrimeContext& ctx, int m, int workers) {
  if (m < 0) throw std::invalid_argument("truncation must be >= 0");
  std::vector<IntSeries> factors(m + 1);
  parallel_for(m, workers, [&](int i) {
    const int d = i + 1;
    BigInt norm = ipow(BigInt(ctx.q()), d);
    IntSeries local = euler_factor_series(f, norm, ctx, m / d);
    IntSeries in_t = local.substitute_power(d, m);
    factors[d] = in_t.pow(place_count(ctx, d));
  });
  IntSeries acc = IntSeries::one(m);
  for (int d = 1; d <= m; ++d) acc = acc * factors[d];
  return acc;
}

IntSeries global_dirichlet(const PrimeContext& ctx, int m, int workers) {
  TruncatedSeries s(m);
  for (int f = 0; f <= ctx.r(); ++f)
    s = s + to_rational(global_phi_f(f, ctx, m, workers)).scaled(e_constant(f, ctx.r(), ctx.p()));
  IntSeries out = to_integral(s);
  for (int i = 0; i <= m; ++i)
    if (out[i] < 0) throw std::logic_error("negative coefficient at degree " + std::to_string(i));
  return out;
}

IntSeries local_series(const PrimeContext& ctx, int m) {
  TruncatedSeries s(m);
  for (int f = 0; f <= ctx.r(); ++f)
    s = s + to_rational(euler_factor_series(f, ctx.q(), ctx, m))
                .scaled(e_constant(f, ctx.r(), ctx.p()));
  IntSeries out = to_integral(s);
  for (int i = 0; i <= m; ++i)
    if (out[i] < 0) throw std::logic_error("negative coefficient at degree " + std::to_string(i));
  return out;
}

RationalForm local_rational(const PrimeContext& ctx) {
  const int p = ctx.p(), r = ctx.r();
  const BigInt q = ctx.q();
  RationalForm out;
  out.den = {BigRational(1)};
  for (int j = 1; j <= r; ++j) out.den = poly_mul(out.den, to_rational(delta_poly(j, q, p, r)));
  for (int f = 0; f <= r; ++f) {
    Polynomial<BigInt> term = psi_polynomial(f, q, ctx);
    for (int j = f + 1; j <= r; ++j) term = poly_mul(term, delta_poly(j, q, p, r));
    out.num = poly_add(out.num, poly_scale(to_rational(term), e_constant(f, r, p)));
  }
  return out;
}

std::vector<ZetaFactor> lambda_factors(const PrimeContext& ctx, int f) {
  const int p = ctx.p(), r = ctx.r();
  if (f < 1 || f > r) throw std::invalid_argument("f must lie in [1, r]");
  std::vector<ZetaFactor> out;
  if (f == 1) {
    for (int l = 1; l <= p - 1; ++l)
      out.push_back({static_cast<int>(ipow64(p, r - 1) * (l + 1) * (p - 1)), l, 1});
  } else if (f == 2 && p == 2) {
    out.push_back({static_cast<int>(3 * ipow64(2, r - 1)), 2, 1});
    out.push_back({static_cast<int>(ipow64(2, r)), 1, static_cast<int>(ipow64(2, f) - 1)});
  } else {
    out.push_back({static_cast<int>(delta_degree(f, p, r)), f * (p - 1), 1});
  }
  return out;
}

Polynomial<BigInt> lambda_inverse(const PrimeContext& ctx, int f) {
  BigInt q = ctx.q();
  Polynomial<BigInt> out{1};
  for (auto& z : lambda_factors(ctx, f))
    for (int k = 0; k < z.multiplicity; ++k)
      for (int e : {z.B, z.B + 1}) {
        Polynomial<BigInt> fac(z.A + 1, BigInt(0));
        fac[0] = 1;
        fac[z.A] = -ipow(q, e);
        out = poly_mul(out, fac);
      }
  return out;
}

nlohmann::json series_json(const PrimeContext& ctx, const std::vector<std::string>& coeffs,
                           int truncation) {
  nlohmann::json j;
  j["p"] = ctx.p();
  j["n"] = ctx.n();
  j["r"] = ctx.r();
  j["variable"] = "q^-s";
  j["truncation"] = truncation;
  j["coefficients"] = coeffs;
  return j;
}

std::vector<std::string> coefficient_strings(const IntSeries& s) {
  std::vector<std::string> out;
  for (auto& c : s.coeffs()) out.push_back(c.str());
  return out;
}

std::vector<std::string> coefficient_strings(const TruncatedSeries& s) {
  std::vector<std::string> out;
  for (auto& c : s.coeffs()) out.push_back(to_string(c));
  return out;
}

std::vector<std::string> coefficient_strings(const Polynomial<BigRational>& p) {
  std::vector<std::string> out;
  for (auto& c : p) out.push_back(to_string(c));
  return out;
}

}  // namespace ascount
