#ifndef ASCOUNT_SERIES_HPP_
#define ASCOUNT_SERIES_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ascount/gf.hpp"
#include "ascount/numeric.hpp"

namespace ascount {

// dense coefficients, low to high
template <class T>
using Polynomial = std::vector<T>;

template <class T>
void poly_trim(Polynomial<T>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class T>
Polynomial<T> poly_add(const Polynomial<T>& a, const Polynomial<T>& b) {
  Polynomial<T> c(std::max(a.size(), b.size()), T(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  poly_trim(c);
  return c;
}

template <class T>
Polynomial<T> poly_mul(const Polynomial<T>& a, const Polynomial<T>& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial<T> c(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  poly_trim(c);
  return c;
}

template <class T>
Polynomial<T> poly_scale(Polynomial<T> a, const T& s) {
  for (auto& x : a) x *= s;
  poly_trim(a);
  return a;
}

Polynomial<BigRational> to_rational(const Polynomial<BigInt>& a);
// division over Q
void poly_divmod(const Polynomial<BigRational>& a, const Polynomial<BigRational>& b,
                 Polynomial<BigRational>& quo, Polynomial<BigRational>& rem);
Polynomial<BigRational> poly_gcd(Polynomial<BigRational> a, Polynomial<BigRational> b);

// Power series known exactly up to and including degree truncation().
template <class T>
class Series {
 public:
  Series() = default;
  explicit Series(int truncation) : c_(truncation + 1, T(0)), trunc_(truncation) {
    if (truncation < 0) throw std::invalid_argument("negative truncation");
  }
  Series(const Polynomial<T>& coeffs, int truncation) : Series(truncation) {
    for (std::size_t i = 0; i < coeffs.size() && static_cast<int>(i) <= trunc_; ++i)
      c_[i] = coeffs[i];
  }
  static Series one(int truncation) {
    Series s(truncation);
    s.c_[0] = 1;
    return s;
  }

  int truncation() const { return trunc_; }
  const T& operator[](int i) const {
    if (i < 0 || i > trunc_)
      throw std::out_of_range("coefficient " + std::to_string(i) + " beyond truncation " +
                              std::to_string(trunc_));
    return c_[i];
  }
  T& at(int i) {
    if (i < 0 || i > trunc_) throw std::out_of_range("coefficient beyond truncation");
    return c_[i];
  }
  const std::vector<T>& coeffs() const { return c_; }

  Series operator+(const Series& o) const {
    Series s(std::min(trunc_, o.trunc_));
    for (int i = 0; i <= s.trunc_; ++i) s.c_[i] = c_[i] + o.c_[i];
    return s;
  }
  Series operator-(const Series& o) const {
    Series s(std::min(trunc_, o.trunc_));
    for (int i = 0; i <= s.trunc_; ++i) s.c_[i] = c_[i] - o.c_[i];
    return s;
  }
  Series operator*(const Series& o) const {
    Series s(std::min(trunc_, o.trunc_));
    for (int i = 0; i <= s.trunc_; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; i + j <= s.trunc_; ++j)
        if (o.c_[j] != 0) s.c_[i + j] += c_[i] * o.c_[j];
    }
    return s;
  }
  Series scaled(const T& k) const {
    Series s = *this;
    for (auto& x : s.c_) x *= k;
    return s;
  }
  Series truncated(int m) const {
    Series s(std::min(m, trunc_));
    for (int i = 0; i <= s.trunc_; ++i) s.c_[i] = c_[i];
    return s;
  }
  // u -> t^d, truncated at degree m in t
  Series substitute_power(int d, int m) const {
    if (d < 1) throw std::invalid_argument("substitution degree must be positive");
    if (static_cast<long long>(trunc_ + 1) * d <= m)
      throw std::out_of_range("substitution needs more coefficients than known");
    Series s(m);
    for (int i = 0; i * d <= m; ++i) s.c_[i * d] = c_[i];
    return s;
  }
  int valuation() const {
    for (int i = 0; i <= trunc_; ++i)
      if (c_[i] != 0) return i;
    return trunc_ + 1;
  }

  // exact power; large exponents of 1 + x are expanded binomially
  Series pow(const BigInt& e) const {
    if (e < 0) throw std::invalid_argument("negative series exponent");
    if (c_[0] == 1) {
      Series x = *this;
      x.c_[0] = 0;
      int v = x.valuation();
      if (v > trunc_) return one(trunc_);
      int terms = trunc_ / v;
      unsigned bits = e == 0 ? 0 : boost::multiprecision::msb(e) + 1;
      if (terms < static_cast<int>(2 * bits)) {
        Series acc = one(trunc_), xk = one(trunc_);
        BigInt binom = 1;
        for (int k = 1; k <= terms && BigInt(k) <= e; ++k) {
          binom = binom * (e - (k - 1)) / k;
          xk = xk * x;
          acc = acc + xk.scaled(T(binom));
        }
        return acc;
      }
    }
    Series result = one(trunc_), base = *this;
    unsigned bits = e == 0 ? 0 : boost::multiprecision::msb(e) + 1;
    for (int i = static_cast<int>(bits) - 1; i >= 0; --i) {
      result = result * result;
      if (boost::multiprecision::bit_test(e, i)) result = result * base;
    }
    return result;
  }

  bool operator==(const Series& o) const { return trunc_ == o.trunc_ && c_ == o.c_; }

 private:
  std::vector<T> c_;
  int trunc_ = -1;
};

using TruncatedSeries = Series<BigRational>;
using IntSeries = Series<BigInt>;

TruncatedSeries to_rational(const IntSeries& s);
IntSeries to_integral(const TruncatedSeries& s);  // throws on non-integers

// N(x)/D(x) with D(0) != 0
struct RationalForm {
  Polynomial<BigRational> num, den;
  TruncatedSeries expand(int m) const;
  // c_m = sum_k rec[k-1] c_{m-k} for m > deg num
  std::vector<BigRational> recurrence() const;
  RationalForm reduced() const;  // common factor removed, den(0) = 1
};

// ---------------------------------------------------------------- local factors

// 1 + sum_n phi_f(p^n) u^n for a place of the given norm
IntSeries euler_factor_series(int f, const BigInt& norm, const PrimeContext& ctx, int m);

// exponent of u in the j-th structural factor
std::int64_t delta_degree(int j, int p, int r);
// 1 - N^{j(p-1)} u^{delta_degree(j)}
Polynomial<BigInt> delta_poly(int j, const BigInt& norm, int p, int r);

// series times the structural factors; throws if the trailing window is nonzero
Polynomial<BigInt> psi_polynomial(int f, const BigInt& norm, const PrimeContext& ctx);
Polynomial<BigInt> psi_closed_form(int f, const BigInt& norm, const PrimeContext& ctx);

// sign of Psi_f at u = N^{-s}, s = f(p-1)/delta_degree(f); evaluated in high precision
Real psi_at_rightmost(int f, const BigInt& norm, const PrimeContext& ctx);
// exact sign at the same point, by rational bracketing of the irrational root
int psi_sign_at_rightmost(int f, const BigInt& norm, const PrimeContext& ctx);

// closed form X^{sum (J-i) alpha_i} / prod_i (1 - X^{alpha_1 + ... + alpha_i})
BigRational nested_geometric_closed(const std::vector<int>& alpha, const BigRational& X);
// left side summed as a formal series in Y = 1/X (all alpha_i < 0), compared with
// the expansion of the closed form up to degree m
bool nested_geometric_check(const std::vector<int>& alpha, int m);

// ---------------------------------------------------------------- global series

// zeta function of P^1 over F_q; the L-polynomial argument must be 1
RationalForm zeta_p1(const PrimeContext& ctx, const Polynomial<BigInt>& L = {1});
// zeta(As - B) in t = q^{-s}
RationalForm zeta_shift(const PrimeContext& ctx, int A, int B,
                        const Polynomial<BigInt>& L = {1});

IntSeries global_phi_f(int f, const PrimeContext& ctx, int m, int workers = 0);
IntSeries global_dirichlet(const PrimeContext& ctx, int m, int workers = 0);
IntSeries local_series(const PrimeContext& ctx, int m);
RationalForm local_rational(const PrimeContext& ctx);

struct ZetaFactor {
  int A, B, multiplicity;
};
// zeta factors whose product is the comparison function for the f-th term
std::vector<ZetaFactor> lambda_factors(const PrimeContext& ctx, int f);
Polynomial<BigInt> lambda_inverse(const PrimeContext& ctx, int f);

nlohmann::json series_json(const PrimeContext& ctx, const std::vector<std::string>& coeffs,
                           int truncation);
std::vector<std::string> coefficient_strings(const IntSeries& s);
std::vector<std::string> coefficient_strings(const TruncatedSeries& s);
std::vector<std::string> coefficient_strings(const Polynomial<BigRational>& p);

}  // namespace ascount

#endif
