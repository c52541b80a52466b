#ifndef ASCOUNT_GF_HPP_
#define ASCOUNT_GF_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ascount/numeric.hpp"

namespace ascount {

// Element of F_q, stored as the base-p integer of its coordinate vector
// (coordinate i is the coefficient of x^i modulo the defining polynomial).
struct FieldElement {
  std::uint32_t code = 0;
  bool is_zero() const { return code == 0; }
  auto operator<=>(const FieldElement&) const = default;
};

class PrimeContext {
 public:
  PrimeContext(int p, int n, int r);

  int p() const { return p_; }
  int n() const { return n_; }
  int r() const { return r_; }
  std::int64_t q() const { return q_; }
  // monic, length n + 1, low to high over F_p
  const std::vector<int>& modulus() const { return modulus_; }

  FieldElement zero() const { return {}; }
  FieldElement one() const { return {1}; }
  FieldElement from_int(std::int64_t k) const;  // image of k in F_p
  FieldElement from_coords(const std::vector<int>& c) const;
  std::vector<int> coords(FieldElement a) const;
  FieldElement element(std::int64_t index) const;  // index in [0, q)

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  FieldElement scale(FieldElement a, int lambda) const;  // lambda in F_p

  std::string format(FieldElement a) const;
  bool operator==(const PrimeContext& o) const {
    return p_ == o.p_ && n_ == o.n_ && r_ == o.r_;
  }

 private:
  int p_, n_, r_;
  std::int64_t q_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> exp_, log_;
};

// Polynomial over F_q, coefficients low to high, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const PrimeContext* ctx) : ctx_(ctx) {}
  Poly(const PrimeContext* ctx, std::vector<FieldElement> c);
  static Poly constant(const PrimeContext* ctx, FieldElement a);
  static Poly monomial(const PrimeContext* ctx, FieldElement a, int k);
  static Poly x(const PrimeContext* ctx) { return monomial(ctx, ctx->one(), 1); }

  const PrimeContext* ctx() const { return ctx_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].code == 1; }
  FieldElement coeff(int i) const;
  FieldElement leading() const;
  const std::vector<FieldElement>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(FieldElement a) const;
  Poly scaled_int(int lambda) const;
  Poly shifted(int k) const;  // multiply by x^k
  void divmod(const Poly& d, Poly& quo, Poly& rem) const;
  Poly operator/(const Poly& d) const;
  Poly operator%(const Poly& d) const;
  Poly monic() const;
  Poly powmod(const BigInt& e, const Poly& m) const;
  Poly pow(unsigned e) const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  // degree first, then coefficients compared from the constant term up
  bool operator<(const Poly& o) const;
  std::string format(const std::string& var = "t") const;

 private:
  void trim();
  const PrimeContext* ctx_ = nullptr;
  std::vector<FieldElement> c_;
};

// inverse of Poly::format: terms like 2t3, [1,1]t, t, 1 joined by '+'
Poly parse_poly(const PrimeContext* ctx, const std::string& text);

Poly gcd(Poly a, Poly b);
// returns g = gcd(a, b) (monic) and s with s*a = g mod b
Poly inverse_mod(const Poly& a, const Poly& m);
bool is_irreducible(const Poly& f);
// monic irreducibles of degree d over F_q, lexicographic order
std::vector<Poly> irreducibles(const PrimeContext& ctx, int d);
BigInt place_count(const PrimeContext& ctx, int d);
std::int64_t moebius(std::int64_t n);

class Place {
 public:
  static Place finite(Poly pi);
  static Place infinity(const PrimeContext* ctx);
  bool is_infinity() const { return inf_; }
  const Poly& uniformizer() const { return pi_; }  // finite places only
  int degree() const { return inf_ ? 1 : pi_.degree(); }
  // finite places precede the infinite place
  bool operator<(const Place& o) const;
  bool operator==(const Place& o) const { return inf_ == o.inf_ && pi_ == o.pi_; }
  std::string format() const;

 private:
  bool inf_ = false;
  Poly pi_;
};

// all places of degree d (the infinite place is listed last among degree 1)
std::vector<Place> places_of_degree(const PrimeContext& ctx, int d);

using Divisor = std::map<Place, int>;
int divisor_degree(const Divisor& D);

// Residue field F_q[x]/(pi) of a place of degree d; elements are
// polynomials of degree < d.
class ResidueField {
 public:
  explicit ResidueField(const Place& place, const PrimeContext* ctx);
  int degree() const { return d_; }
  Poly reduce(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly pow(const Poly& a, const BigInt& e) const;
  Poly pth_root(const Poly& a) const;
  std::int64_t size() const;
  Poly element(std::int64_t index) const;  // index in [0, q^d)

 private:
  const PrimeContext* ctx_;
  Poly pi_;
  int d_;
};

Poly pth_root(const ResidueField& k, const Poly& a);

// a/b with b monic and gcd 1
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(Poly num, Poly den);
  explicit RationalFunction(Poly num);
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction pow(unsigned e) const;
  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

 private:
  void normalize();
  Poly num_, den_;
};

// irreducible factorization of a monic polynomial by trial division
std::vector<std::pair<Poly, int>> factor_monic(const Poly& f);

}  // namespace ascount

#endif
