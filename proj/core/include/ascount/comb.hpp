#ifndef ASCOUNT_COMB_HPP_
#define ASCOUNT_COMB_HPP_

#include <vector>

#include "ascount/numeric.hpp"

namespace ascount {

// non-increasing positive conductor exponents c_1 >= ... >= c_h
using Chain = std::vector<int>;
using Composition = std::vector<int>;

// outer composition whose blocks are themselves split into inner blocks
struct TwoLevel {
  std::vector<Composition> blocks;
  bool operator==(const TwoLevel&) const = default;
  Composition outer() const;  // sizes of the outer blocks
  Composition inner() const;  // concatenated inner block sizes
  int size() const;
};

BigInt gaussian_binomial(int x, int y, int p);
BigInt gamma(const Composition& omega, int p);
BigInt mobius_cpk(int k, int p);
BigInt aut_order(int r, int p);
BigRational e_constant(int f, int r, int p);

int r_of_c(int c, int p);
BigInt zhat(int c, int j, const BigInt& norm, int p);
BigInt zhat_chain(const Chain& chain, const BigInt& norm, int p);

Composition composition_of(const Chain& chain);
int disc_exponent(const Chain& chain, int p, int r);

// chains of length 1..f with all entries >= 2 and discriminant exponent target
std::vector<Chain> enumerate_chains(int target, int f, int p, int r);
// same, for every discriminant exponent in [1, max_d]; result indexed by exponent
std::vector<std::vector<Chain>> enumerate_chains_upto(int max_d, int f, int p, int r);

std::vector<Composition> compositions(int h);
std::vector<TwoLevel> two_level_compositions(int h);
bool is_admissible(const TwoLevel& theta, int p);
TwoLevel two_level_of(const Chain& chain, int p);
BigInt structure_poly_value(const TwoLevel& theta, const BigInt& norm, int p);

}  // namespace ascount

#endif
