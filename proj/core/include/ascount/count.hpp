#ifndef ASCOUNT_COUNT_HPP_
#define ASCOUNT_COUNT_HPP_

#include <map>
#include <vector>

#include "ascount/asw.hpp"
#include "ascount/comb.hpp"
#include "ascount/gf.hpp"

namespace ascount {

// value at p^n of the local factor of phi_f for a place of the given norm
BigInt phi_f_local(int f, int n, const BigInt& norm, const PrimeContext& ctx);
// the same for every n in [0, max_n]
std::vector<BigInt> phi_f_local_table(int f, int max_n, const BigInt& norm,
                                      const PrimeContext& ctx);
BigInt phi_f_divisor(int f, const Divisor& D, const PrimeContext& ctx);

// number of C_p^r-extensions with the given discriminant
BigInt z_count_local(int exponent, const PrimeContext& ctx);
BigInt z_count_divisor(const Divisor& D, const PrimeContext& ctx);
BigInt z_total_by_degree(int m, const PrimeContext& ctx);

std::vector<Divisor> effective_divisors(const PrimeContext& ctx, int m);

// Brute-force counts over r-dimensional subspaces of reduced representatives,
// keyed by discriminant exponent (local) or discriminant degree (global).
std::map<int, BigInt> oracle_local(const PrimeContext& ctx, int max_exponent, int workers = 0);
std::map<int, BigInt> oracle_global(const PrimeContext& ctx, int max_degree, int workers = 0);

}  // namespace ascount

#endif
