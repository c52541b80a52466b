#ifndef ASCOUNT_NUMERIC_HPP_
#define ASCOUNT_NUMERIC_HPP_

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace ascount {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
// about 166 bits of mantissa
using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

BigInt ipow(const BigInt& base, std::uint64_t e);
std::int64_t ipow64(std::int64_t base, int e);
bool is_prime(std::int64_t n);
std::int64_t lcm_range(std::int64_t lo, std::int64_t hi);

bool is_integer(const BigRational& x);
BigInt to_integer(const BigRational& x);  // throws if not integral
std::string to_string(const BigRational& x);  // "a" or "a/b"
Real to_real(const BigRational& x);
Real to_real(const BigInt& x);

}  // namespace ascount

#endif
