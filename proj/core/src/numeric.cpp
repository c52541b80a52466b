#include "ascount/numeric.hpp"

#include <numeric>
#include <stdexcept>

namespace ascount {

BigInt ipow(const BigInt& base, std::uint64_t e) {
  BigInt result = 1, b = base;
  while (e) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

std::int64_t ipow64(std::int64_t base, int e) {
  if (e < 0) throw std::invalid_argument("ipow64: negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && r > INT64_MAX / (base < 0 ? -base : base))
      throw std::overflow_error("ipow64: overflow");
    r *= base;
  }
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t lcm_range(std::int64_t lo, std::int64_t hi) {
  std::int64_t l = 1;
  for (std::int64_t k = lo; k <= hi; ++k) l = std::lcm(l, k);
  return l;
}

bool is_integer(const BigRational& x) {
  return boost::multiprecision::denominator(x) == 1;
}

BigInt to_integer(const BigRational& x) {
  if (!is_integer(x))
    throw std::domain_error("value is not an integer: " + to_string(x));
  return boost::multiprecision::numerator(x);
}

std::string to_string(const BigRational& x) {
  auto num = boost::multiprecision::numerator(x);
  auto den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Real to_real(const BigRational& x) {
  return Real(boost::multiprecision::numerator(x)) /
         Real(boost::multiprecision::denominator(x));
}

Real to_real(const BigInt& x) { return Real(x); }

}  // namespace ascount
