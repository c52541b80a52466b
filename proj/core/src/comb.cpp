#include "ascount/comb.hpp"

#include <functional>
#include <stdexcept>

namespace ascount {

namespace {

BigInt ppow(int p, int e) { return ipow(BigInt(p), static_cast<std::uint64_t>(e)); }

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Composition TwoLevel::outer() const {
  Composition out;
  for (auto& b : blocks) {
    int s = 0;
    for (int a : b) s += a;
    out.push_back(s);
  }
  return out;
}

Composition TwoLevel::inner() const {
  Composition out;
  for (auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

int TwoLevel::size() const {
  int s = 0;
  for (int a : outer()) s += a;
  return s;
}

BigInt gaussian_binomial(int x, int y, int p) {
  if (y < 0 || x < 0) throw std::invalid_argument("gaussian_binomial: negative argument");
  if (y > x) return 0;
  BigInt num = 1, den = 1;
  for (int i = x - y + 1; i <= x; ++i) num *= ppow(p, i) - 1;
  for (int i = 1; i <= y; ++i) den *= ppow(p, i) - 1;
  return num / den;
}

BigInt gamma(const Composition& omega, int p) {
  BigInt g = 1;
  int A = 0;
  for (int a : omega) {
    if (a < 1) throw std::invalid_argument("composition parts must be positive");
    A += a;
    g *= gaussian_binomial(A, a, p);
  }
  return g;
}

BigInt mobius_cpk(int k, int p) {
  BigInt v = ppow(p, k * (k - 1) / 2);
  return (k % 2) ? BigInt(-v) : v;
}

BigInt aut_order(int r, int p) {
  BigInt a = 1;
  BigInt pr = ppow(p, r);
  for (int i = 0; i < r; ++i) a *= pr - ppow(p, i);
  return a;
}

BigRational e_constant(int f, int r, int p) {
  if (f < 0 || f > r) throw std::invalid_argument("e_constant: f out of range");
  BigInt num = ppow(p, f) * gaussian_binomial(r, f, p) * mobius_cpk(r - f, p);
  return BigRational(num, aut_order(r, p));
}

int r_of_c(int c, int p) { return c - 1 - floor_div(c - 1, p); }

BigInt zhat(int c, int j, const BigInt& norm, int p) {
  if (c == 0) return 1;
  return ipow(norm, r_of_c(c, p)) - ppow(p, j) * ipow(norm, r_of_c(c - 1, p));
}

BigInt zhat_chain(const Chain& chain, const BigInt& norm, int p) {
  BigInt z = 1;
  std::size_t i = 0;
  while (i < chain.size()) {
    std::size_t k = i;
    while (k < chain.size() && chain[k] == chain[i]) ++k;
    for (std::size_t j = 0; j < k - i; ++j) {
      z *= zhat(chain[i], static_cast<int>(j), norm, p);
      if (z == 0) return 0;
    }
    i = k;
  }
  return z;
}

Composition composition_of(const Chain& chain) {
  Composition out;
  std::size_t i = 0;
  while (i < chain.size()) {
    std::size_t k = i;
    while (k < chain.size() && chain[k] == chain[i]) ++k;
    out.push_back(static_cast<int>(k - i));
    i = k;
  }
  return out;
}

int disc_exponent(const Chain& chain, int p, int r) {
  if (static_cast<int>(chain.size()) > r) throw std::invalid_argument("chain longer than r");
  std::int64_t s = 0;
  for (std::size_t j = 0; j < chain.size(); ++j)
    s += ipow64(p, r - 1 - static_cast<int>(j)) * chain[j];
  return static_cast<int>((p - 1) * s);
}

std::vector<std::vector<Chain>> enumerate_chains_upto(int max_d, int f, int p, int r) {
  if (f > r) throw std::invalid_argument("chain length bound exceeds r");
  std::vector<std::vector<Chain>> out(max_d + 1);
  Chain cur;
  std::function<void(int, int, int)> rec = [&](int pos, int cap, int used) {
    if (pos > 0) out[used].push_back(cur);
    if (pos == f) return;
    int w = (p - 1) * static_cast<int>(ipow64(p, r - 1 - pos));
    for (int c = 2; c <= cap && used + w * c <= max_d; ++c) {
      cur.push_back(c);
      rec(pos + 1, c, used + w * c);
      cur.pop_back();
    }
  };
  if (f >= 1) rec(0, max_d, 0);
  return out;
}

std::vector<Chain> enumerate_chains(int target, int f, int p, int r) {
  if (target < 1) return {};
  return enumerate_chains_upto(target, f, p, r)[target];
}

std::vector<Composition> compositions(int h) {
  std::vector<Composition> out;
  if (h < 1) return out;
  for (int mask = 0; mask < (1 << (h - 1)); ++mask) {
    Composition c{1};
    for (int g = 0; g < h - 1; ++g) {
      if (mask & (1 << g))
        c.push_back(1);
      else
        ++c.back();
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<TwoLevel> two_level_compositions(int h) {
  std::vector<TwoLevel> out;
  if (h < 1) return out;
  std::int64_t total = ipow64(3, h - 1);
  for (std::int64_t code = 0; code < total; ++code) {
    TwoLevel t;
    t.blocks = {{1}};
    std::int64_t c = code;
    for (int g = 0; g < h - 1; ++g) {
      int kind = static_cast<int>(c % 3);
      c /= 3;
      if (kind == 0)
        ++t.blocks.back().back();
      else if (kind == 1)
        t.blocks.back().push_back(1);
      else
        t.blocks.push_back({1});
    }
    out.push_back(std::move(t));
  }
  return out;
}

bool is_admissible(const TwoLevel& theta, int p) {
  for (auto& b : theta.blocks)
    if (static_cast<int>(b.size()) > p - 1) return false;
  return true;
}

TwoLevel two_level_of(const Chain& chain, int p) {
  TwoLevel t;
  int prev_k = -1, prev_l = -1;
  for (int c : chain) {
    if (c < 1) throw std::invalid_argument("chain entries must be positive");
    int l = (c - 1) % p, k = (c - 1) / p;
    if (l == 0) throw std::invalid_argument("chain entry congruent to 1 mod p");
    if (k != prev_k) {
      t.blocks.push_back({1});
    } else if (l != prev_l) {
      t.blocks.back().push_back(1);
    } else {
      ++t.blocks.back().back();
    }
    prev_k = k;
    prev_l = l;
  }
  return t;
}

BigInt structure_poly_value(const TwoLevel& theta, const BigInt& norm, int p) {
  BigInt v = 1;
  for (int a : theta.inner())
    for (int j = 0; j < a; ++j) v *= norm - ppow(p, j);
  return v;
}

}  // namespace ascount
