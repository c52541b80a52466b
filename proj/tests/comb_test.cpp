#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "ascount/comb.hpp"
#include "group_oracle.hpp"

namespace ascount {
namespace {

using oracle::Group;
using oracle::injective_homs;

// ---- subspaces of F_p^h as sorted vectors of encoded vectors

using Subspace = std::vector<int>;

int add_vec(int a, int b, int p, int h) {
  int out = 0, scale = 1;
  for (int i = 0; i < h; ++i, a /= p, b /= p, scale *= p) out += ((a % p + b % p) % p) * scale;
  return out;
}

int mul_vec(int a, int lambda, int p, int h) {
  int out = 0, scale = 1;
  for (int i = 0; i < h; ++i, a /= p, scale *= p) out += ((a % p) * lambda % p) * scale;
  return out;
}

Subspace span(const std::vector<int>& gens, int p, int h) {
  std::set<int> s{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int v : cur)
      for (int g : gens)
        for (int l = 1; l < p; ++l) {
          int w = add_vec(v, mul_vec(g, l, p, h), p, h);
          if (s.insert(w).second) grew = true;
        }
  }
  return Subspace(s.begin(), s.end());
}

std::set<Subspace> all_subspaces(int p, int h) {
  int total = static_cast<int>(ipow64(p, h));
  std::set<Subspace> out;
  std::function<void(int, std::vector<int>&)> rec = [&](int from, std::vector<int>& gens) {
    out.insert(span(gens, p, h));
    if (static_cast<int>(gens.size()) == h) return;
    for (int v = from; v < total; ++v) {
      gens.push_back(v);
      rec(v + 1, gens);
      gens.pop_back();
    }
  };
  std::vector<int> gens;
  rec(1, gens);
  return out;
}

int dim_of(const Subspace& s, int p) {
  int d = 0;
  for (std::size_t n = s.size(); n > 1; n /= p) ++d;
  return d;
}

// flags with the dimension jumps of omega
BigInt flag_count(const Composition& omega, int p, int h) {
  auto subs = all_subspaces(p, h);
  std::vector<int> dims{0};
  for (int a : omega) dims.push_back(dims.back() + a);
  std::function<BigInt(std::size_t, const Subspace&)> rec = [&](std::size_t i, const Subspace& prev) {
    if (i == dims.size()) return BigInt(1);
    BigInt total = 0;
    for (auto& s : subs) {
      if (dim_of(s, p) != dims[i]) continue;
      if (!std::includes(s.begin(), s.end(), prev.begin(), prev.end())) continue;
      total += rec(i + 1, s);
    }
    return total;
  };
  return rec(1, Subspace{0});
}

TEST(GaussianBinomial, Values) {
  EXPECT_EQ(gaussian_binomial(5, 0, 3), 1);
  EXPECT_EQ(gaussian_binomial(2, 1, 2), 3);
  EXPECT_EQ(gaussian_binomial(3, 1, 2), 7);
  for (int p : {2, 3})
    for (int h = 1; h <= 3; ++h) {
      auto subs = all_subspaces(p, h);
      for (int k = 0; k <= h; ++k) {
        auto n = std::count_if(subs.begin(), subs.end(),
                               [&](const Subspace& s) { return dim_of(s, p) == k; });
        EXPECT_EQ(gaussian_binomial(h, k, p), BigInt(n)) << "p=" << p << " h=" << h << " k=" << k;
      }
    }
}

TEST(Gamma, Values) {
  EXPECT_EQ(gamma({}, 2), 1);
  EXPECT_EQ(gamma({1, 1}, 2), 3);
  EXPECT_EQ(gamma({2}, 2), 1);
}

TEST(Gamma, MatchesFlagCount) {
  for (int p : {2, 3})
    for (int h = 1; h <= 3; ++h)
      for (auto& omega : compositions(h))
        EXPECT_EQ(gamma(omega, p), flag_count(omega, p, h)) << "p=" << p << " h=" << h;
}

TEST(Gamma, PermutationInvariant) {
  for (int p : {2, 3, 5})
    for (int h = 1; h <= 6; ++h)
      for (auto omega : compositions(h)) {
        BigInt g = gamma(omega, p);
        std::sort(omega.begin(), omega.end());
        do {
          EXPECT_EQ(gamma(omega, p), g);
        } while (std::next_permutation(omega.begin(), omega.end()));
      }
}

TEST(Mobius, Values) {
  EXPECT_EQ(mobius_cpk(0, 2), 1);
  EXPECT_EQ(mobius_cpk(1, 2), -1);
  EXPECT_EQ(mobius_cpk(2, 2), 2);
  EXPECT_EQ(mobius_cpk(2, 3), 3);
}

TEST(Mobius, DelsarteInclusionExclusion) {
  for (int p : {2, 3}) {
    std::vector<Group> groups = {{{p}}, {{p, p}}, {{p, p, p}}, {{p, p * p}}};
    for (int r = 1; r <= 2; ++r)
      for (auto& A : groups) {
        BigInt torsion = 1;
        for (int o : A.orders) torsion *= p;  // |A[p]|, every factor has order >= p
        BigInt rhs = 0;
        for (int f = 0; f <= r; ++f)
          rhs += gaussian_binomial(r, f, p) * mobius_cpk(r - f, p) * ipow(torsion, f);
        EXPECT_EQ(injective_homs(p, r, A), rhs) << "p=" << p << " r=" << r << " |A|=" << A.size();
      }
  }
}

TEST(Compositions, Counts) {
  for (int h = 1; h <= 10; ++h) {
    auto all = compositions(h);
    EXPECT_EQ(all.size(), std::size_t{1} << (h - 1));
    std::set<Composition> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), all.size());
    for (auto& c : all) {
      int s = 0;
      for (int a : c) {
        EXPECT_GE(a, 1);
        s += a;
      }
      EXPECT_EQ(s, h);
    }
    auto two = two_level_compositions(h);
    EXPECT_EQ(static_cast<std::int64_t>(two.size()), ipow64(3, h - 1));
    for (auto& t : two) EXPECT_EQ(t.size(), h);
  }
}

TEST(Chains, Helpers) {
  EXPECT_EQ(r_of_c(1, 2), 0);
  EXPECT_EQ(r_of_c(2, 2), 1);
  EXPECT_EQ(r_of_c(5, 3), 3);
  EXPECT_EQ(composition_of({3, 3, 1}), (Composition{2, 1}));
  EXPECT_EQ(composition_of({}), Composition{});
  EXPECT_EQ(composition_of({2, 2, 2}), Composition{3});
  EXPECT_EQ(disc_exponent({}, 2, 2), 0);
  EXPECT_EQ(disc_exponent({2}, 2, 1), 2);
  EXPECT_EQ(disc_exponent({2, 2}, 2, 2), 6);
  for (int p : {2, 3})
    for (int r = 1; r <= 3; ++r)
      for (int c = 2; c <= 9; ++c)
        EXPECT_EQ(disc_exponent({c}, p, r), (p - 1) * ipow64(p, r - 1) * c);
}

TEST(Zhat, Values) {
  EXPECT_EQ(zhat(0, 0, 2, 2), 1);
  EXPECT_EQ(zhat(3, 0, 2, 2), 0);
  EXPECT_EQ(zhat(2, 1, 2, 2), 0);
  EXPECT_EQ(zhat_chain({}, 2, 2), 1);
  EXPECT_EQ(zhat_chain({2, 2}, 2, 2), 0);
  EXPECT_EQ(zhat_chain({2, 2}, 4, 2), 6);
}

TEST(Zhat, ChainIsProductOverRuns) {
  std::mt19937_64 rng(5);
  for (int p : {2, 3})
    for (int trial = 0; trial < 200; ++trial) {
      std::uniform_int_distribution<int> len(0, 4), val(2, 9);
      Chain c(len(rng));
      for (auto& x : c) x = val(rng);
      std::sort(c.rbegin(), c.rend());
      for (BigInt norm : {BigInt(p), BigInt(p * p), BigInt(p * p * p)}) {
        // j counts the earlier entries with the same conductor
        BigInt expected = 1;
        for (std::size_t i = 0; i < c.size(); ++i) {
          int j = 0;
          while (j < static_cast<int>(i) && c[i - j - 1] == c[i]) ++j;
          expected *= zhat(c[i], j, norm, p);
        }
        EXPECT_EQ(zhat_chain(c, norm, p), expected);
      }
    }
}

TEST(EnumerateChains, Examples) {
  EXPECT_EQ(enumerate_chains(2, 1, 2, 1), (std::vector<Chain>{{2}}));
  auto six = enumerate_chains(6, 2, 2, 2);
  std::set<Chain> got(six.begin(), six.end());
  EXPECT_EQ(got, (std::set<Chain>{{3}, {2, 2}}));
  for (int f = 1; f <= 3; ++f) EXPECT_TRUE(enumerate_chains(1, f, 2, 3).empty());
}

TEST(EnumerateChains, MatchesExhaustiveScan) {
  for (auto [p, r] : {std::pair{2, 2}, {3, 2}, {2, 3}})
    for (int f = 1; f <= r; ++f)
      for (int d = 1; d <= 30; ++d) {
        std::set<Chain> expected;
        std::function<void(Chain&)> rec = [&](Chain& c) {
          if (!c.empty() && disc_exponent(c, p, r) == d) expected.insert(c);
          if (static_cast<int>(c.size()) == f) return;
          int top = c.empty() ? d : c.back();
          for (int x = 2; x <= top; ++x) {
            c.push_back(x);
            if (disc_exponent(c, p, r) <= d) rec(c);
            c.pop_back();
          }
        };
        Chain c;
        rec(c);
        auto got = enumerate_chains(d, f, p, r);
        EXPECT_EQ(std::set<Chain>(got.begin(), got.end()), expected) << p << r << f << " d=" << d;
      }
}

TEST(TwoLevel, Examples) {
  EXPECT_EQ(two_level_of({2, 2}, 2), (TwoLevel{{{2}}}));
  EXPECT_EQ(two_level_of({3, 2}, 3), (TwoLevel{{{1, 1}}}));
  EXPECT_EQ(two_level_of({4, 2}, 2), (TwoLevel{{{1}, {1}}}));
  EXPECT_EQ(structure_poly_value(TwoLevel{}, 2, 2), 1);
  EXPECT_EQ(structure_poly_value(TwoLevel{{{2}}}, 2, 2), 0);
  EXPECT_EQ(structure_poly_value(TwoLevel{{{2}}}, 4, 2), 6);
}

TEST(TwoLevel, ProfileRoundTrip) {
  // c - 1 = k p + l with l in [1, p - 1]; outer blocks are runs of k, inner blocks runs of (k, l)
  for (int p : {2, 3, 5})
    for (int h = 1; h <= 4; ++h) {
      using Profile = std::vector<std::pair<int, int>>;
      std::function<void(Profile&)> rec = [&](Profile& prof) {
        if (static_cast<int>(prof.size()) == h) {
          Chain c;
          for (auto [k, l] : prof) c.push_back(k * p + l + 1);
          for (std::size_t i = 0; i < c.size(); ++i) {
            EXPECT_EQ((c[i] - 1) / p, prof[i].first);
            EXPECT_EQ((c[i] - 1) % p, prof[i].second);
          }
          TwoLevel expected;
          for (std::size_t i = 0; i < prof.size(); ++i) {
            if (i == 0 || prof[i].first != prof[i - 1].first) expected.blocks.push_back({});
            auto& blk = expected.blocks.back();
            if (i == 0 || prof[i] != prof[i - 1])
              blk.push_back(1);
            else
              blk.back()++;
          }
          TwoLevel got = two_level_of(c, p);
          EXPECT_EQ(got, expected);
          EXPECT_TRUE(is_admissible(got, p));
          EXPECT_EQ(got.size(), h);
          return;
        }
        // non-increasing chain: (k, l) non-increasing lexicographically
        for (int k = 2; k >= 0; --k)
          for (int l = p - 1; l >= 1; --l) {
            if (!prof.empty() && std::pair{k, l} > prof.back()) continue;
            prof.push_back({k, l});
            rec(prof);
            prof.pop_back();
          }
      };
      std::vector<std::pair<int, int>> prof;
      rec(prof);
    }
}

TEST(EConstant, WeightsRecoverUnramifiedCount) {
  // sum_f e_f over the trivial divisor is the number of unramified extensions:
  // one for r = 1 and none for r >= 2 over F_q(t)
  for (int p : {2, 3, 5}) {
    BigRational s = 0;
    for (int f = 0; f <= 1; ++f) s += e_constant(f, 1, p);
    EXPECT_EQ(s, 1);
    for (int r = 2; r <= 4; ++r) {
      BigRational t = 0;
      for (int f = 0; f <= r; ++f) t += e_constant(f, r, p);
      EXPECT_EQ(t, 0) << "p=" << p << " r=" << r;
    }
  }
}

}  // namespace
}  // namespace ascount
