#include "ascount/count.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "ascount/parallel.hpp"

namespace ascount {

namespace {

struct PhiKey {
  int p, r, f;
  BigInt norm;
  bool operator<(const PhiKey& o) const {
    return std::tie(p, r, f, norm) < std::tie(o.p, o.r, o.f, o.norm);
  }
};

std::mutex phi_mutex;
std::map<PhiKey, std::vector<BigInt>> phi_cache;

}  // namespace

std::vector<BigInt> phi_f_local_table(int f, int max_n, const BigInt& norm,
                                      const PrimeContext& ctx) {
  const int p = ctx.p(), r = ctx.r();
  if (f < 0 || f > r) throw std::invalid_argument("f must lie in [0, r]");
  if (max_n < 0) throw std::invalid_argument("max_n must be >= 0");
  PhiKey key{p, r, f, norm};
  {
    std::lock_guard lock(phi_mutex);
    auto it = phi_cache.find(key);
    if (it != phi_cache.end() && static_cast<int>(it->second.size()) > max_n)
      return std::vector<BigInt>(it->second.begin(), it->second.begin() + max_n + 1);
  }
  std::vector<BigInt> table(max_n + 1, BigInt(0));
  table[0] = 1;
  if (f >= 1) {
    std::vector<BigInt> binom(f + 1);
    for (int h = 0; h <= f; ++h) binom[h] = gaussian_binomial(f, h, p);
    auto chains = enumerate_chains_upto(max_n, f, p, r);
    for (int d = 1; d <= max_n; ++d)
      for (auto& C : chains[d]) {
        BigInt z = zhat_chain(C, norm, p);
        if (z == 0) continue;
        table[d] += binom[C.size()] * gamma(composition_of(C), p) * z;
      }
  }
  std::lock_guard lock(phi_mutex);
  auto& slot = phi_cache[key];
  if (slot.size() < table.size()) slot = table;
  return table;
}

BigInt phi_f_local(int f, int n, const BigInt& norm, const PrimeContext& ctx) {
  if (n < 0) throw std::invalid_argument("exponent must be >= 0");
  return phi_f_local_table(f, n, norm, ctx)[n];
}

BigInt phi_f_divisor(int f, const Divisor& D, const PrimeContext& ctx) {
  BigInt v = 1;
  for (auto& [P, e] : D) {
    v *= phi_f_local(f, e, ipow(BigInt(ctx.q()), P.degree()), ctx);
    if (v == 0) break;
  }
  return v;
}

static BigInt checked_count(const BigRational& s) {
  BigInt z = to_integer(s);
  if (z < 0) throw std::logic_error("extension count is negative: " + z.str());
  return z;
}

BigInt z_count_local(int exponent, const PrimeContext& ctx) {
  BigRational s = 0;
  for (int f = 0; f <= ctx.r(); ++f)
    s += e_constant(f, ctx.r(), ctx.p()) * BigRational(phi_f_local(f, exponent, ctx.q(), ctx));
  return checked_count(s);
}

BigInt z_count_divisor(const Divisor& D, const PrimeContext& ctx) {
  BigRational s = 0;
  for (int f = 0; f <= ctx.r(); ++f)
    s += e_constant(f, ctx.r(), ctx.p()) * BigRational(phi_f_divisor(f, D, ctx));
  return checked_count(s);
}

std::vector<Divisor> effective_divisors(const PrimeContext& ctx, int m) {
  std::vector<Place> places;
  for (int d = 1; d <= m; ++d)
    for (auto& P : places_of_degree(ctx, d)) places.push_back(P);
  std::vector<Divisor> out;
  Divisor cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (i == places.size()) return;
    const int d = places[i].degree();
    rec(i + 1, left);
    for (int e = 1; e * d <= left; ++e) {
      cur[places[i]] = e;
      rec(i + 1, left - e * d);
      cur.erase(places[i]);
    }
  };
  rec(0, m);
  return out;
}

BigInt z_total_by_degree(int m, const PrimeContext& ctx) {
  if (m < 0) throw std::invalid_argument("degree must be >= 0");
  BigInt total = 0;
  for (auto& D : effective_divisors(ctx, m)) total += z_count_divisor(D, ctx);
  return total;
}

// ---------------------------------------------------------------- oracles

namespace {

struct Coord {
  int place, index, digit;
  auto operator<=>(const Coord&) const = default;
};
using SparseVec = std::vector<std::pair<Coord, int>>;

struct Candidate {
  GlobalRep rep;
  SparseVec vec;
  int value_at(const Coord& c) const {
    auto it = std::lower_bound(vec.begin(), vec.end(), c,
                               [](const auto& a, const Coord& b) { return a.first < b; });
    return (it != vec.end() && it->first == c) ? it->second : 0;
  }
};

constexpr std::size_t kMaxCandidates = 4'000'000;

class SubspaceOracle {
 public:
  SubspaceOracle(const PrimeContext& ctx, std::vector<Place> places, int max_total)
      : ctx_(ctx), asw_(ctx), places_(std::move(places)), max_total_(max_total) {
    for (std::size_t i = 0; i < places_.size(); ++i) place_index_[places_[i]] = static_cast<int>(i);
  }

  std::map<int, BigInt> run(int workers) {
    build_candidates();
    const int n = static_cast<int>(cands_.size());
    std::vector<std::map<int, BigInt>> partial(n);
    parallel_for(n, workers, [&](int i) {
      std::vector<int> chosen{i};
      extend(chosen, partial[i]);
    });
    std::map<int, BigInt> out;
    for (auto& m : partial)
      for (auto& [k, v] : m) out[k] += v;
    return out;
  }

 private:
  // every nonzero vector of a counted subspace satisfies this bound
  int vector_budget() const {
    const int p = ctx_.p(), r = ctx_.r();
    return max_total_ / static_cast<int>((p - 1) * ipow64(p, r - 1));
  }

  std::vector<std::pair<int, PrincipalPart>> parts_at(const Place& P, int budget) const {
    std::vector<std::pair<int, PrincipalPart>> out;
    const int p = ctx_.p(), d = P.degree();
    ResidueField k(P, &ctx_);
    const std::int64_t size = k.size();
    for (int c = 2; c * d <= budget; ++c) {
      if ((c - 1) % p == 0) continue;
      std::vector<int> idx;
      for (int i = 1; i < c - 1; ++i)
        if (i % p) idx.push_back(i);
      std::vector<std::int64_t> digit(idx.size(), 0);
      for (std::int64_t lead = 1; lead < size; ++lead) {
        std::fill(digit.begin(), digit.end(), 0);
        while (true) {
          PrincipalPart part;
          part.emplace(c - 1, k.element(lead));
          for (std::size_t t = 0; t < idx.size(); ++t)
            if (digit[t]) part.emplace(idx[t], k.element(digit[t]));
          out.emplace_back(c * d, std::move(part));
          if (out.size() > kMaxCandidates) throw std::runtime_error("oracle search space too large");
          std::size_t t = 0;
          while (t < digit.size() && ++digit[t] == size) digit[t++] = 0;
          if (t == digit.size()) break;
        }
      }
    }
    return out;
  }

  SparseVec coordinates(const GlobalRep& rep) const {
    SparseVec v;
    int cc = asw_.constant_coordinate(rep.constant);
    if (cc) v.push_back({Coord{-1, 0, 0}, cc});
    const int n = ctx_.n();
    for (auto& [P, part] : rep.parts) {
      int pi = place_index_.at(P);
      for (auto& [i, a] : part)
        for (int j = 0; j <= a.degree(); ++j) {
          auto c = ctx_.coords(a.coeff(j));
          for (int t = 0; t < n; ++t)
            if (c[t]) v.push_back({Coord{pi, i, j * n + t}, c[t]});
        }
    }
    std::sort(v.begin(), v.end());
    return v;
  }

  void build_candidates() {
    const int budget = vector_budget();
    std::vector<std::vector<std::pair<int, PrincipalPart>>> options;
    for (auto& P : places_) options.push_back(parts_at(P, budget));
    std::map<Place, PrincipalPart> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == places_.size()) {
        for (int lam = 0; lam < ctx_.p(); ++lam) {
          GlobalRep rep;
          rep.constant = asw_.constant_reps()[lam];
          rep.parts = cur;
          if (rep.is_zero()) continue;
          SparseVec v = coordinates(rep);
          if (v.front().second != 1) continue;
          cands_.push_back(Candidate{std::move(rep), std::move(v)});
          if (cands_.size() > kMaxCandidates) throw std::runtime_error("oracle search space too large");
        }
        return;
      }
      rec(i + 1, left);
      for (auto& [w, part] : options[i]) {
        if (w > left) continue;
        cur[places_[i]] = part;
        rec(i + 1, left - w);
        cur.erase(places_[i]);
      }
    };
    rec(0, budget);
    std::stable_sort(cands_.begin(), cands_.end(), [](const Candidate& a, const Candidate& b) {
      return a.vec.front().first < b.vec.front().first;
    });
  }

  void extend(std::vector<int>& chosen, std::map<int, BigInt>& tally) const {
    if (static_cast<int>(chosen.size()) == ctx_.r()) {
      evaluate(chosen, tally);
      return;
    }
    const Candidate& last = cands_[chosen.back()];
    for (std::size_t j = chosen.back() + 1; j < cands_.size(); ++j) {
      const Candidate& v = cands_[j];
      if (!(last.vec.front().first < v.vec.front().first)) continue;
      bool ok = true;
      for (int c : chosen) {
        if (v.value_at(cands_[c].vec.front().first) != 0 ||
            cands_[c].value_at(v.vec.front().first) != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(static_cast<int>(j));
      extend(chosen, tally);
      chosen.pop_back();
    }
  }

  void evaluate(const std::vector<int>& chosen, std::map<int, BigInt>& tally) const {
    const int p = ctx_.p(), r = ctx_.r();
    std::vector<GlobalRep> basis;
    for (int c : chosen) basis.push_back(cands_[c].rep);
    auto lines = asw_.line_reps(basis);
    std::map<Place, int> support;
    for (auto& l : lines)
      for (auto& [P, part] : l.parts) support[P] = 1;
    int total = 0;
    for (auto& [P, unused] : support) {
      int via_lines = disc_exponent_via_lines(lines, P, p);
      Chain chain = chain_at_place(lines, P, p, r);
      if (disc_exponent(chain, p, r) != via_lines)
        throw std::logic_error("chain and line discriminants disagree at " + P.format());
      total += via_lines * P.degree();
      if (total > max_total_) return;
    }
    tally[total] += 1;
  }

  const PrimeContext& ctx_;
  ArtinSchreier asw_;
  std::vector<Place> places_;
  std::map<Place, int> place_index_;
  int max_total_;
  std::vector<Candidate> cands_;
};

}  // namespace

std::map<int, BigInt> oracle_local(const PrimeContext& ctx, int max_exponent, int workers) {
  if (max_exponent < 0) throw std::invalid_argument("max_exponent must be >= 0");
  ArtinSchreier asw(ctx);
  SubspaceOracle o(ctx, {asw.local_place()}, max_exponent);
  return o.run(workers);
}

std::map<int, BigInt> oracle_global(const PrimeContext& ctx, int max_degree, int workers) {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
  const int p = ctx.p(), r = ctx.r();
  const int budget = max_degree / static_cast<int>((p - 1) * ipow64(p, r - 1));
  std::vector<Place> places;
  for (int d = 1; 2 * d <= budget; ++d)
    for (auto& P : places_of_degree(ctx, d)) places.push_back(P);
  SubspaceOracle o(ctx, places, max_degree);
  return o.run(workers);
}

}  // namespace ascount
