#include "ascount/asw.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ascount {

int asc(const PrincipalPart& part) { return part.empty() ? -1 : part.rbegin()->first; }

int conductor_exponent(const PrincipalPart& part) {
  int a = asc(part);
  return a > 0 ? a + 1 : 0;
}

ArtinSchreier::ArtinSchreier(const PrimeContext& ctx) : ctx_(&ctx) {
  const std::int64_t q = ctx.q();
  std::vector<char> image(q, 0);
  for (std::int64_t i = 0; i < q; ++i) {
    FieldElement x = ctx.element(i);
    image[ctx.sub(ctx.pow(x, ctx.p()), x).code] = 1;
  }
  FieldElement c{};
  for (std::int64_t i = 1; i < q; ++i)
    if (!image[i]) {
      c = ctx.element(i);
      break;
    }
  if (c.is_zero()) throw std::logic_error("x^p - x is surjective, impossible for a finite field");
  for (int k = 0; k < ctx.p(); ++k) reps_.push_back(ctx.scale(c, k));
  coord_.assign(q, -1);
  for (std::int64_t i = 0; i < q; ++i) {
    if (!image[i]) continue;
    for (int k = 0; k < ctx.p(); ++k) coord_[ctx.add(ctx.element(i), reps_[k]).code] = k;
  }
  for (int v : coord_)
    if (v < 0) throw std::logic_error("constant class table incomplete");
  local_place_ = Place::finite(Poly::x(&ctx));
}

void ArtinSchreier::reduce_part(const Place& place, PrincipalPart& part) const {
  const PrimeContext& ctx = *ctx_;
  const int p = ctx.p();
  ResidueField k(place, ctx_);
  const Poly pi = place.is_infinity() ? Poly::x(ctx_) : place.uniformizer();
  for (auto it = part.begin(); it != part.end();) {
    it->second = k.reduce(it->second);
    if (it->second.is_zero())
      it = part.erase(it);
    else
      ++it;
  }
  auto add_at = [&](int i, const Poly& v) {
    if (v.is_zero()) return;
    auto it = part.find(i);
    if (it == part.end()) {
      part.emplace(i, v);
      return;
    }
    it->second = it->second + v;
    if (it->second.is_zero()) part.erase(it);
  };
  while (true) {
    int top = -1;
    for (auto it = part.rbegin(); it != part.rend(); ++it)
      if (it->first % p == 0) {
        top = it->first;
        break;
      }
    if (top < 0) break;
    const int l = top / p;
    Poly g = k.pth_root(-part.at(top));
    // add g^p pi^(-pl) - g pi^(-l); g^p expanded in base pi
    Poly gp = g.pow(p);
    for (int j = 0; j < p && !gp.is_zero(); ++j) {
      Poly quo, rem;
      gp.divmod(pi, quo, rem);
      add_at(top - j, rem);
      gp = quo;
    }
    if (!gp.is_zero()) throw std::logic_error("p-th power has too many digits");
    add_at(l, -g);
  }
}

GlobalRep ArtinSchreier::reduce(const RationalFunction& z) const {
  const PrimeContext& ctx = *ctx_;
  GlobalRep rep;
  Poly poly_part, rem;
  z.num().divmod(z.den(), poly_part, rem);

  FieldElement constant = poly_part.coeff(0);
  PrincipalPart at_inf;
  for (int i = 1; i <= poly_part.degree(); ++i)
    if (!poly_part.coeff(i).is_zero()) at_inf.emplace(i, Poly::constant(ctx_, poly_part.coeff(i)));
  if (!at_inf.empty()) rep.parts.emplace(Place::infinity(ctx_), std::move(at_inf));

  if (!rem.is_zero()) {
    const Poly& den = z.den();
    for (auto& [pi, e] : factor_monic(den)) {
      Poly pe = pi.pow(e);
      Poly cofactor = den / pe;
      Poly a = (rem * inverse_mod(cofactor, pe)) % pe;
      PrincipalPart part;
      for (int j = 0; j < e && !a.is_zero(); ++j) {
        Poly quo, digit;
        a.divmod(pi, quo, digit);
        if (!digit.is_zero()) part.emplace(e - j, digit);
        a = quo;
      }
      if (!part.empty()) rep.parts.emplace(Place::finite(pi), std::move(part));
    }
  }

  for (auto it = rep.parts.begin(); it != rep.parts.end();) {
    reduce_part(it->first, it->second);
    if (it->second.empty())
      it = rep.parts.erase(it);
    else
      ++it;
  }
  rep.constant = constant_rep(constant);
  (void)ctx;
  return rep;
}

LocalRep ArtinSchreier::reduce_local(FieldElement constant,
                                     const std::map<int, FieldElement>& part) const {
  PrincipalPart pp;
  for (auto& [i, a] : part) {
    if (i < 1) throw std::invalid_argument("principal part indices must be positive");
    if (!a.is_zero()) pp.emplace(i, Poly::constant(ctx_, a));
  }
  reduce_part(local_place_, pp);
  LocalRep out;
  out.constant = constant_rep(constant);
  for (auto& [i, a] : pp) out.part.emplace(i, a.coeff(0));
  return out;
}

RationalFunction ArtinSchreier::to_rational_function(const GlobalRep& rep) const {
  const PrimeContext* ctx = ctx_;
  RationalFunction acc(Poly::constant(ctx, rep.constant));
  for (auto& [place, part] : rep.parts)
    for (auto& [i, a] : part) {
      if (place.is_infinity())
        acc = acc + RationalFunction(a.shifted(i));
      else
        acc = acc + RationalFunction(a, place.uniformizer().pow(i));
    }
  return acc;
}

GlobalRep ArtinSchreier::add(const GlobalRep& a, const GlobalRep& b) const {
  GlobalRep out;
  out.constant =
      reps_[(constant_coordinate(a.constant) + constant_coordinate(b.constant)) % ctx_->p()];
  out.parts = a.parts;
  for (auto& [place, part] : b.parts) {
    auto& dst = out.parts[place];
    for (auto& [i, v] : part) {
      auto it = dst.find(i);
      if (it == dst.end()) {
        dst.emplace(i, v);
      } else {
        it->second = it->second + v;
        if (it->second.is_zero()) dst.erase(it);
      }
    }
    if (dst.empty()) out.parts.erase(place);
  }
  return out;
}

GlobalRep ArtinSchreier::scale(const GlobalRep& a, int lambda) const {
  const int p = ctx_->p();
  lambda = ((lambda % p) + p) % p;
  GlobalRep out;
  out.constant = reps_[(constant_coordinate(a.constant) * lambda) % p];
  if (lambda == 0) return out;
  for (auto& [place, part] : a.parts) {
    PrincipalPart s;
    for (auto& [i, v] : part) s.emplace(i, v.scaled_int(lambda));
    out.parts.emplace(place, std::move(s));
  }
  return out;
}

GlobalRep ArtinSchreier::combine(const std::vector<GlobalRep>& basis,
                                 const std::vector<int>& coeffs) const {
  GlobalRep out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i] % ctx_->p() != 0) out = add(out, scale(basis[i], coeffs[i]));
  return out;
}

std::vector<GlobalRep> ArtinSchreier::line_reps(const std::vector<GlobalRep>& basis) const {
  const int p = ctx_->p();
  const int r = static_cast<int>(basis.size());
  std::vector<GlobalRep> lines;
  for (int k = 0; k < r; ++k) {
    const int tail = r - k - 1;
    std::int64_t count = ipow64(p, tail);
    for (std::int64_t idx = 0; idx < count; ++idx) {
      std::vector<int> c(r, 0);
      c[k] = 1;
      std::int64_t t = idx;
      for (int j = r - 1; j > k; --j) {
        c[j] = static_cast<int>(t % p);
        t /= p;
      }
      GlobalRep line = combine(basis, c);
      if (line.is_zero()) throw std::invalid_argument("basis is linearly dependent");
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

GlobalRep ArtinSchreier::from_local(const LocalRep& rep) const {
  GlobalRep out;
  out.constant = rep.constant;
  PrincipalPart pp;
  for (auto& [i, a] : rep.part)
    if (!a.is_zero()) pp.emplace(i, Poly::constant(ctx_, a));
  if (!pp.empty()) out.parts.emplace(local_place_, std::move(pp));
  return out;
}

LocalRep ArtinSchreier::to_local(const GlobalRep& rep) const {
  LocalRep out;
  out.constant = rep.constant;
  for (auto& [place, part] : rep.parts) {
    if (!(place == local_place_)) throw std::invalid_argument("representative is not local");
    for (auto& [i, a] : part) out.part.emplace(i, a.coeff(0));
  }
  return out;
}

std::vector<int> chain_from_exponents(std::vector<int> exponents, int p, int r) {
  std::int64_t expected = (ipow64(p, r) - 1) / (p - 1);
  if (static_cast<std::int64_t>(exponents.size()) != expected)
    throw std::invalid_argument("wrong number of line exponents");
  std::sort(exponents.begin(), exponents.end(), std::greater<>());
  std::vector<int> chain;
  std::size_t pos = 0;
  for (int i = 1; i <= r; ++i) {
    std::int64_t block = ipow64(p, r - i);
    int c = exponents[pos];
    for (std::int64_t k = 0; k < block; ++k, ++pos)
      if (exponents[pos] != c)
        throw std::logic_error("line exponents do not come from a ramification chain");
    if (c > 0) chain.push_back(c);
  }
  return chain;
}

std::vector<int> chain_at_place(const std::vector<GlobalRep>& lines, const Place& place, int p,
                                int r) {
  std::vector<int> e;
  e.reserve(lines.size());
  for (auto& l : lines) {
    auto it = l.parts.find(place);
    e.push_back(it == l.parts.end() ? 0 : conductor_exponent(it->second));
  }
  return chain_from_exponents(std::move(e), p, r);
}

int disc_exponent_via_lines(const std::vector<GlobalRep>& lines, const Place& place, int p) {
  int s = 0;
  for (auto& l : lines) {
    auto it = l.parts.find(place);
    if (it != l.parts.end()) s += conductor_exponent(it->second);
  }
  return (p - 1) * s;
}

}  // namespace ascount
