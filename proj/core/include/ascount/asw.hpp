#ifndef ASCOUNT_ASW_HPP_
#define ASCOUNT_ASW_HPP_

#include <map>
#include <vector>

#include "ascount/gf.hpp"

namespace ascount {

// index i -> coefficient of pi^(-i), an element of the residue field
using PrincipalPart = std::map<int, Poly>;

struct GlobalRep {
  FieldElement constant;  // one of constant_reps()
  std::map<Place, PrincipalPart> parts;
  bool operator==(const GlobalRep& o) const {
    return constant == o.constant && parts == o.parts;
  }
  bool is_zero() const { return constant.is_zero() && parts.empty(); }
};

// Representative in F_q((t)); coefficients live in F_q.
struct LocalRep {
  FieldElement constant;
  std::map<int, FieldElement> part;
  bool operator==(const LocalRep& o) const = default;
};

int asc(const PrincipalPart& part);  // -1 when empty
int conductor_exponent(const PrincipalPart& part);

class ArtinSchreier {
 public:
  explicit ArtinSchreier(const PrimeContext& ctx);

  const PrimeContext& context() const { return *ctx_; }
  // p elements of F_q, pairwise distinct modulo {x^p - x}, starting with 0
  const std::vector<FieldElement>& constant_reps() const { return reps_; }
  int constant_coordinate(FieldElement x) const { return coord_[x.code]; }
  FieldElement constant_rep(FieldElement x) const { return reps_[coord_[x.code]]; }

  GlobalRep reduce(const RationalFunction& z) const;
  LocalRep reduce_local(FieldElement constant, const std::map<int, FieldElement>& part) const;
  // reduces a principal part in place at the given place
  void reduce_part(const Place& place, PrincipalPart& part) const;

  RationalFunction to_rational_function(const GlobalRep& rep) const;

  GlobalRep add(const GlobalRep& a, const GlobalRep& b) const;
  GlobalRep scale(const GlobalRep& a, int lambda) const;
  GlobalRep combine(const std::vector<GlobalRep>& basis, const std::vector<int>& coeffs) const;

  // (p^r - 1)/(p - 1) generators u_k + sum_{j>k} lambda_j u_j of the lines
  std::vector<GlobalRep> line_reps(const std::vector<GlobalRep>& basis) const;

  // local place used for F_q((t)) computations
  const Place& local_place() const { return local_place_; }
  GlobalRep from_local(const LocalRep& rep) const;
  LocalRep to_local(const GlobalRep& rep) const;

 private:
  const PrimeContext* ctx_;
  std::vector<FieldElement> reps_;
  std::vector<int> coord_;
  Place local_place_;
};

// ramification chain at a place recovered from the line conductor exponents;
// only the positive entries are returned
std::vector<int> chain_at_place(const std::vector<GlobalRep>& lines, const Place& place, int p,
                                int r);
std::vector<int> chain_from_exponents(std::vector<int> exponents, int p, int r);
int disc_exponent_via_lines(const std::vector<GlobalRep>& lines, const Place& place, int p);

}  // namespace ascount

#endif
