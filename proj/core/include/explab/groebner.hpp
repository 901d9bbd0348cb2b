#pragma once

#include <vector>

#include "explab/weyl.hpp"

namespace explab {

/// Reduced left Groebner basis of an ideal in A_n under TermOrder
/// (Bernstein-degree refined by degrevlex). The order is degree compatible, so
/// leading monomials of Weyl products multiply like commutative monomials.
class GroebnerBasis {
 public:
  /// The zero ideal of A_n.
  static GroebnerBasis zero_ideal(int n);

  int n() const noexcept { return n_; }
  const std::vector<WeylElt>& generators() const noexcept { return generators_; }
  /// Auto-reduced, monic, sorted by leading monomial (ascending).
  const std::vector<WeylElt>& basis() const noexcept { return basis_; }

  bool is_zero() const noexcept { return basis_.empty(); }
  bool is_unit() const;
  std::vector<WeylMonomial> leading_monomials() const;
  /// Largest Bernstein degree among basis elements (0 for the zero ideal).
  int max_degree() const;

  friend GroebnerBasis buchberger(const std::vector<WeylElt>& gens);

 private:
  GroebnerBasis(int n, std::vector<WeylElt> gens, std::vector<WeylElt> basis)
      : n_(n), generators_(std::move(gens)), basis_(std::move(basis)) {}

  int n_;
  std::vector<WeylElt> generators_;
  std::vector<WeylElt> basis_;
};

/// Full left reduction: no term of the result is divisible by a leading
/// monomial of g, and p - NF(p) lies in the left ideal.
WeylElt left_normal_form(const WeylElt& p, const GroebnerBasis& g);
WeylElt left_normal_form(const WeylElt& p, const std::vector<WeylElt>& g);

/// Reduced left Groebner basis of the left ideal generated by gens. Pairs
/// whose generators involve disjoint variable sets commute and are skipped.
/// Throws "zero ideal input" if every generator is zero.
GroebnerBasis buchberger(const std::vector<WeylElt>& gens);

/// Monomials of Bernstein degree <= d outside the leading-monomial ideal,
/// ascending in TermOrder. They are a basis of (A_n / I) in filtration <= d.
std::vector<WeylMonomial> standard_monomials(const GroebnerBasis& g, int d);

/// Number of standard monomials of degree <= d.
std::size_t hilbert_function(const GroebnerBasis& g, int d);

/// Growth degree of hilbert_function (Krull dimension of the leading
/// monomial ideal's quotient). The combinatorial value is checked against
/// finite differences of exact counts. Throws "zero module" on the unit
/// ideal; 2n for the zero ideal.
int hilbert_dimension(const GroebnerBasis& g);

bool is_holonomic(const GroebnerBasis& g);

/// Equality of left ideals via termwise equality of reduced bases.
bool ideal_eq(const GroebnerBasis& a, const GroebnerBasis& b);

}  // namespace explab
