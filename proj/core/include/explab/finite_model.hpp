#pragma once

// Trace-function model of exponential objects over F_p.
//
// An object on X is a table h(x, t), x in X(F_p), t in F_p, with values in
// Q(zeta_p). Its class forgets everything pulled back from X: h and
// h + g(x) are the same class. Shifts [n] and Tate twists (m) act by the
// scalars (-1)^n and p^(-m).
//
// On finite sets f_* = f_! and f^! = f^*, and the two convolutions agree;
// the aliases below exist so call sites can say which functor they mean.

#include <cstddef>
#include <span>
#include <vector>

#include "explab/cyclotomic.hpp"

namespace explab {

class FiniteSet {
 public:
  explicit FiniteSet(std::size_t size);
  std::size_t size() const noexcept { return size_; }
  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  std::size_t size_;
};

class FiniteMap {
 public:
  FiniteMap(FiniteSet source, FiniteSet target, std::vector<std::size_t> table);

  static FiniteMap identity(FiniteSet x);
  static FiniteMap constant(FiniteSet x, FiniteSet y, std::size_t value);

  const FiniteSet& source() const noexcept { return source_; }
  const FiniteSet& target() const noexcept { return target_; }
  const std::vector<std::size_t>& table() const noexcept { return table_; }
  std::size_t operator()(std::size_t x) const { return table_[x]; }

 private:
  FiniteSet source_;
  FiniteSet target_;
  std::vector<std::size_t> table_;
};

/// A table X x F_p -> Q(zeta_p), stored row-major by x.
class ExpObject {
 public:
  ExpObject(FiniteSet base, int prime);

  const FiniteSet& base() const noexcept { return base_; }
  int prime() const noexcept { return prime_; }

  const Cyclo& at(std::size_t x, long t) const;
  Cyclo& at(std::size_t x, long t);
  const std::vector<Cyclo>& values() const noexcept { return values_; }

  friend bool operator==(const ExpObject&, const ExpObject&);

 private:
  std::size_t index(std::size_t x, long t) const;

  FiniteSet base_;
  int prime_;
  std::vector<Cyclo> values_;
};

/// h~(x, t) = h(x, t) - (1/p) sum_s h(x, s). Idempotent; the mean-zero
/// section of the quotient.
ExpObject canonical_rep(const ExpObject& h);

/// A class in the quotient. Holds an arbitrary representative; equality goes
/// through canonical_rep.
class ExpClass {
 public:
  explicit ExpClass(ExpObject rep) : rep_(std::move(rep)) {}

  const ExpObject& rep() const noexcept { return rep_; }
  ExpObject canonical() const { return canonical_rep(rep_); }
  const FiniteSet& base() const noexcept { return rep_.base(); }
  int prime() const noexcept { return rep_.prime(); }

  bool is_zero() const;

  friend bool operator==(const ExpClass& a, const ExpClass& b);

 private:
  ExpObject rep_;
};

ExpClass pullback(const FiniteMap& f, const ExpClass& h);
ExpClass pushforward(const FiniteMap& f, const ExpClass& h);
inline ExpClass pullback_shriek(const FiniteMap& f, const ExpClass& h) { return pullback(f, h); }
inline ExpClass pushforward_star(const FiniteMap& f, const ExpClass& h) { return pushforward(f, h); }

/// Additive convolution in the F_p direction: sum_{u+v=t} h1(x,u) h2(x,v).
ExpClass conv(const ExpClass& h1, const ExpClass& h2);

/// (s, t) -> [s == t] on base F_p.
ExpClass kernel_E(int prime);
/// (x, t) -> [t == 0].
ExpClass unit_1(FiniteSet x, int prime);

/// Multiplies every value by (-1)^shift * p^(-twist).
ExpClass twist_scale(const ExpClass& h, long shift, long twist);

/// Pointwise sum of classes on the same base.
ExpClass operator+(const ExpClass& a, const ExpClass& b);
ExpClass operator*(const Rational& q, const ExpClass& h);

/// The trivial bundle V = S x F_p^r with the dot pairing. Points of V are
/// indexed s * p^r + x, with x read as r base-p digits (least significant
/// first); points of V x_S V^dual as (s * p^r + x) * p^r + y.
class TrivialBundle {
 public:
  TrivialBundle(std::size_t base_points, int prime, int rank);

  /// Recovers |S| from the size of V; throws on a malformed base.
  static TrivialBundle from_total(std::size_t total, int prime, int rank);
  /// Same from the size of V x_S V^dual.
  static TrivialBundle from_pair_total(std::size_t total, int prime, int rank);

  std::size_t base_points() const noexcept { return base_points_; }
  int prime() const noexcept { return prime_; }
  int rank() const noexcept { return rank_; }
  std::size_t fiber_size() const noexcept { return fiber_; }
  std::size_t total() const noexcept { return base_points_ * fiber_; }
  std::size_t pair_total() const noexcept { return base_points_ * fiber_ * fiber_; }

  std::vector<long> digits(std::size_t fiber_index) const;
  std::size_t from_digits(std::span<const long> v) const;
  /// sum_i x_i y_i mod p, for fiber indices x, y.
  long pairing(std::size_t x, std::size_t y) const;

  /// V x_S V^dual -> V, (s, x, y) -> (s, x).
  FiniteMap first_projection() const;
  /// V x_S V^dual -> V^dual, (s, x, y) -> (s, y).
  FiniteMap second_projection() const;
  /// V x_S V^dual -> F_p, the pairing.
  FiniteMap pairing_map() const;
  /// V -> V, (s, x) -> (s, -x).
  FiniteMap negation() const;

 private:
  std::size_t base_points_;
  int prime_;
  int rank_;
  std::size_t fiber_;
};

/// h(s, x, y, t - sign*m(x, y)) on V x_S V^dual.
ExpClass shear(const ExpClass& h, int rank, int sign = 1);

/// Fourier transform on V = S x F_p^r, computed as pullback to
/// V x_S V^dual, shear, pushforward to V^dual, then the shift [r].
ExpClass ft(const ExpClass& h, int rank);

/// x -> sum_t h(x, t) psi(t, lambda). Throws "not a realization kernel" for
/// lambda = 0 mod p.
std::vector<Cyclo> real_psi(const ExpClass& h, long lambda);

/// y -> (-1)^r sum_x g(x) psi(m(x, y), lambda) on S x F_p^r.
std::vector<Cyclo> classical_ft(std::span<const Cyclo> g, long lambda, int rank, int prime);

}  // namespace explab
