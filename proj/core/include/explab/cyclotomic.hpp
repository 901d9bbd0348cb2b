#pragma once

#include <string>
#include <vector>

#include "explab/rational.hpp"

namespace explab {

bool is_prime(long n);

/// An element of the cyclotomic field Q(zeta_p), p an odd prime, in the basis
/// 1, zeta, ..., zeta^(p-2). zeta^(p-1) is always rewritten as
/// -(1 + zeta + ... + zeta^(p-2)), so equality is coefficientwise.
///
/// Zero carries no coefficient storage; coeffs() still reports p-1 zeros.
class Cyclo {
 public:
  /// The zero element of Q(zeta_p). Throws unless p is a prime >= 3.
  explicit Cyclo(int prime);

  static Cyclo zero(int prime) { return Cyclo(prime); }
  static Cyclo one(int prime);
  /// zeta^k, any integer k.
  static Cyclo zeta_power(long k, int prime);
  /// Builds from p-1 coordinates.
  static Cyclo from_coeffs(int prime, std::vector<Rational> coeffs);

  int prime() const noexcept { return prime_; }
  std::vector<Rational> coeffs() const;
  Rational coeff(int i) const;

  bool is_zero() const noexcept { return c_.empty(); }
  /// True when only the constant coordinate can be nonzero.
  bool is_rational() const;

  Cyclo& operator+=(const Cyclo& other);
  Cyclo& operator-=(const Cyclo& other);
  Cyclo& operator*=(const Cyclo& other);
  Cyclo& operator*=(const Rational& q);

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(Cyclo a, const Rational& q) { return a *= q; }
  friend Cyclo operator*(const Rational& q, Cyclo a) { return a *= q; }
  Cyclo operator-() const;

  friend bool operator==(const Cyclo& a, const Cyclo& b);

  /// Multiplicative inverse; throws on zero.
  Cyclo inverse() const;

  /// e.g. "1 - z + 1/2*z^3", "0".
  std::string to_string() const;

 private:
  void check_same(const Cyclo& other) const;
  void normalize();

  int prime_;
  std::vector<Rational> c_;  // empty, or exactly p-1 entries with one nonzero
};

/// zeta^(lambda*a mod p): the additive character t -> exp(2 pi i lambda t / p).
/// Throws "degenerate character" when lambda = 0 mod p.
Cyclo psi(long a, long lambda, int prime);

/// Constant-term embedding of Q into Q(zeta_p).
Cyclo embed_rational(const Rational& q, int prime);

/// Reduces a to 0..p-1.
inline long mod_p(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

}  // namespace explab
