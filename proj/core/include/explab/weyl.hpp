#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "explab/rational.hpp"

namespace explab {

/// x^alpha d^beta in A_n, stored as one exponent vector
/// (alpha_1..alpha_n, beta_1..beta_n).
class WeylMonomial {
 public:
  WeylMonomial() = default;
  explicit WeylMonomial(int n) : e_(2 * static_cast<std::size_t>(n), 0) {}
  WeylMonomial(std::vector<int> alpha, std::vector<int> beta);

  int n() const noexcept { return static_cast<int>(e_.size() / 2); }
  int x(int i) const { return e_[i]; }
  int d(int i) const { return e_[n() + i]; }
  int& x(int i) { return e_[i]; }
  int& d(int i) { return e_[n() + i]; }
  std::span<const int> exponents() const noexcept { return e_; }
  int& operator[](std::size_t k) { return e_[k]; }
  int operator[](std::size_t k) const { return e_[k]; }

  /// |alpha| + |beta|.
  int degree() const;
  /// Commutative divisibility of exponent vectors.
  bool divides(const WeylMonomial& other) const;
  /// Commutative quotient other / *this; requires divides(other).
  WeylMonomial quotient_of(const WeylMonomial& other) const;
  WeylMonomial lcm(const WeylMonomial& other) const;
  WeylMonomial operator*(const WeylMonomial& other) const;
  /// True when no variable index i appears in both (through x_i or d_i).
  bool variable_disjoint(const WeylMonomial& other) const;

  friend bool operator==(const WeylMonomial&, const WeylMonomial&) = default;

 private:
  std::vector<int> e_;
};

/// Bernstein-graded degrevlex with x_1 > ... > x_n > d_1 > ... > d_n.
struct TermOrder {
  bool operator()(const WeylMonomial& a, const WeylMonomial& b) const;  // a < b
};

/// Normal-ordered element of A_n over Q: every monomial means x^alpha d^beta
/// with all x's to the left. No zero coefficients are stored.
class WeylElt {
 public:
  using TermMap = std::map<WeylMonomial, Rational, TermOrder>;

  explicit WeylElt(int n = 1);

  static WeylElt constant(int n, const Rational& c);
  static WeylElt x(int n, int i);
  static WeylElt d(int n, int i);
  static WeylElt monomial(const WeylMonomial& m, const Rational& c = 1);

  int n() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coeff(const WeylMonomial& m) const;

  /// Largest monomial in the term order; requires nonzero.
  const WeylMonomial& leading_monomial() const;
  const Rational& leading_coeff() const;
  /// Max over terms of |alpha|+|beta|; throws on zero.
  int bernstein_degree() const;
  /// Sum of the terms of top Bernstein degree.
  WeylElt top_symbol() const;
  /// Max over terms of |beta|.
  int d_order() const;
  /// Scales so the leading coefficient is 1.
  WeylElt monic() const;

  void add_term(const WeylMonomial& m, const Rational& c);

  WeylElt& operator+=(const WeylElt& o);
  WeylElt& operator-=(const WeylElt& o);
  WeylElt& operator*=(const Rational& q);
  friend WeylElt operator+(WeylElt a, const WeylElt& b) { return a += b; }
  friend WeylElt operator-(WeylElt a, const WeylElt& b) { return a -= b; }
  friend WeylElt operator*(WeylElt a, const Rational& q) { return a *= q; }
  friend WeylElt operator*(const Rational& q, WeylElt a) { return a *= q; }
  WeylElt operator-() const;
  /// Weyl product (normal_mul).
  friend WeylElt operator*(const WeylElt& a, const WeylElt& b);

  friend bool operator==(const WeylElt& a, const WeylElt& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Canonical text, terms in descending order, e.g. "x^2*d^2 + 4*x*d + 2".
  /// Variables print as x, d when n = 1 and x1, d1, ... otherwise.
  std::string to_string() const;

 private:
  int n_;
  TermMap terms_;
};

/// Product using d_i x_i = x_i d_i + 1; per variable
/// d^b x^a = sum_k C(a,k) C(b,k) k! x^(a-k) d^(b-k).
WeylElt normal_mul(const WeylElt& p, const WeylElt& q);
WeylElt power(const WeylElt& p, int e);

/// Formal adjoint: the anti-automorphism x_i -> x_i, d_i -> -d_i.
WeylElt adjoint(const WeylElt& p);

/// Algebra automorphism x_i -> d_i, d_i -> -x_i on the selected (0-based)
/// variables.
WeylElt fourier_auto(const WeylElt& p, std::span<const int> vars);

/// d_var -> d_var - lambda (conjugation by e^(lambda x_var)).
WeylElt exp_twist(const WeylElt& p, const Rational& lambda, int var);

/// x_i -> -x_i, d_i -> -d_i on every variable.
WeylElt sign_flip(const WeylElt& p);

/// Algebra homomorphism given images of x_1..x_n and d_1..d_n, all in one
/// A_m (m may differ from n); the result lies in that A_m.
WeylElt substitute(const WeylElt& p, std::span<const WeylElt> x_images,
                   std::span<const WeylElt> d_images);

int bernstein_degree(const WeylElt& p);

/// Name of x_i / d_i for n variables ("x", "d" when n = 1).
std::string variable_name(int n, int i, bool is_d);

}  // namespace explab
