#include "explab/cyclotomic.hpp"

#include <sstream>
#include <utility>

#include "explab/error.hpp"

namespace explab {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Cyclo::Cyclo(int prime) : prime_(prime) {
  if (prime < 3 || !is_prime(prime)) {
    throw Error("not an odd prime: " + std::to_string(prime));
  }
}

Cyclo Cyclo::one(int prime) { return embed_rational(1, prime); }

Cyclo Cyclo::zeta_power(long k, int prime) {
  Cyclo z(prime);
  const long e = mod_p(k, prime);
  z.c_.assign(prime - 1, Rational(0));
  if (e == prime - 1) {
    for (auto& x : z.c_) x = -1;
  } else {
    z.c_[e] = 1;
  }
  return z;
}

Cyclo Cyclo::from_coeffs(int prime, std::vector<Rational> coeffs) {
  Cyclo z(prime);
  if (coeffs.size() != static_cast<std::size_t>(prime - 1)) {
    throw Error("cyclotomic element needs exactly p-1 coefficients");
  }
  z.c_ = std::move(coeffs);
  for (auto& q : z.c_) q.canonicalize();
  z.normalize();
  return z;
}

std::vector<Rational> Cyclo::coeffs() const {
  if (c_.empty()) return std::vector<Rational>(prime_ - 1, Rational(0));
  return c_;
}

Rational Cyclo::coeff(int i) const {
  if (i < 0 || i >= prime_ - 1) throw Error("cyclotomic coordinate out of range");
  return c_.empty() ? Rational(0) : c_[i];
}

bool Cyclo::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (sgn(c_[i]) != 0) return false;
  }
  return true;
}

void Cyclo::check_same(const Cyclo& other) const {
  if (prime_ != other.prime_) throw Error("prime mismatch");
}

void Cyclo::normalize() {
  for (const auto& x : c_) {
    if (sgn(x) != 0) return;
  }
  c_.clear();
}

Cyclo& Cyclo::operator+=(const Cyclo& other) {
  check_same(other);
  if (other.c_.empty()) return *this;
  if (c_.empty()) {
    c_ = other.c_;
    return *this;
  }
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(other.c_[i]) != 0) c_[i] += other.c_[i];
  }
  normalize();
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& other) {
  check_same(other);
  if (other.c_.empty()) return *this;
  if (c_.empty()) c_.assign(prime_ - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(other.c_[i]) != 0) c_[i] -= other.c_[i];
  }
  normalize();
  return *this;
}

Cyclo& Cyclo::operator*=(const Rational& q) {
  if (c_.empty()) return *this;
  if (sgn(q) == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) {
    if (sgn(x) != 0) x *= q;
  }
  return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& other) {
  *this = *this * other;
  return *this;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  a.check_same(b);
  const int p = a.prime_;
  if (a.c_.empty() || b.c_.empty()) return Cyclo(p);
  if (a.is_rational()) return b * a.c_[0];
  if (b.is_rational()) return a * b.c_[0];
  // Cyclic product modulo z^p - 1, then fold z^(p-1).
  std::vector<Rational> full(p, Rational(0));
  for (int i = 0; i < p - 1; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (int j = 0; j < p - 1; ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      full[(i + j) % p] += a.c_[i] * b.c_[j];
    }
  }
  Cyclo r(p);
  r.c_.resize(p - 1);
  for (int i = 0; i < p - 1; ++i) r.c_[i] = full[i] - full[p - 1];
  r.normalize();
  return r;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  a.check_same(b);
  return a.c_ == b.c_;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw Error("inverse of zero");
  const int n = prime_ - 1;
  if (is_rational()) return embed_rational(1 / c_[0], prime_);
  // Solve (this * y) = 1: columns of the multiplication matrix are this*zeta^j.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1, Rational(0)));
  for (int j = 0; j < n; ++j) {
    const auto col = (*this * zeta_power(j, prime_)).coeffs();
    for (int i = 0; i < n; ++i) m[i][j] = col[i];
  }
  m[0][n] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) throw Error("singular multiplication matrix");
    std::swap(m[piv], m[col]);
    const Rational inv = 1 / m[col][col];
    for (int k = col; k <= n; ++k) m[col][k] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col];
      for (int k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  std::vector<Rational> y(n);
  for (int i = 0; i < n; ++i) y[i] = m[i][n];
  return from_coeffs(prime_, std::move(y));
}

std::string Cyclo::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < prime_ - 1; ++i) {
    const Rational& q = c_[i];
    if (sgn(q) == 0) continue;
    Rational mag = abs(q);
    if (first) {
      if (sgn(q) < 0) out << "-";
    } else {
      out << (sgn(q) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << explab::to_string(mag);
      continue;
    }
    if (mag != 1) out << explab::to_string(mag) << "*";
    out << "z";
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

Cyclo psi(long a, long lambda, int prime) {
  if (mod_p(lambda, prime) == 0) throw Error("degenerate character");
  return Cyclo::zeta_power(mod_p(mod_p(a, prime) * mod_p(lambda, prime), prime), prime);
}

Cyclo embed_rational(const Rational& q, int prime) {
  Cyclo z(prime);
  if (sgn(q) == 0) return z;
  std::vector<Rational> c(prime - 1, Rational(0));
  c[0] = q;
  return Cyclo::from_coeffs(prime, std::move(c));
}

}  // namespace explab
