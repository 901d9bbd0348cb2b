#include "explab/weyl.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "explab/error.hpp"

namespace explab {

WeylMonomial::WeylMonomial(std::vector<int> alpha, std::vector<int> beta) {
  if (alpha.size() != beta.size()) throw Error("monomial exponent vectors differ in length");
  e_ = std::move(alpha);
  e_.insert(e_.end(), beta.begin(), beta.end());
  for (int v : e_) {
    if (v < 0) throw Error("negative exponent");
  }
}

int WeylMonomial::degree() const {
  int s = 0;
  for (int v : e_) s += v;
  return s;
}

bool WeylMonomial::divides(const WeylMonomial& other) const {
  for (std::size_t k = 0; k < e_.size(); ++k) {
    if (e_[k] > other.e_[k]) return false;
  }
  return true;
}

WeylMonomial WeylMonomial::quotient_of(const WeylMonomial& other) const {
  WeylMonomial q = other;
  for (std::size_t k = 0; k < e_.size(); ++k) q.e_[k] -= e_[k];
  return q;
}

WeylMonomial WeylMonomial::lcm(const WeylMonomial& other) const {
  WeylMonomial r = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = std::max(e_[k], other.e_[k]);
  return r;
}

WeylMonomial WeylMonomial::operator*(const WeylMonomial& other) const {
  WeylMonomial r = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] += other.e_[k];
  return r;
}

bool WeylMonomial::variable_disjoint(const WeylMonomial& other) const {
  const int nv = n();
  for (int i = 0; i < nv; ++i) {
    const bool mine = x(i) > 0 || d(i) > 0;
    const bool theirs = other.x(i) > 0 || other.d(i) > 0;
    if (mine && theirs) return false;
  }
  return true;
}

bool TermOrder::operator()(const WeylMonomial& a, const WeylMonomial& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  const auto ea = a.exponents();
  const auto eb = b.exponents();
  for (std::size_t k = ea.size(); k-- > 0;) {
    if (ea[k] != eb[k]) return ea[k] > eb[k];
  }
  return false;
}

WeylElt::WeylElt(int n) : n_(n) {
  if (n < 1) throw Error("Weyl algebra needs at least one variable");
}

WeylElt WeylElt::constant(int n, const Rational& c) {
  WeylElt r(n);
  r.add_term(WeylMonomial(n), c);
  return r;
}

WeylElt WeylElt::x(int n, int i) {
  if (i < 0 || i >= n) throw Error("variable index out of range");
  WeylMonomial m(n);
  m.x(i) = 1;
  return monomial(m);
}

WeylElt WeylElt::d(int n, int i) {
  if (i < 0 || i >= n) throw Error("variable index out of range");
  WeylMonomial m(n);
  m.d(i) = 1;
  return monomial(m);
}

WeylElt WeylElt::monomial(const WeylMonomial& m, const Rational& c) {
  WeylElt r(m.n());
  r.add_term(m, c);
  return r;
}

Rational WeylElt::coeff(const WeylMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const WeylMonomial& WeylElt::leading_monomial() const {
  if (terms_.empty()) throw Error("leading monomial of zero");
  return terms_.rbegin()->first;
}

const Rational& WeylElt::leading_coeff() const {
  if (terms_.empty()) throw Error("leading coefficient of zero");
  return terms_.rbegin()->second;
}

int WeylElt::bernstein_degree() const {
  if (terms_.empty()) throw Error("Bernstein degree of zero");
  return terms_.rbegin()->first.degree();
}

WeylElt WeylElt::top_symbol() const {
  WeylElt r(n_);
  if (terms_.empty()) return r;
  const int top = bernstein_degree();
  for (const auto& [m, c] : terms_) {
    if (m.degree() == top) r.terms_.emplace(m, c);
  }
  return r;
}

int WeylElt::d_order() const {
  int o = 0;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int i = 0; i < n_; ++i) s += m.d(i);
    o = std::max(o, s);
  }
  return o;
}

WeylElt WeylElt::monic() const {
  if (terms_.empty()) return *this;
  return *this * (1 / leading_coeff());
}

void WeylElt::add_term(const WeylMonomial& m, const Rational& c) {
  if (m.n() != n_) throw Error("variable count mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

WeylElt& WeylElt::operator+=(const WeylElt& o) {
  if (o.n_ != n_) throw Error("variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

WeylElt& WeylElt::operator-=(const WeylElt& o) {
  if (o.n_ != n_) throw Error("variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

WeylElt& WeylElt::operator*=(const Rational& q) {
  if (sgn(q) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= q;
  return *this;
}

WeylElt WeylElt::operator-() const { return *this * Rational(-1); }

namespace {

// Accumulates c * x^alpha (d^beta x^gamma) d^delta into out.
void mul_monomials(const WeylMonomial& a, const WeylMonomial& b, const Rational& c,
                   WeylElt& out) {
  const int n = a.n();
  // Per-variable expansions of d_i^beta_i x_i^gamma_i.
  std::vector<std::vector<std::pair<int, Integer>>> choices(n);
  for (int i = 0; i < n; ++i) {
    const int bi = a.d(i);
    const int gi = b.x(i);
    for (int k = 0; k <= std::min(bi, gi); ++k) {
      choices[i].emplace_back(k, binomial(gi, k) * binomial(bi, k) * factorial(k));
    }
  }
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    WeylMonomial m(n);
    Rational coeff = c;
    for (int i = 0; i < n; ++i) {
      const auto& [k, w] = choices[i][pick[i]];
      m.x(i) = a.x(i) + b.x(i) - k;
      m.d(i) = a.d(i) + b.d(i) - k;
      coeff *= w;
    }
    out.add_term(m, coeff);
    int i = 0;
    while (i < n && ++pick[i] == choices[i].size()) {
      pick[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
}

}  // namespace

WeylElt operator*(const WeylElt& a, const WeylElt& b) {
  if (a.n_ != b.n_) throw Error("variable count mismatch");
  WeylElt out(a.n_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) mul_monomials(ma, mb, ca * cb, out);
  }
  return out;
}

WeylElt normal_mul(const WeylElt& p, const WeylElt& q) { return p * q; }

WeylElt power(const WeylElt& p, int e) {
  if (e < 0) throw Error("negative power");
  WeylElt r = WeylElt::constant(p.n(), 1);
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

WeylElt adjoint(const WeylElt& p) {
  const int n = p.n();
  WeylElt out(n);
  for (const auto& [m, c] : p.terms()) {
    // (x^a d^b)^t = (-1)^|b| d^b x^a
    WeylMonomial xs(n), ds(n);
    int sign_exp = 0;
    for (int i = 0; i < n; ++i) {
      xs.x(i) = m.x(i);
      ds.d(i) = m.d(i);
      sign_exp += m.d(i);
    }
    const Rational s = sign_exp % 2 == 0 ? c : Rational(-c);
    out += WeylElt::monomial(ds, s) * WeylElt::monomial(xs);
  }
  return out;
}

WeylElt substitute(const WeylElt& p, std::span<const WeylElt> x_images,
                   std::span<const WeylElt> d_images) {
  const int n = p.n();
  if (x_images.size() != static_cast<std::size_t>(n) || d_images.size() != static_cast<std::size_t>(n)) {
    throw Error("substitution needs one image per generator");
  }
  const int target = x_images.front().n();
  WeylElt out(target);
  for (const auto& [m, c] : p.terms()) {
    WeylElt t = WeylElt::constant(target, c);
    for (int i = 0; i < n; ++i) {
      if (m.x(i) > 0) t = t * power(x_images[i], m.x(i));
    }
    for (int i = 0; i < n; ++i) {
      if (m.d(i) > 0) t = t * power(d_images[i], m.d(i));
    }
    out += t;
  }
  return out;
}

WeylElt fourier_auto(const WeylElt& p, std::span<const int> vars) {
  const int n = p.n();
  std::vector<WeylElt> xi, di;
  for (int i = 0; i < n; ++i) {
    xi.push_back(WeylElt::x(n, i));
    di.push_back(WeylElt::d(n, i));
  }
  for (int v : vars) {
    if (v < 0 || v >= n) throw Error("variable index out of range");
    xi[v] = WeylElt::d(n, v);
    di[v] = -WeylElt::x(n, v);
  }
  return substitute(p, xi, di);
}

WeylElt exp_twist(const WeylElt& p, const Rational& lambda, int var) {
  const int n = p.n();
  if (var < 0 || var >= n) throw Error("variable index out of range");
  std::vector<WeylElt> xi, di;
  for (int i = 0; i < n; ++i) {
    xi.push_back(WeylElt::x(n, i));
    di.push_back(WeylElt::d(n, i));
  }
  di[var] = WeylElt::d(n, var) - WeylElt::constant(n, lambda);
  return substitute(p, xi, di);
}

WeylElt sign_flip(const WeylElt& p) {
  WeylElt out(p.n());
  for (const auto& [m, c] : p.terms()) {
    out.add_term(m, m.degree() % 2 == 0 ? c : Rational(-c));
  }
  return out;
}

int bernstein_degree(const WeylElt& p) { return p.bernstein_degree(); }

std::string variable_name(int n, int i, bool is_d) {
  std::string s = is_d ? "d" : "x";
  if (n > 1) s += std::to_string(i + 1);
  return s;
}

std::string WeylElt::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (int i = 0; i < n_; ++i) {
      if (m.x(i) == 0) continue;
      factors.push_back(variable_name(n_, i, false) + (m.x(i) > 1 ? "^" + std::to_string(m.x(i)) : ""));
    }
    for (int i = 0; i < n_; ++i) {
      if (m.d(i) == 0) continue;
      factors.push_back(variable_name(n_, i, true) + (m.d(i) > 1 ? "^" + std::to_string(m.d(i)) : ""));
    }
    if (factors.empty()) {
      out << explab::to_string(mag);
      continue;
    }
    if (mag != 1) out << explab::to_string(mag) << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) out << "*";
      out << factors[k];
    }
  }
  return out.str();
}

}  // namespace explab
