#include "explab/finite_model.hpp"

#include <utility>

#include "explab/error.hpp"

namespace explab {

FiniteSet::FiniteSet(std::size_t size) : size_(size) {
  if (size == 0) throw Error("finite set must be nonempty");
}

FiniteMap::FiniteMap(FiniteSet source, FiniteSet target, std::vector<std::size_t> table)
    : source_(source), target_(target), table_(std::move(table)) {
  if (table_.size() != source_.size()) throw Error("map table size differs from source size");
  for (auto y : table_) {
    if (y >= target_.size()) throw Error("map value outside target");
  }
}

FiniteMap FiniteMap::identity(FiniteSet x) {
  std::vector<std::size_t> t(x.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
  return FiniteMap(x, x, std::move(t));
}

FiniteMap FiniteMap::constant(FiniteSet x, FiniteSet y, std::size_t value) {
  return FiniteMap(x, y, std::vector<std::size_t>(x.size(), value));
}

ExpObject::ExpObject(FiniteSet base, int prime)
    : base_(base), prime_(prime), values_(base.size() * static_cast<std::size_t>(prime), Cyclo(prime)) {}

std::size_t ExpObject::index(std::size_t x, long t) const {
  if (x >= base_.size()) throw Error("base point out of range");
  return x * static_cast<std::size_t>(prime_) + static_cast<std::size_t>(mod_p(t, prime_));
}

const Cyclo& ExpObject::at(std::size_t x, long t) const { return values_[index(x, t)]; }
Cyclo& ExpObject::at(std::size_t x, long t) { return values_[index(x, t)]; }

bool operator==(const ExpObject& a, const ExpObject& b) {
  if (a.prime_ != b.prime_) throw Error("prime mismatch");
  return a.base_ == b.base_ && a.values_ == b.values_;
}

ExpObject canonical_rep(const ExpObject& h) {
  const int p = h.prime();
  ExpObject out = h;
  const Rational inv_p(1, p);
  for (std::size_t x = 0; x < h.base().size(); ++x) {
    Cyclo mean(p);
    for (long t = 0; t < p; ++t) mean += h.at(x, t);
    if (mean.is_zero()) continue;
    mean *= inv_p;
    for (long t = 0; t < p; ++t) out.at(x, t) -= mean;
  }
  return out;
}

bool ExpClass::is_zero() const {
  const ExpObject c = canonical();
  for (const auto& v : c.values()) {
    if (!v.is_zero()) return false;
  }
  return true;
}

bool operator==(const ExpClass& a, const ExpClass& b) {
  if (a.prime() != b.prime()) throw Error("prime mismatch");
  if (a.base() != b.base()) return false;
  return canonical_rep(a.rep_) == canonical_rep(b.rep_);
}

namespace {

void require_same_prime(const ExpClass& a, const ExpClass& b) {
  if (a.prime() != b.prime()) throw Error("prime mismatch");
}

}  // namespace

ExpClass pullback(const FiniteMap& f, const ExpClass& h) {
  if (f.target() != h.base()) throw Error("pullback: map target differs from class base");
  const int p = h.prime();
  ExpObject out(f.source(), p);
  for (std::size_t x = 0; x < f.source().size(); ++x) {
    for (long t = 0; t < p; ++t) out.at(x, t) = h.rep().at(f(x), t);
  }
  return ExpClass(std::move(out));
}

ExpClass pushforward(const FiniteMap& f, const ExpClass& h) {
  if (f.source() != h.base()) throw Error("pushforward: map source differs from class base");
  const int p = h.prime();
  ExpObject out(f.target(), p);
  for (std::size_t x = 0; x < f.source().size(); ++x) {
    for (long t = 0; t < p; ++t) {
      const Cyclo& v = h.rep().at(x, t);
      if (!v.is_zero()) out.at(f(x), t) += v;
    }
  }
  return ExpClass(std::move(out));
}

ExpClass conv(const ExpClass& h1, const ExpClass& h2) {
  require_same_prime(h1, h2);
  if (h1.base() != h2.base()) throw Error("convolution of classes on different bases");
  const int p = h1.prime();
  ExpObject out(h1.base(), p);
  for (std::size_t x = 0; x < h1.base().size(); ++x) {
    for (long u = 0; u < p; ++u) {
      const Cyclo& a = h1.rep().at(x, u);
      if (a.is_zero()) continue;
      for (long v = 0; v < p; ++v) {
        const Cyclo& b = h2.rep().at(x, v);
        if (b.is_zero()) continue;
        out.at(x, u + v) += a * b;
      }
    }
  }
  return ExpClass(std::move(out));
}

ExpClass kernel_E(int prime) {
  ExpObject out(FiniteSet(static_cast<std::size_t>(prime)), prime);
  for (long s = 0; s < prime; ++s) out.at(static_cast<std::size_t>(s), s) = Cyclo::one(prime);
  return ExpClass(std::move(out));
}

ExpClass unit_1(FiniteSet x, int prime) {
  ExpObject out(x, prime);
  for (std::size_t i = 0; i < x.size(); ++i) out.at(i, 0) = Cyclo::one(prime);
  return ExpClass(std::move(out));
}

ExpClass twist_scale(const ExpClass& h, long shift, long twist) {
  const int p = h.prime();
  Rational scale = (shift % 2 == 0) ? Rational(1) : Rational(-1);
  Integer pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(twist < 0 ? -twist : twist));
  if (twist > 0) scale /= pw;
  if (twist < 0) scale *= pw;
  return scale * h;
}

ExpClass operator+(const ExpClass& a, const ExpClass& b) {
  require_same_prime(a, b);
  if (a.base() != b.base()) throw Error("sum of classes on different bases");
  ExpObject out = a.rep();
  for (std::size_t x = 0; x < a.base().size(); ++x) {
    for (long t = 0; t < a.prime(); ++t) out.at(x, t) += b.rep().at(x, t);
  }
  return ExpClass(std::move(out));
}

ExpClass operator*(const Rational& q, const ExpClass& h) {
  ExpObject out = h.rep();
  for (std::size_t x = 0; x < h.base().size(); ++x) {
    for (long t = 0; t < h.prime(); ++t) out.at(x, t) *= q;
  }
  return ExpClass(std::move(out));
}

TrivialBundle::TrivialBundle(std::size_t base_points, int prime, int rank)
    : base_points_(base_points), prime_(prime), rank_(rank), fiber_(1) {
  if (base_points == 0) throw Error("bundle base must be nonempty");
  if (rank < 0) throw Error("negative rank");
  if (prime < 3 || !is_prime(prime)) throw Error("not an odd prime: " + std::to_string(prime));
  for (int i = 0; i < rank; ++i) fiber_ *= static_cast<std::size_t>(prime);
}

TrivialBundle TrivialBundle::from_total(std::size_t total, int prime, int rank) {
  TrivialBundle unit(1, prime, rank);
  if (total == 0 || total % unit.fiber_size() != 0) {
    throw Error("malformed base: size is not a multiple of p^r");
  }
  return TrivialBundle(total / unit.fiber_size(), prime, rank);
}

TrivialBundle TrivialBundle::from_pair_total(std::size_t total, int prime, int rank) {
  TrivialBundle unit(1, prime, rank);
  const std::size_t block = unit.fiber_size() * unit.fiber_size();
  if (total == 0 || total % block != 0) {
    throw Error("malformed base: size is not a multiple of p^(2r)");
  }
  return TrivialBundle(total / block, prime, rank);
}

std::vector<long> TrivialBundle::digits(std::size_t fiber_index) const {
  std::vector<long> v(rank_);
  for (int i = 0; i < rank_; ++i) {
    v[i] = static_cast<long>(fiber_index % prime_);
    fiber_index /= prime_;
  }
  return v;
}

std::size_t TrivialBundle::from_digits(std::span<const long> v) const {
  std::size_t idx = 0;
  for (int i = rank_ - 1; i >= 0; --i) idx = idx * prime_ + static_cast<std::size_t>(mod_p(v[i], prime_));
  return idx;
}

long TrivialBundle::pairing(std::size_t x, std::size_t y) const {
  long m = 0;
  for (int i = 0; i < rank_; ++i) {
    m += static_cast<long>(x % prime_) * static_cast<long>(y % prime_);
    x /= prime_;
    y /= prime_;
  }
  return mod_p(m, prime_);
}

FiniteMap TrivialBundle::first_projection() const {
  std::vector<std::size_t> t(pair_total());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = i / fiber_;
  return FiniteMap(FiniteSet(pair_total()), FiniteSet(total()), std::move(t));
}

FiniteMap TrivialBundle::second_projection() const {
  std::vector<std::size_t> t(pair_total());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::size_t s = i / (fiber_ * fiber_);
    t[i] = s * fiber_ + i % fiber_;
  }
  return FiniteMap(FiniteSet(pair_total()), FiniteSet(total()), std::move(t));
}

FiniteMap TrivialBundle::pairing_map() const {
  std::vector<std::size_t> t(pair_total());
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<std::size_t>(pairing((i / fiber_) % fiber_, i % fiber_));
  }
  return FiniteMap(FiniteSet(pair_total()), FiniteSet(static_cast<std::size_t>(prime_)), std::move(t));
}

FiniteMap TrivialBundle::negation() const {
  std::vector<std::size_t> t(total());
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto v = digits(i % fiber_);
    for (auto& c : v) c = -c;
    t[i] = (i / fiber_) * fiber_ + from_digits(v);
  }
  return FiniteMap(FiniteSet(total()), FiniteSet(total()), std::move(t));
}

ExpClass shear(const ExpClass& h, int rank, int sign) {
  const int p = h.prime();
  const auto bundle = TrivialBundle::from_pair_total(h.base().size(), p, rank);
  const std::size_t fib = bundle.fiber_size();
  ExpObject out(h.base(), p);
  for (std::size_t i = 0; i < h.base().size(); ++i) {
    const long m = bundle.pairing((i / fib) % fib, i % fib);
    for (long t = 0; t < p; ++t) {
      const Cyclo& v = h.rep().at(i, t);
      if (!v.is_zero()) out.at(i, t + sign * m) = v;
    }
  }
  return ExpClass(std::move(out));
}

ExpClass ft(const ExpClass& h, int rank) {
  const auto bundle = TrivialBundle::from_total(h.base().size(), h.prime(), rank);
  const ExpClass lifted = pullback(bundle.first_projection(), h);
  const ExpClass sheared = shear(lifted, rank);
  return twist_scale(pushforward(bundle.second_projection(), sheared), rank, 0);
}

std::vector<Cyclo> real_psi(const ExpClass& h, long lambda) {
  const int p = h.prime();
  if (mod_p(lambda, p) == 0) throw Error("not a realization kernel");
  std::vector<Cyclo> out(h.base().size(), Cyclo(p));
  for (std::size_t x = 0; x < h.base().size(); ++x) {
    for (long t = 0; t < p; ++t) {
      const Cyclo& v = h.rep().at(x, t);
      if (!v.is_zero()) out[x] += v * psi(t, lambda, p);
    }
  }
  return out;
}

std::vector<Cyclo> classical_ft(std::span<const Cyclo> g, long lambda, int rank, int prime) {
  if (mod_p(lambda, prime) == 0) throw Error("not a realization kernel");
  const auto bundle = TrivialBundle::from_total(g.size(), prime, rank);
  const std::size_t fib = bundle.fiber_size();
  std::vector<Cyclo> out(g.size(), Cyclo(prime));
  for (std::size_t s = 0; s < bundle.base_points(); ++s) {
    for (std::size_t y = 0; y < fib; ++y) {
      Cyclo acc(prime);
      for (std::size_t x = 0; x < fib; ++x) {
        const Cyclo& v = g[s * fib + x];
        if (!v.is_zero()) acc += v * psi(bundle.pairing(x, y), lambda, prime);
      }
      out[s * fib + y] = rank % 2 == 0 ? acc : -acc;
    }
  }
  return out;
}

}  // namespace explab
