#include "explab/oracles.hpp"

#include "explab/error.hpp"

namespace explab::oracle {
namespace {

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long dot(long x, long y, int prime, int rank) {
  long s = 0;
  for (int i = 0; i < rank; ++i) {
    s += (x % prime) * (y % prime);
    x /= prime;
    y /= prime;
  }
  return s % prime;
}

long powmod(long b, long e, long p) {
  long r = 1;
  b %= p;
  for (long i = 0; i < e; ++i) r = r * b % p;
  return r;
}

}  // namespace

ExpObject fourier_closed_form(const ExpObject& h, int rank) {
  const int p = h.prime();
  const long fiber = ipow(p, rank);
  if (fiber == 0 || h.base().size() % static_cast<std::size_t>(fiber) != 0) throw Error("malformed base");
  const long s_count = static_cast<long>(h.base().size()) / fiber;
  ExpObject out(h.base(), p);
  const bool odd = rank % 2 == 1;
  for (long s = 0; s < s_count; ++s) {
    for (long y = 0; y < fiber; ++y) {
      for (long t = 0; t < p; ++t) {
        Cyclo acc(p);
        for (long x = 0; x < fiber; ++x) {
          const long u = ((t - dot(x, y, p, rank)) % p + p) % p;
          acc += h.at(static_cast<std::size_t>(s * fiber + x), u);
        }
        out.at(static_cast<std::size_t>(s * fiber + y), t) = odd ? -acc : acc;
      }
    }
  }
  return out;
}

ExpObject incidence_counts(int prime, int rank) {
  const long fiber = ipow(prime, rank);
  ExpObject out(FiniteSet(static_cast<std::size_t>(fiber)), prime);
  for (long y = 0; y < fiber; ++y) {
    for (long x = 0; x < fiber; ++x) out.at(y, dot(x, y, prime, rank)) += Cyclo::one(prime);
  }
  return out;
}

ExpObject scaled_origin_delta(int prime, int rank) {
  const long fiber = ipow(prime, rank);
  ExpObject out(FiniteSet(static_cast<std::size_t>(fiber)), prime);
  out.at(0, 0) = embed_rational(Rational(fiber), prime);
  return out;
}

Cyclo kloosterman_enumerate(int prime, long a) {
  Cyclo acc(prime);
  for (long x = 1; x < prime; ++x) {
    const long inv = powmod(x, prime - 2, prime);
    acc += Cyclo::zeta_power(x + a * inv, prime);
  }
  return acc;
}

Cyclo gauss_enumerate(int prime, long lambda) {
  Cyclo acc(prime);
  for (long x = 0; x < prime; ++x) acc += Cyclo::zeta_power(lambda * x * x, prime);
  return acc;
}

int legendre(long a, int prime) {
  const long r = powmod(((a % prime) + prime) % prime, (prime - 1) / 2, prime);
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

}  // namespace explab::oracle
