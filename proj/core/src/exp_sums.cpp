#include "explab/exp_sums.hpp"

#include "explab/error.hpp"

namespace explab {

long inverse_mod(long a, long p) {
  a = mod_p(a, p);
  if (a == 0) throw Error("zero has no inverse");
  long r = 1, base = a, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

ExpClass kloosterman_object(int prime, long a) {
  const FiniteSet units(static_cast<std::size_t>(prime - 1));
  const FiniteSet line(static_cast<std::size_t>(prime));
  std::vector<std::size_t> table;
  for (long x = 1; x < prime; ++x) {
    table.push_back(static_cast<std::size_t>(mod_p(x + a * inverse_mod(x, prime), prime)));
  }
  return pullback(FiniteMap(units, line, std::move(table)), kernel_E(prime));
}

Cyclo kloosterman_sum(int prime, long a) {
  if (mod_p(a, prime) == 0) throw Error("degenerate Kloosterman parameter");
  const ExpClass h = kloosterman_object(prime, a);
  const FiniteSet point(1);
  const ExpClass total = pushforward(FiniteMap::constant(h.base(), point, 0), h);
  return real_psi(total, 1).front();
}

ExpClass square_pushforward(int prime) {
  const FiniteSet line(static_cast<std::size_t>(prime));
  std::vector<std::size_t> table;
  for (long x = 0; x < prime; ++x) table.push_back(static_cast<std::size_t>(x * x % prime));
  const FiniteMap square(line, line, std::move(table));
  return pushforward(square, pullback(square, kernel_E(prime)));
}

Cyclo gauss_sum(int prime, long lambda) {
  if (mod_p(lambda, prime) == 0) throw Error("degenerate character");
  const FiniteSet line(static_cast<std::size_t>(prime));
  std::vector<std::size_t> table;
  for (long x = 0; x < prime; ++x) table.push_back(static_cast<std::size_t>(x * x % prime));
  const ExpClass h = pullback(FiniteMap(line, line, std::move(table)), kernel_E(prime));
  const ExpClass total = pushforward(FiniteMap::constant(line, FiniteSet(1), 0), h);
  return real_psi(total, lambda).front();
}

}  // namespace explab
