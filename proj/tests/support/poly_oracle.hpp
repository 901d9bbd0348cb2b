#pragma once

// Operators acting on L_lambda = Q[t] e^{lambda t}, by brute force on
// polynomials of bounded degree.

#include <optional>
#include <utility>
#include <vector>

#include "explab/weyl.hpp"
#include "support/weyl_oracle.hpp"

namespace oracle {

inline int rank(std::vector<std::vector<Rational>> rows) {
  int r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

// (dim ker, dim coker) of A on L_lambda from polynomials of degree <= N.
// A acts on the polynomial factor as A with d -> d + lambda. Returns nothing
// unless A raises degree by exactly its top t-degree i*, which holds when
// sum_j c_{i*,j} lambda^j != 0; then the counts are exact for N large.
inline std::optional<std::pair<int, int>> on_L(const WeylElt& a, const Rational& lambda, int N) {
  const WeylElt twisted = explab::exp_twist(a, -lambda, 0);
  int shift = -1;
  for (const auto& [m, c] : twisted.terms()) {
    if (m.d(0) == 0) shift = std::max(shift, m.x(0));
  }
  if (shift < 0) return std::nullopt;
  std::vector<std::vector<Rational>> cols;
  for (int k = 0; k <= N; ++k) {
    Poly f;
    f[{k}] = 1;
    const Poly g = oracle::apply(twisted, f);
    std::vector<Rational> col(N + shift + 1);
    for (const auto& [e, c] : g) {
      if (e[0] > N + shift) return std::nullopt;
      col[e[0]] = c;
    }
    cols.push_back(col);
  }
  const int r = rank(cols);
  return std::pair<int, int>{N + 1 - r, N + shift + 1 - r};
}

}  // namespace oracle
