#include "explab/groebner.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "explab/error.hpp"

namespace explab {

GroebnerBasis GroebnerBasis::zero_ideal(int n) {
  return GroebnerBasis(n, {}, {});
}

bool GroebnerBasis::is_unit() const {
  return basis_.size() == 1 && basis_.front().leading_monomial().degree() == 0;
}

std::vector<WeylMonomial> GroebnerBasis::leading_monomials() const {
  std::vector<WeylMonomial> lm;
  lm.reserve(basis_.size());
  for (const auto& g : basis_) lm.push_back(g.leading_monomial());
  return lm;
}

int GroebnerBasis::max_degree() const {
  int d = 0;
  for (const auto& g : basis_) d = std::max(d, g.bernstein_degree());
  return d;
}

WeylElt left_normal_form(const WeylElt& p, const std::vector<WeylElt>& g) {
  const int n = p.n();
  WeylElt rest = p;
  WeylElt out(n);
  while (!rest.is_zero()) {
    const WeylMonomial lm = rest.leading_monomial();
    const Rational lc = rest.leading_coeff();
    const WeylElt* divisor = nullptr;
    for (const auto& h : g) {
      if (h.n() != n) throw Error("variable count mismatch");
      if (h.leading_monomial().divides(lm)) {
        divisor = &h;
        break;
      }
    }
    if (divisor == nullptr) {
      out.add_term(lm, lc);
      rest.add_term(lm, -lc);
      continue;
    }
    const WeylMonomial q = divisor->leading_monomial().quotient_of(lm);
    rest -= WeylElt::monomial(q, lc / divisor->leading_coeff()) * *divisor;
  }
  return out;
}

WeylElt left_normal_form(const WeylElt& p, const GroebnerBasis& g) {
  if (p.n() != g.n()) throw Error("variable count mismatch");
  return left_normal_form(p, g.basis());
}

namespace {

WeylElt s_polynomial(const WeylElt& f, const WeylElt& g) {
  const WeylMonomial l = f.leading_monomial().lcm(g.leading_monomial());
  const WeylElt lf = WeylElt::monomial(f.leading_monomial().quotient_of(l), 1 / f.leading_coeff()) * f;
  const WeylElt lg = WeylElt::monomial(g.leading_monomial().quotient_of(l), 1 / g.leading_coeff()) * g;
  return lf - lg;
}

bool supports_disjoint(const WeylElt& f, const WeylElt& g) {
  const int n = f.n();
  WeylMonomial sf(n), sg(n);
  for (const auto& [m, c] : f.terms()) sf = sf.lcm(m);
  for (const auto& [m, c] : g.terms()) sg = sg.lcm(m);
  return sf.variable_disjoint(sg);
}

std::vector<WeylElt> reduce_basis(std::vector<WeylElt> g) {
  // Drop elements whose leading monomial is divisible by another's.
  std::sort(g.begin(), g.end(), [](const WeylElt& a, const WeylElt& b) {
    return TermOrder{}(a.leading_monomial(), b.leading_monomial());
  });
  std::vector<WeylElt> minimal;
  for (auto& h : g) {
    bool redundant = false;
    for (const auto& k : minimal) {
      if (k.leading_monomial().divides(h.leading_monomial())) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(std::move(h));
  }
  std::vector<WeylElt> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<WeylElt> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    // The leading term survives: no other leading monomial divides it.
    const WeylElt& h = minimal[i];
    WeylElt tail = h;
    tail.add_term(h.leading_monomial(), -h.leading_coeff());
    WeylElt r = WeylElt::monomial(h.leading_monomial(), h.leading_coeff()) + left_normal_form(tail, others);
    reduced.push_back(r.monic());
  }
  return reduced;
}

}  // namespace

GroebnerBasis buchberger(const std::vector<WeylElt>& gens) {
  if (gens.empty()) throw Error("zero ideal input");
  const int n = gens.front().n();
  std::vector<WeylElt> g;
  for (const auto& f : gens) {
    if (f.n() != n) throw Error("variable count mismatch");
    if (!f.is_zero()) g.push_back(f.monic());
  }
  if (g.empty()) throw Error("zero ideal input");

  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  while (!pairs.empty()) {
    const auto [i, j] = pairs.front();
    pairs.pop_front();
    const WeylMonomial& li = g[i].leading_monomial();
    const WeylMonomial& lj = g[j].leading_monomial();
    if (li.variable_disjoint(lj) && supports_disjoint(g[i], g[j])) continue;
    WeylElt r = left_normal_form(s_polynomial(g[i], g[j]), g);
    if (r.is_zero()) continue;
    g.push_back(r.monic());
    if (g.back().leading_monomial().degree() == 0) {
      // Unit ideal.
      return GroebnerBasis(n, gens, {WeylElt::constant(n, 1)});
    }
    const std::size_t k = g.size() - 1;
    for (std::size_t m = 0; m < k; ++m) pairs.emplace_back(m, k);
  }
  // Single generators may already be units.
  for (const auto& h : g) {
    if (h.leading_monomial().degree() == 0) return GroebnerBasis(n, gens, {WeylElt::constant(n, 1)});
  }
  return GroebnerBasis(n, gens, reduce_basis(std::move(g)));
}

namespace {

// All exponent vectors of length k with total degree exactly d.
void for_each_exponent(int k, int d, std::vector<int>& cur, int pos,
                       std::vector<std::vector<int>>& out) {
  if (pos == k - 1) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[pos] = e;
    for_each_exponent(k, d - e, cur, pos + 1, out);
  }
}

}  // namespace

std::vector<WeylMonomial> standard_monomials(const GroebnerBasis& g, int d) {
  std::vector<WeylMonomial> out;
  if (g.is_unit() || d < 0) return out;
  const int n = g.n();
  const auto lms = g.leading_monomials();
  for (int deg = 0; deg <= d; ++deg) {
    std::vector<std::vector<int>> exps;
    std::vector<int> cur(2 * n, 0);
    for_each_exponent(2 * n, deg, cur, 0, exps);
    std::vector<WeylMonomial> level;
    for (auto& e : exps) {
      WeylMonomial m(n);
      for (int k = 0; k < 2 * n; ++k) m[k] = e[k];
      bool divisible = false;
      for (const auto& lm : lms) {
        if (lm.divides(m)) {
          divisible = true;
          break;
        }
      }
      if (!divisible) level.push_back(std::move(m));
    }
    std::sort(level.begin(), level.end(), TermOrder{});
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::size_t hilbert_function(const GroebnerBasis& g, int d) {
  return standard_monomials(g, d).size();
}

namespace {

// Largest set of variables containing the support of no leading monomial.
int staircase_dimension(const GroebnerBasis& g) {
  const int nv = 2 * g.n();
  const auto lms = g.leading_monomials();
  std::vector<unsigned> supports;
  for (const auto& lm : lms) {
    unsigned s = 0;
    for (int k = 0; k < nv; ++k) {
      if (lm[k] > 0) s |= 1u << k;
    }
    supports.push_back(s);
  }
  int best = 0;
  for (unsigned set = 0; set < (1u << nv); ++set) {
    bool ok = true;
    for (unsigned s : supports) {
      if ((s & ~set) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) best = std::max(best, __builtin_popcount(set));
  }
  return best;
}

}  // namespace

int hilbert_dimension(const GroebnerBasis& g) {
  const int n = g.n();
  if (g.is_zero()) return 2 * n;
  if (g.is_unit()) throw Error("zero module");
  const int dim = staircase_dimension(g);

  // Exact counts on a window past the regularity bound; the Hilbert
  // polynomial's degree is where the finite differences become constant.
  int lm_sum = 0;
  for (const auto& lm : g.leading_monomials()) lm_sum += lm.degree();
  const int start = std::max(2 * n * std::max(1, g.max_degree()), lm_sum);
  const int len = 2 * n + 2;
  std::vector<Integer> h;
  for (int d = start; d < start + len; ++d) h.emplace_back(static_cast<unsigned long>(hilbert_function(g, d)));
  int degree = 0;
  std::vector<Integer> diff = h;
  while (true) {
    bool constant = true;
    for (std::size_t i = 1; i < diff.size(); ++i) {
      if (diff[i] != diff[0]) {
        constant = false;
        break;
      }
    }
    if (constant) break;
    std::vector<Integer> next;
    for (std::size_t i = 1; i < diff.size(); ++i) next.push_back(diff[i] - diff[i - 1]);
    diff = std::move(next);
    ++degree;
    if (diff.size() < 2) throw Error("hilbert window too short");
  }
  if (degree != dim) {
    throw Error("hilbert dimension mismatch: staircase " + std::to_string(dim) + ", counting " +
                std::to_string(degree));
  }
  return dim;
}

bool is_holonomic(const GroebnerBasis& g) { return hilbert_dimension(g) == g.n(); }

bool ideal_eq(const GroebnerBasis& a, const GroebnerBasis& b) {
  if (a.n() != b.n()) throw Error("variable count mismatch");
  return a.basis() == b.basis();
}

}  // namespace explab
