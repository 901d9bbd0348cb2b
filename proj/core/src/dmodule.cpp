#include "explab/dmodule.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <utility>

#include "explab/error.hpp"
#include "linear_algebra.hpp"

namespace explab {

using detail::Echelon;
using detail::SparseVec;

CyclicModule::CyclicModule(GroebnerBasis ideal, std::string note)
    : ideal_(std::move(ideal)), note_(std::move(note)) {}

CyclicModule CyclicModule::from_generators(const std::vector<WeylElt>& gens, std::string note) {
  return CyclicModule(buchberger(gens), std::move(note));
}

std::optional<WeylElt> CyclicModule::principal_generator() const {
  if (ideal_.basis().size() != 1) return std::nullopt;
  return ideal_.basis().front();
}

std::string Certificate::to_string() const {
  switch (kind) {
    case CertificateKind::exact_triangular:
      return "exact-triangular";
    case CertificateKind::stabilized:
      return "stabilized(" + std::to_string(low) + ", " + std::to_string(high) + ")";
    case CertificateKind::inconclusive:
      break;
  }
  return "inconclusive";
}

TruncationPolicy TruncationPolicy::from_environment() {
  TruncationPolicy p;
  if (const char* env = std::getenv("EXPLAB_MAX_DEGREE")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) p.hard_cap = static_cast<int>(v);
  }
  return p;
}

CyclicModule make_L(const Rational& lambda) {
  const WeylElt p = WeylElt::d(1, 0) - WeylElt::constant(1, lambda);
  return CyclicModule::from_generators({p}, sgn(lambda) == 0 ? "not an exponential module" : "");
}

CyclicModule make_O() { return CyclicModule::from_generators({WeylElt::d(1, 0)}); }

CyclicModule make_delta(const Rational& c) {
  return CyclicModule::from_generators({WeylElt::x(1, 0) - WeylElt::constant(1, c)});
}

CyclicModule make_kummer(const Rational& alpha) {
  return CyclicModule::from_generators(
      {WeylElt::x(1, 0) * WeylElt::d(1, 0) - WeylElt::constant(1, alpha)});
}

CyclicModule exp_kernel_module() {
  return CyclicModule::from_generators(
      {WeylElt::x(2, 0) - WeylElt::x(2, 1), WeylElt::d(2, 0) + WeylElt::d(2, 1)});
}

namespace {

const WeylElt& require_principal_n1(const CyclicModule& m, const char* what) {
  if (m.n() != 1) throw Error(std::string(what) + " requires one variable");
  if (m.ideal().basis().size() != 1) throw Error("duality supported only for principal ideals");
  return m.ideal().basis().front();
}

void require_holonomic(const CyclicModule& m) {
  if (m.is_zero_module()) return;
  if (!is_holonomic(m.ideal())) throw Error("module is not holonomic");
}

// Embeds an A_1 element as an element in variable `slot` of A_2.
WeylElt embed_in_two(const WeylElt& p, int slot) {
  WeylElt out(2);
  for (const auto& [m, c] : p.terms()) {
    WeylMonomial e(2);
    e.x(slot) = m.x(0);
    e.d(slot) = m.d(0);
    out.add_term(e, c);
  }
  return out;
}

// Standard monomials of a module with index lookup; prefix-stable under growth.
class MonomialBasis {
 public:
  explicit MonomialBasis(const GroebnerBasis& g) : g_(g) {}

  void ensure(int degree) {
    if (degree <= degree_) return;
    mons_ = standard_monomials(g_, degree);
    index_.clear();
    for (std::size_t i = 0; i < mons_.size(); ++i) index_.emplace(mons_[i], static_cast<int>(i));
    degree_ = degree;
  }

  const std::vector<WeylMonomial>& monomials() const { return mons_; }
  const WeylMonomial& at(int i) const { return mons_[i]; }

  /// Number of standard monomials of degree <= d.
  int count_upto(int d) {
    ensure(d);
    return static_cast<int>(std::upper_bound(mons_.begin(), mons_.end(), d,
                                             [](int deg, const WeylMonomial& m) { return deg < m.degree(); }) -
                            mons_.begin());
  }

  SparseVec vec(const WeylElt& nf) {
    SparseVec v;
    if (nf.is_zero()) return v;
    ensure(nf.bernstein_degree());
    for (const auto& [m, c] : nf.terms()) {
      auto it = index_.find(m);
      if (it == index_.end()) throw Error("internal: term is not a standard monomial");
      v.emplace(it->second, c);
    }
    return v;
  }

  WeylElt element(const SparseVec& v) const {
    WeylElt out(g_.n());
    for (const auto& [k, c] : v) out.add_term(mons_[k], c);
    return out;
  }

 private:
  const GroebnerBasis& g_;
  int degree_ = -1;
  std::vector<WeylMonomial> mons_;
  std::map<WeylMonomial, int, TermOrder> index_;
};

// Images NF(A * m_j) for the standard monomials m_j, computed on demand.
class MultiplicationMap {
 public:
  MultiplicationMap(const GroebnerBasis& g, WeylElt a)
      : g_(g), a_(std::move(a)), basis_(g), deg_a_(a_.bernstein_degree()) {}

  MonomialBasis& basis() { return basis_; }
  int deg_a() const { return deg_a_; }

  const SparseVec& image(int j) {
    while (static_cast<int>(images_.size()) <= j) {
      const int k = static_cast<int>(images_.size());
      const WeylElt prod = a_ * WeylElt::monomial(basis_.at(k));
      images_.push_back(basis_.vec(left_normal_form(prod, g_)));
    }
    return images_[j];
  }

  /// Makes monomials up to `degree` (and their images' targets) addressable.
  void ensure_sources(int degree) { basis_.ensure(degree + deg_a_); }

 private:
  const GroebnerBasis& g_;
  WeylElt a_;
  MonomialBasis basis_;
  int deg_a_;
  std::vector<SparseVec> images_;
};

struct Estimate {
  int ker = 0;
  int coker = 0;
  std::vector<WeylElt> ker_witnesses;
  std::vector<WeylElt> coker_witnesses;
};

// Kernel over sources of degree <= kernel_degree, cokernel inside target
// degree <= coker_degree using sources of degree <= source_degree.
Estimate compute_truncated(MultiplicationMap& map, int kernel_degree, int coker_degree, int source_degree) {
  const int top = std::max(kernel_degree, source_degree);
  map.ensure_sources(top);
  MonomialBasis& basis = map.basis();
  const int n_kernel = basis.count_upto(kernel_degree);
  const int n_source = basis.count_upto(top);
  Estimate est;
  Echelon ech;
  for (int j = 0; j < n_source; ++j) {
    SparseVec comb;
    comb.emplace(j, Rational(1));
    // A dependency first found at column j only involves columns <= j.
    if (auto k = ech.insert(map.image(j), std::move(comb)); k && j < n_kernel) {
      ++est.ker;
      est.ker_witnesses.push_back(basis.element(*k));
    }
  }
  const int n_target = basis.count_upto(coker_degree);
  est.coker = n_target - static_cast<int>(ech.pivots_at_most(n_target - 1));
  for (int i = 0; i < n_target; ++i) {
    if (!ech.has_pivot(i)) est.coker_witnesses.push_back(WeylElt::monomial(basis.at(i)));
  }
  return est;
}

// True when the values (at consecutive integers starting at k0) follow a
// polynomial, confirmed by at least two vanishing higher differences, with no
// real root beyond the sampled window (Cauchy bound).
bool polynomial_never_vanishes(const std::vector<Rational>& values) {
  const std::size_t m = values.size();
  for (const auto& v : values) {
    if (sgn(v) == 0) return false;
  }
  std::vector<std::vector<Rational>> table{values};
  std::size_t q = 0;
  while (true) {
    const auto& last = table.back();
    std::vector<Rational> next;
    for (std::size_t i = 1; i < last.size(); ++i) next.push_back(last[i] - last[i - 1]);
    if (next.size() < 2) return false;
    bool zero = std::all_of(next.begin(), next.end(), [](const Rational& r) { return sgn(r) == 0; });
    if (zero) break;
    table.push_back(std::move(next));
    ++q;
  }
  if (q == 0) return true;
  // p(u) = sum_r Delta^r v_0 * C(u, r); expand into monomial coefficients.
  std::vector<Rational> poly(q + 1, Rational(0));
  std::vector<Rational> falling{Rational(1)};  // u(u-1)...(u-r+1)
  for (std::size_t r = 0; r <= q; ++r) {
    const Rational scale = table[r][0] / Rational(factorial(static_cast<long>(r)));
    for (std::size_t i = 0; i < falling.size(); ++i) poly[i] += scale * falling[i];
    std::vector<Rational> next(falling.size() + 1, Rational(0));
    for (std::size_t i = 0; i < falling.size(); ++i) {
      next[i + 1] += falling[i];
      next[i] -= falling[i] * static_cast<long>(r);
    }
    falling = std::move(next);
  }
  Rational bound(0);
  for (std::size_t i = 0; i < q; ++i) bound = std::max(bound, Rational(abs(poly[i] / poly[q])));
  bound += 1;
  return bound <= Rational(static_cast<long>(m - 1));
}

// Monomial families for one variable: for degree >= lmx + lmd each standard
// monomial x^i d^j lies on exactly one ray, i < lmx (key 2i) or j < lmd
// (key 2j + 1).
struct Rays {
  int lmx = 0;
  int lmd = 0;
  int stable_degree() const { return lmx + lmd; }
  int key(const WeylMonomial& m) const { return m.x(0) < lmx ? 2 * m.x(0) : 2 * m.d(0) + 1; }
};

// Attempts the triangular certificate on the window of source degrees <= K.
// Past some degree k0, the leading monomial of A*m must move each ray onto a
// distinct ray with a constant degree shift and a leading coefficient that is
// a nowhere-vanishing polynomial along the ray. Then kernel and cokernel are
// determined by a finite part of the matrix.
std::optional<TwoTermComplex> try_triangular(MultiplicationMap& map, const GroebnerBasis& g, int K) {
  Rays rays;
  for (const auto& lm : g.leading_monomials()) {
    rays.lmx = std::max(rays.lmx, lm.x(0));
    rays.lmd = std::max(rays.lmd, lm.d(0));
  }
  map.ensure_sources(K);
  MonomialBasis& basis = map.basis();
  const int n_window = basis.count_upto(K);

  struct Lead {
    bool zero = true;
    int pivot = -1;
    Rational coeff;
  };
  std::vector<Lead> leads(n_window);
  for (int j = 0; j < n_window; ++j) {
    const auto& img = map.image(j);
    if (img.empty()) continue;
    leads[j] = Lead{false, img.rbegin()->first, img.rbegin()->second};
  }

  const int stable = rays.stable_degree();
  for (int k0 = stable; k0 + 6 <= K; ++k0) {
    bool ok = true;
    std::map<int, std::pair<int, int>> ray_map;  // source ray -> (target ray, shift)
    std::map<int, std::vector<Rational>> coeffs;
    for (int j = basis.count_upto(k0 - 1); j < n_window && ok; ++j) {
      const WeylMonomial& src = basis.at(j);
      if (leads[j].zero) {
        ok = false;
        break;
      }
      const WeylMonomial& tgt = basis.at(leads[j].pivot);
      if (tgt.degree() < stable) {
        ok = false;
        break;
      }
      const int shift = tgt.degree() - src.degree();
      const auto entry = std::make_pair(rays.key(tgt), shift);
      auto [it, inserted] = ray_map.try_emplace(rays.key(src), entry);
      if (!inserted && it->second != entry) ok = false;
      coeffs[rays.key(src)].push_back(leads[j].coeff);
    }
    if (!ok || ray_map.empty()) continue;
    std::set<int> targets;
    int smin = 0, smax = 0;
    bool first = true;
    for (const auto& [src, tgt] : ray_map) {
      if (!targets.insert(tgt.first).second) ok = false;
      smin = first ? tgt.second : std::min(smin, tgt.second);
      smax = first ? tgt.second : std::max(smax, tgt.second);
      first = false;
    }
    for (const auto& [src, seq] : coeffs) {
      if (!polynomial_never_vanishes(seq)) ok = false;
    }
    if (!ok) continue;

    int b_deg = -1;
    for (int j = 0; j < basis.count_upto(k0 - 1); ++j) {
      if (!leads[j].zero) b_deg = std::max(b_deg, basis.at(leads[j].pivot).degree());
    }
    const int kernel_degree = std::max(k0 - 1, b_deg - smin);
    const int coker_degree = std::max({b_deg, k0 + smax - 1, stable - 1, 0});
    const int source_degree = coker_degree - smin;
    if (kernel_degree > K || source_degree > K) return std::nullopt;

    Estimate est = compute_truncated(map, kernel_degree, coker_degree, source_degree);
    TwoTermComplex out;
    out.dim_ker = est.ker;
    out.dim_coker = est.coker;
    out.ker_witnesses = std::move(est.ker_witnesses);
    out.coker_witnesses = std::move(est.coker_witnesses);
    out.certificate.kind = CertificateKind::exact_triangular;
    return out;
  }
  return std::nullopt;
}

}  // namespace

TwoTermComplex mult_complex(const CyclicModule& m, const WeylElt& a, const TruncationPolicy& policy) {
  if (a.is_zero()) throw Error("multiplication by zero operator");
  if (a.n() != m.n()) throw Error("variable count mismatch");
  if (m.is_zero_module()) {
    TwoTermComplex zero;
    zero.certificate.kind = CertificateKind::exact_triangular;
    return zero;
  }
  require_holonomic(m);

  MultiplicationMap map(m.ideal(), a);
  const int d0 = policy.start > 0 ? policy.start
                                  : 4 * (1 + std::max(m.ideal().max_degree(), a.bernstein_degree()));
  std::vector<std::pair<int, int>> history;
  for (int d = d0;; ++d) {
    if (d > policy.hard_cap) throw CertificateError("no stabilization certificate");
    if (m.n() == 1) {
      if (auto exact = try_triangular(map, m.ideal(), 2 * d)) return *exact;
    }
    Estimate est = compute_truncated(map, d, d, 2 * d);
    history.emplace_back(est.ker, est.coker);
    const std::size_t h = history.size();
    const bool stable = h >= 3 && history[h - 1] == history[h - 2] && history[h - 2] == history[h - 3];
    if (stable || !policy.escalate) {
      TwoTermComplex out;
      out.dim_ker = est.ker;
      out.dim_coker = est.coker;
      out.ker_witnesses = std::move(est.ker_witnesses);
      out.coker_witnesses = std::move(est.coker_witnesses);
      if (stable) {
        out.certificate = Certificate{CertificateKind::stabilized, d - 2, d};
      }
      return out;
    }
  }
}

TwoTermComplex point_complex(const CyclicModule& m, const Rational& c, const TruncationPolicy& policy) {
  if (m.n() != 1) throw Error("point_complex requires one variable");
  TwoTermComplex out = mult_complex(m, WeylElt::x(1, 0) - WeylElt::constant(1, c), policy);
  out.degree_labels = {-1, 0};
  return out;
}

TwoTermComplex derham_pushforward(const CyclicModule& m, const TruncationPolicy& policy) {
  if (m.n() != 1) throw Error("derham_pushforward requires one variable");
  TwoTermComplex out = mult_complex(m, WeylElt::d(1, 0), policy);
  out.degree_labels = {-1, 0};
  return out;
}

CyclicModule dual(const CyclicModule& m) {
  const WeylElt& p = require_principal_n1(m, "dual");
  if (p.d_order() == 0) throw Error("duality needs a generator of positive d-order");
  return CyclicModule::from_generators({adjoint(p).monic()});
}

CyclicModule fourier_module(const CyclicModule& m, std::span<const int> vars) {
  if (m.is_zero_module()) return m;
  std::vector<WeylElt> gens;
  for (const auto& g : m.ideal().basis()) gens.push_back(fourier_auto(g, vars));
  if (gens.empty()) return CyclicModule(GroebnerBasis::zero_ideal(m.n()));
  CyclicModule out = CyclicModule::from_generators(gens);
  if (!m.ideal().is_zero() && is_holonomic(m.ideal()) != is_holonomic(out.ideal())) {
    throw Error("internal: Fourier transform changed holonomicity");
  }
  return out;
}

CyclicModule sum_pullback(const CyclicModule& m) {
  const WeylElt& p = require_principal_n1(m, "sum_pullback");
  const WeylElt sum = WeylElt::x(2, 0) + WeylElt::x(2, 1);
  const WeylElt lifted = substitute(embed_in_two(p, 0), std::vector<WeylElt>{sum, WeylElt::x(2, 1)},
                                    std::vector<WeylElt>{WeylElt::d(2, 0), WeylElt::d(2, 1)});
  return CyclicModule::from_generators({lifted, WeylElt::d(2, 0) - WeylElt::d(2, 1)});
}

CyclicModule external_product(const CyclicModule& a, const CyclicModule& b) {
  const WeylElt& p = require_principal_n1(a, "external_product");
  const WeylElt& q = require_principal_n1(b, "external_product");
  return CyclicModule::from_generators({embed_in_two(p, 0), embed_in_two(q, 1)});
}

TwoTermComplex real_at(const CyclicModule& m, const Rational& lambda, const TruncationPolicy& policy) {
  if (sgn(lambda) == 0) throw Error("not a realization kernel");
  if (m.n() != 1) throw Error("real_at requires one variable");
  if (m.is_zero_module()) {
    TwoTermComplex zero;
    zero.degree_labels = {1, 0};
    zero.certificate.kind = CertificateKind::exact_triangular;
    return zero;
  }
  const WeylElt& p = require_principal_n1(m, "real_at");
  const CyclicModule dualized = CyclicModule::from_generators({adjoint(p).monic()});
  const int var = 0;
  const CyclicModule wedge = fourier_module(dualized, std::span<const int>(&var, 1));
  TwoTermComplex out = point_complex(wedge, -lambda, policy);
  // Duality on a point negates degrees: (-1, 0) becomes (1, 0).
  out.degree_labels = {-out.degree_labels[0], -out.degree_labels[1]};
  return out;
}

InjectivityResult injectivity_check(const CyclicModule& m, const Rational& lambda, const TruncationPolicy& policy) {
  if (sgn(lambda) == 0) throw Error("lambda must be nonzero");
  const int var = 0;
  const CyclicModule wedge = fourier_module(m, std::span<const int>(&var, 1));
  InjectivityResult r;
  r.complex = point_complex(wedge, lambda, policy);
  r.injective = r.complex.dim_ker == 0;
  return r;
}

int holonomic_rank(const CyclicModule& m) {
  if (m.n() != 1 || m.ideal().basis().size() != 1) {
    throw Error("holonomic rank needs a principal ideal in one variable");
  }
  return m.ideal().basis().front().d_order();
}

namespace {

struct RestrictionAttempt {
  std::optional<GroebnerBasis> ideal;
  bool cyclic = false;
};

RestrictionAttempt restrict_at_degree(const CyclicModule& m, const WeylElt& a, int degree) {
  const GroebnerBasis& g = m.ideal();
  MultiplicationMap map(g, a);
  map.ensure_sources(degree);
  MonomialBasis& basis = map.basis();
  const int n_source = basis.count_upto(degree);

  Echelon image;
  for (int j = 0; j < n_source; ++j) {
    SparseVec comb;
    comb.emplace(j, Rational(1));
    if (image.insert(map.image(j), std::move(comb))) {
      throw Error("restriction unsupported for this module");  // x2 - c not injective
    }
  }
  if (image.reduce(basis.vec(left_normal_form(WeylElt::constant(2, 1), g))).empty()) {
    throw Error("restriction unsupported for this module");  // zero cokernel
  }

  // Candidate relations: A_1 monomials in (x1, d1) of degree <= e.
  const int e = degree / 2;
  std::vector<WeylMonomial> candidates;
  for (int deg = 0; deg <= e; ++deg) {
    for (int i = deg; i >= 0; --i) {
      WeylMonomial u(2);
      u.x(0) = i;
      u.d(0) = deg - i;
      candidates.push_back(u);
    }
  }
  // Residues modulo the image have no entries at image pivots, so they can be
  // eliminated among themselves with candidate indices as combinations.
  Echelon residues;
  std::vector<WeylElt> relations;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    SparseVec r = image.reduce(basis.vec(left_normal_form(WeylElt::monomial(candidates[k]), g)));
    SparseVec comb;
    comb.emplace(static_cast<int>(k), Rational(1));
    if (auto rel = residues.insert(std::move(r), std::move(comb))) {
      WeylElt u(1);
      for (const auto& [idx, c] : *rel) {
        WeylMonomial one(1);
        one.x(0) = candidates[idx].x(0);
        one.d(0) = candidates[idx].d(0);
        u.add_term(one, c);
      }
      relations.push_back(std::move(u));
    }
  }
  RestrictionAttempt out;
  out.cyclic = true;
  const int n_check = basis.count_upto(e);
  for (int j = 0; j < n_check; ++j) {
    SparseVec v;
    v.emplace(j, Rational(1));
    if (!residues.reduce(image.reduce(std::move(v))).empty()) {
      out.cyclic = false;
      break;
    }
  }
  if (!relations.empty()) out.ideal = buchberger(relations);
  return out;
}

}  // namespace

RestrictionResult partial_restrict_last(const CyclicModule& m, const Rational& c, const TruncationPolicy& policy) {
  if (m.n() != 2) throw Error("partial_restrict_last requires two variables");
  if (m.is_zero_module()) throw Error("restriction unsupported for this module");
  require_holonomic(m);
  const WeylElt a = WeylElt::x(2, 1) - WeylElt::constant(2, c);
  const int d0 = policy.start > 0 ? policy.start : 4 * (1 + m.ideal().max_degree());
  std::vector<std::optional<GroebnerBasis>> history;
  bool last_cyclic = true;
  for (int d = d0;; ++d) {
    if (d > policy.hard_cap) {
      if (!last_cyclic) throw Error("restriction unsupported for this module");
      throw CertificateError("no stabilization certificate");
    }
    RestrictionAttempt att = restrict_at_degree(m, a, d);
    last_cyclic = att.cyclic;
    const bool usable = att.cyclic && att.ideal.has_value();
    history.push_back(usable ? att.ideal : std::nullopt);
    const std::size_t h = history.size();
    const bool stable = usable && h >= 3 && history[h - 2] && history[h - 3] &&
                        ideal_eq(*history[h - 1], *history[h - 2]) &&
                        ideal_eq(*history[h - 2], *history[h - 3]);
    if (stable || (!policy.escalate && usable)) {
      RestrictionResult out{*att.ideal, true, {}};
      if (stable) out.certificate = Certificate{CertificateKind::stabilized, d - 2, d};
      return out;
    }
    if (!policy.escalate) throw Error("restriction unsupported for this module");
  }
}

}  // namespace explab
