#include "explab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "explab/dmodule.hpp"
#include "explab/error.hpp"
#include "explab/exp_sums.hpp"
#include "explab/finite_model.hpp"
#include "explab/groebner.hpp"
#include "explab/oracles.hpp"
#include "explab/weyl.hpp"

namespace explab {
namespace {

// Accumulates check outcomes for one case; keeps the first few failures.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (ok) return;
    ++failed_;
    if (messages_.size() < 4) messages_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }

  bool passed() const { return failed_ == 0; }
  std::string details() const {
    std::ostringstream out;
    if (failed_ == 0) {
      out << count_ << " checks";
    } else {
      out << failed_ << " of " << count_ << " checks failed";
      for (const auto& m : messages_) out << "; " << m;
    }
    for (const auto& n : notes_) out << "; " << n;
    return out.str();
  }

 private:
  std::size_t count_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> messages_;
  std::vector<std::string> notes_;
};

struct CaseSpec {
  std::string id;
  std::string anchor;
  std::function<void(Checks&, std::mt19937_64&)> run;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string str(const Rational& q) { return to_string(q); }

Rational fraction(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Finite model

ExpClass delta(std::size_t base, int p, std::size_t x, long t) {
  ExpObject h(FiniteSet(base), p);
  h.at(x, t) = Cyclo::one(p);
  return ExpClass(std::move(h));
}

std::vector<ExpClass> delta_basis(std::size_t base, int p) {
  std::vector<ExpClass> out;
  for (std::size_t x = 0; x < base; ++x) {
    for (long t = 0; t < p; ++t) out.push_back(delta(base, p, x, t));
  }
  return out;
}

Cyclo random_cyclo(std::mt19937_64& rng, int p) {
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<long> k(0, p - 1);
  if (coin(rng) == 0) return Cyclo(p);
  Cyclo c = Cyclo::zeta_power(k(rng), p) * fraction(num(rng), den(rng));
  if (coin(rng) == 0) c += Cyclo::zeta_power(k(rng), p);
  return c;
}

ExpClass random_class(std::mt19937_64& rng, std::size_t base, int p) {
  ExpObject h(FiniteSet(base), p);
  for (std::size_t x = 0; x < base; ++x) {
    for (long t = 0; t < p; ++t) h.at(x, t) = random_cyclo(rng, p);
  }
  return ExpClass(std::move(h));
}

FiniteMap random_map(std::mt19937_64& rng, std::size_t from, std::size_t to) {
  std::uniform_int_distribution<std::size_t> pick(0, to - 1);
  std::vector<std::size_t> table(from);
  for (auto& v : table) v = pick(rng);
  return FiniteMap(FiniteSet(from), FiniteSet(to), std::move(table));
}

std::string where(int p, int r, std::size_t k) {
  return "p=" + std::to_string(p) + " r=" + std::to_string(r) + " basis#" + std::to_string(k);
}

void additivity(Checks& c, int p, int max_base) {
  const ExpClass e = kernel_E(p);
  const FiniteSet line(static_cast<std::size_t>(p));
  for (int n = 1; n <= max_base; ++n) {
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(p);
    std::vector<std::vector<std::size_t>> tables(count, std::vector<std::size_t>(n));
    std::vector<ExpClass> pulled;
    for (std::size_t code = 0; code < count; ++code) {
      std::size_t v = code;
      for (int i = 0; i < n; ++i) {
        tables[code][i] = v % p;
        v /= p;
      }
      pulled.push_back(pullback(FiniteMap(FiniteSet(n), line, tables[code]), e));
    }
    for (std::size_t f = 0; f < count; ++f) {
      for (std::size_t g = 0; g < count; ++g) {
        std::size_t sum_code = 0, scale = 1;
        for (int i = 0; i < n; ++i) {
          sum_code += ((tables[f][i] + tables[g][i]) % p) * scale;
          scale *= p;
        }
        const ExpClass lhs = conv(pulled[f], pulled[g]);
        c.expect(lhs.rep() == pulled[sum_code].rep(),
                 "p=" + std::to_string(p) + " |X|=" + std::to_string(n) + " f#" + std::to_string(f) +
                     " g#" + std::to_string(g));
      }
    }
  }
}

void invertibility(Checks& c, int p) {
  const TrivialBundle line(1, p, 1);
  const ExpClass e = kernel_E(p);
  const ExpClass lhs = conv(e, pullback(line.negation(), e));
  const ExpClass unit = unit_1(FiniteSet(static_cast<std::size_t>(p)), p);
  c.expect(lhs.rep() == unit.rep(), "tables differ at p=" + std::to_string(p));
  c.expect(lhs == unit, "classes differ at p=" + std::to_string(p));
}

void orthogonality(Checks& c, int p, int r) {
  const TrivialBundle v(1, p, r);
  const ExpClass counts = pushforward(v.second_projection(), pullback(v.pairing_map(), kernel_E(p)));
  c.expect(counts.rep() == oracle::incidence_counts(p, r), "incidence table differs from enumeration");
  c.expect(counts == ExpClass(oracle::scaled_origin_delta(p, r)), "class differs from p^r delta at origin");
  // Rows off the origin are constant in t; the origin row is p^r delta_{t=0}.
  const Cyclo fiber_over_p = embed_rational(Rational(static_cast<long>(v.fiber_size() / p)), p);
  for (std::size_t y = 0; y < v.fiber_size(); ++y) {
    for (long t = 0; t < p; ++t) {
      const Cyclo expected = y == 0 ? (t == 0 ? embed_rational(Rational(static_cast<long>(v.fiber_size())), p) : Cyclo(p))
                                    : fiber_over_p;
      c.expect(counts.rep().at(y, t) == expected, "count at y#" + std::to_string(y) + " t=" + std::to_string(t));
    }
  }
}

void inversion(Checks& c, int p, int r) {
  const TrivialBundle v(1, p, r);
  const auto basis = delta_basis(v.total(), p);
  const Rational scale(static_cast<long>(v.fiber_size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const ExpClass twice = ft(ft(basis[k], r), r);
    c.expect(twice == scale * pullback(v.negation(), basis[k]), where(p, r, k));
  }
}

void shear_oracle(Checks& c, int p, int r) {
  const TrivialBundle v(1, p, r);
  const auto basis = delta_basis(v.total(), p);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const ExpClass piped = ft(basis[k], r);
    c.expect(piped == ExpClass(oracle::fourier_closed_form(basis[k].rep(), r)), where(p, r, k));
  }
  // shear(h) = h (+) m^*E on V x V^dual, tested on pulled-back basis elements.
  const ExpClass m_e = pullback(v.pairing_map(), kernel_E(p));
  for (std::size_t k = 0; k < basis.size(); k += std::max<std::size_t>(1, basis.size() / 16)) {
    const ExpClass lifted = pullback(v.first_projection(), basis[k]);
    c.expect(shear(lifted, r).rep() == conv(lifted, m_e).rep(), "shear vs convolution, " + where(p, r, k));
  }
}

void realization_compat(Checks& c, int p, int r) {
  const TrivialBundle v(1, p, r);
  const auto basis = delta_basis(v.total(), p);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const ExpClass transformed = ft(basis[k], r);
    for (long lambda = 1; lambda < p; ++lambda) {
      const auto lhs = real_psi(transformed, lambda);
      const auto g = real_psi(basis[k], lambda);
      const auto rhs = classical_ft(g, lambda, r, p);
      c.expect(lhs == rhs, where(p, r, k) + " lambda=" + std::to_string(lambda));
    }
  }
}

void real_kernel(Checks& c, int p) {
  const ExpClass e = kernel_E(p);
  for (long lambda = 1; lambda < p; ++lambda) {
    const auto values = real_psi(e, lambda);
    for (long s = 0; s < p; ++s) {
      c.expect(values[s] == psi(s, lambda, p), "s=" + std::to_string(s) + " lambda=" + std::to_string(lambda));
    }
  }
}

void real_unit(Checks& c, int p) {
  for (std::size_t size : {1u, 3u}) {
    const ExpClass u = unit_1(FiniteSet(size), p);
    for (long lambda = 1; lambda < p; ++lambda) {
      for (const auto& v : real_psi(u, lambda)) c.expect(v == Cyclo::one(p), "lambda=" + std::to_string(lambda));
    }
  }
}

void base_change(Checks& c, std::mt19937_64& rng, int p) {
  std::uniform_int_distribution<std::size_t> size(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nx = size(rng), ny = size(rng), nz = size(rng);
    const FiniteMap f = random_map(rng, nx, ny);
    const FiniteMap g = random_map(rng, nz, ny);
    std::vector<std::size_t> to_x, to_z;
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t z = 0; z < nz; ++z) {
        if (f(x) == g(z)) {
          to_x.push_back(x);
          to_z.push_back(z);
        }
      }
    }
    const ExpClass h = random_class(rng, nx, p);
    const ExpClass lhs = pullback(g, pushforward(f, h));
    if (to_x.empty()) {
      c.expect(lhs.is_zero(), "empty fiber product, trial " + std::to_string(trial));
      continue;
    }
    const FiniteSet w(to_x.size());
    const FiniteMap pr_x(w, FiniteSet(nx), to_x);
    const FiniteMap pr_z(w, FiniteSet(nz), to_z);
    c.expect(lhs == pushforward(pr_z, pullback(pr_x, h)), "trial " + std::to_string(trial));
  }
}

void projection_formula(Checks& c, std::mt19937_64& rng, int p) {
  std::uniform_int_distribution<std::size_t> size(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nx = size(rng), ny = size(rng);
    const FiniteMap f = random_map(rng, nx, ny);
    const ExpClass h = random_class(rng, nx, p);
    const ExpClass k = random_class(rng, ny, p);
    c.expect(pushforward(f, conv(h, pullback(f, k))) == conv(pushforward(f, h), k),
             "trial " + std::to_string(trial));
  }
}

void add_finite_cases(std::vector<CaseSpec>& cases, const SuiteParams& params) {
  for (int p : params.primes) {
    const std::string ps = "-p" + std::to_string(p);
    const int max_base = p <= 5 ? params.bound : std::min(params.bound, 3);
    cases.push_back({"additivity" + ps, "$f^*\\EE \\overset{+}{\\otimes} g^*\\EE \\simeq (f+g)^*\\EE$",
                     [p, max_base](Checks& c, std::mt19937_64&) {
                       additivity(c, p, max_base);
                       c.note("|X| <= " + std::to_string(max_base));
                     }});
    cases.push_back({"invertibility" + ps, "$\\EE \\overset{+}{\\otimes} [-1]^*\\EE \\simeq \\mathbf{1}_{\\GG_a}$",
                     [p](Checks& c, std::mt19937_64&) { invertibility(c, p); }});
    cases.push_back({"real-kernel-E" + ps, "$\\mathrm{real}_{\\mathcal{L}}(\\EE) \\simeq \\mathcal{L}$",
                     [p](Checks& c, std::mt19937_64&) { real_kernel(c, p); }});
    cases.push_back({"real-unit" + ps, "$\\mathrm{real}_{\\mathcal{L}}(\\mathbf{1}_X) \\simeq \\mathcal{O}_X$",
                     [p](Checks& c, std::mt19937_64&) { real_unit(c, p); }});
    cases.push_back({"base-change" + ps, "$g^*f_! \\simeq f'_!g'^*$",
                     [p](Checks& c, std::mt19937_64& rng) { base_change(c, rng, p); }});
    cases.push_back({"projection-formula" + ps,
                     "$f_!(K \\overset{+}{\\otimes} f^*M) \\simeq f_!K \\overset{+}{\\otimes} M$",
                     [p](Checks& c, std::mt19937_64& rng) { projection_formula(c, rng, p); }});
    for (int r : params.ranks) {
      const std::string prs = ps + "-r" + std::to_string(r);
      cases.push_back({"orthogonality" + prs, "$q_!m^*\\EE \\simeq s_!\\mathbf{1}_S[-2r](-r)$",
                       [p, r](Checks& c, std::mt19937_64&) { orthogonality(c, p, r); }});
      cases.push_back({"ft-inversion" + prs,
                       "$\\mathbf{FT}_{V^{\\vee}}\\circ\\mathbf{FT}_{V}(K) \\simeq a_!K(-r)$",
                       [p, r](Checks& c, std::mt19937_64&) { inversion(c, p, r); }});
      cases.push_back({"ft-shear" + prs, "$(x,y,t)\\mapsto (x,y, t+m(x,y))$",
                       [p, r](Checks& c, std::mt19937_64&) { shear_oracle(c, p, r); }});
      cases.push_back({"real-ft-compat" + prs,
                       "$\\mathrm{real}_1\\circ\\mathbf{FT}_V \\simeq \\mathbf{FT}^{dR}_V\\circ\\mathrm{real}_1$",
                       [p, r](Checks& c, std::mt19937_64&) { realization_compat(c, p, r); }});
    }
  }
}

// ---------------------------------------------------------------------------
// Weyl algebra and Groebner bases

WeylElt random_weyl(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> terms(1, 4);
  std::uniform_int_distribution<int> ex(0, 2);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  WeylElt out(n);
  while (out.is_zero()) {
    const int k = terms(rng);
    for (int i = 0; i < k; ++i) {
      WeylMonomial m(n);
      for (int j = 0; j < 2 * n; ++j) m[j] = ex(rng);
      out.add_term(m, fraction(num(rng), den(rng)));
    }
  }
  return out;
}

std::vector<int> all_vars(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

const std::vector<Rational>& lambdas_signed() {
  static const std::vector<Rational> l{Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2)};
  return l;
}

WeylElt t_op() { return WeylElt::x(1, 0); }
WeylElt d_op() { return WeylElt::d(1, 0); }
WeylElt q(const Rational& c) { return WeylElt::constant(1, c); }

WeylElt two_point_op(const Rational& beta) { return t_op() * (t_op() - q(1)) * d_op() - q(beta); }

// Regular holonomic inputs used by the realization checks.
std::vector<std::pair<std::string, CyclicModule>> regular_modules() {
  return {{"O", make_O()},
          {"delta_0", make_delta(0)},
          {"delta_2", make_delta(2)},
          {"kummer_1/3", make_kummer(Rational(1, 3))},
          {"kummer_1/2", make_kummer(Rational(1, 2))},
          {"kummer_2", make_kummer(Rational(2))},
          {"two_point_1/3", CyclicModule::from_generators({two_point_op(Rational(1, 3))})}};
}

// Generator lists of every ideal the suites build.
std::vector<std::vector<WeylElt>> suite_ideals() {
  std::vector<std::vector<WeylElt>> out;
  for (const auto& l : lambdas_signed()) out.push_back({d_op() - q(l)});
  out.push_back({d_op()});
  out.push_back({t_op()});
  out.push_back({t_op() - q(2)});
  for (const Rational& a : {Rational(1, 3), Rational(1, 2), Rational(2)}) out.push_back({t_op() * d_op() - q(a)});
  out.push_back({two_point_op(Rational(1, 3))});
  out.push_back(exp_kernel_module().ideal().basis());
  const int second = 1;
  out.push_back(fourier_module(exp_kernel_module(), std::span<const int>(&second, 1)).ideal().basis());
  for (const Rational& l : {Rational(1), Rational(-2)}) {
    out.push_back(sum_pullback(make_L(l)).ideal().basis());
    out.push_back(external_product(make_L(l), make_L(l)).ideal().basis());
  }
  return out;
}

void add_weyl_cases(std::vector<CaseSpec>& cases) {
  cases.push_back({"weyl-relation-dx", "$\\partial_t t = t\\partial_t + 1$", [](Checks& c, std::mt19937_64&) {
                     c.expect(d_op() * t_op() == t_op() * d_op() + q(1), "d*x");
                     const WeylElt lhs = power(d_op(), 2) * power(t_op(), 2);
                     const WeylElt rhs = power(t_op(), 2) * power(d_op(), 2) + q(4) * t_op() * d_op() + q(2);
                     c.expect(lhs == rhs, "d^2*x^2 = " + lhs.to_string());
                     c.expect(lhs.to_string() == "x^2*d^2 + 4*x*d + 2", "canonical text " + lhs.to_string());
                   }});
  cases.push_back({"adjoint-anti-homomorphism", "$(\\partial_t-\\lambda)^* = -\\partial_t-\\lambda$",
                   [](Checks& c, std::mt19937_64& rng) {
                     for (const auto& l : lambdas_signed()) {
                       c.expect(adjoint(d_op() - q(l)) == -d_op() - q(l), "adjoint of d - " + str(l));
                     }
                     for (int i = 0; i < 50; ++i) {
                       const int n = 1 + i % 2;
                       const WeylElt a = random_weyl(rng, n), b = random_weyl(rng, n);
                       c.expect(adjoint(a * b) == adjoint(b) * adjoint(a), "pair " + std::to_string(i));
                       c.expect(adjoint(a + b) == adjoint(a) + adjoint(b), "additivity, pair " + std::to_string(i));
                       c.expect(adjoint(adjoint(a)) == a, "involution, pair " + std::to_string(i));
                     }
                   }});
  cases.push_back({"fourier-homomorphism", "$t \\mapsto \\partial_t,\\ \\partial_t \\mapsto -t$",
                   [](Checks& c, std::mt19937_64& rng) {
                     const int v0 = 0;
                     const std::span<const int> first(&v0, 1);
                     for (const auto& l : lambdas_signed()) {
                       c.expect(fourier_auto(d_op() - q(l), first) == -t_op() - q(l), "d - " + str(l));
                     }
                     for (int i = 0; i < 50; ++i) {
                       const int n = 1 + i % 2;
                       const auto vars = all_vars(n);
                       const std::span<const int> sel(vars.data(), i % 3 == 2 ? 1 : n);
                       const WeylElt a = random_weyl(rng, n), b = random_weyl(rng, n);
                       c.expect(fourier_auto(a * b, sel) == fourier_auto(a, sel) * fourier_auto(b, sel),
                                "pair " + std::to_string(i));
                     }
                   }});
  cases.push_back({"fourier-double", "$K^{\\wedge\\wedge}\\simeq a^*K$", [](Checks& c, std::mt19937_64& rng) {
                     for (int i = 0; i < 50; ++i) {
                       const int n = 1 + i % 2;
                       const auto vars = all_vars(n);
                       const WeylElt a = random_weyl(rng, n);
                       c.expect(fourier_auto(fourier_auto(a, vars), vars) == sign_flip(a),
                                "element " + std::to_string(i) + ": " + a.to_string());
                     }
                   }});
  cases.push_back({"gb-canonicity", "$\\mathcal{L}_{\\lambda} = A_1/A_1(\\partial_t-\\lambda)$",
                   [](Checks& c, std::mt19937_64& rng) {
                     std::uniform_int_distribution<int> small(-2, 2);
                     std::size_t k = 0;
                     for (const auto& gens : suite_ideals()) {
                       const GroebnerBasis g = buchberger(gens);
                       c.expect(buchberger(g.basis()).basis() == g.basis(), "idempotence, ideal " + std::to_string(k));
                       // Same ideal from a scrambled generating set.
                       std::vector<WeylElt> other;
                       for (auto it = gens.rbegin(); it != gens.rend(); ++it) other.push_back(Rational(3) * *it);
                       if (other.size() > 1) {
                         other[0] += WeylElt::constant(other[0].n(), small(rng)) * other[1];
                         other.push_back(random_weyl(rng, other[0].n()) * gens.front());
                       }
                       c.expect(buchberger(other).basis() == g.basis(), "rebuilt basis differs, ideal " + std::to_string(k));
                       ++k;
                     }
                   }});
  cases.push_back({"bernstein-inequality", "$\\dim \\mathrm{Ch}(M) \\geq n$", [](Checks& c, std::mt19937_64&) {
                     std::size_t k = 0;
                     for (const auto& gens : suite_ideals()) {
                       const GroebnerBasis g = buchberger(gens);
                       const int dim = hilbert_dimension(g);
                       c.expect(dim >= g.n(), "ideal " + std::to_string(k) + " has dimension " + std::to_string(dim));
                       c.expect(is_holonomic(g), "ideal " + std::to_string(k) + " is not holonomic");
                       ++k;
                     }
                   }});
  cases.push_back({"unit-ideal", "$i_0^*\\mathcal{L}_{\\lambda} = \\CC$", [](Checks& c, std::mt19937_64&) {
                     for (const auto& l : lambdas_signed()) {
                       c.expect(buchberger({d_op() + q(l), t_op()}).is_unit(), "{d + " + str(l) + ", x}");
                     }
                   }});
}

// ---------------------------------------------------------------------------
// D-modules

std::string describe(const TwoTermComplex& t) {
  return "ker " + std::to_string(t.dim_ker) + " coker " + std::to_string(t.dim_coker) + " (" +
         t.certificate.to_string() + ")";
}

bool certified(const TwoTermComplex& t) { return t.certificate.kind != CertificateKind::inconclusive; }

const std::vector<Rational>& realization_lambdas() {
  static const std::vector<Rational> l{Rational(1), Rational(2), Rational(-1)};
  return l;
}

void add_dmod_cases(std::vector<CaseSpec>& cases) {
  cases.push_back({"dual-L-lambda", "$\\DD\\mathcal{L}_{\\lambda}\\simeq\\mathcal{L}_{-\\lambda}[2]$",
                   [](Checks& c, std::mt19937_64&) {
                     for (const auto& l : lambdas_signed()) {
                       c.expect(dual(make_L(l)) == make_L(-l), "lambda=" + str(l));
                     }
                   }});
  cases.push_back({"derham-L-lambda", "$\\pi_! \\mathcal{L}_{\\lambda} = 0$", [](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (const auto& l : lambdas_signed()) {
                       const auto t = derham_pushforward(make_L(l), policy);
                       c.expect(t.dim_ker == 0 && t.dim_coker == 0 &&
                                    t.certificate.kind == CertificateKind::exact_triangular,
                                "lambda=" + str(l) + ": " + describe(t));
                     }
                   }});
  cases.push_back({"point-restriction-L", "$i_0^*\\mathcal{L}_{\\lambda} = \\CC$", [](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (const auto& l : lambdas_signed()) {
                       const auto t = point_complex(make_L(-l), 0, policy);
                       c.expect(t.dim_ker == 0 && t.dim_coker == 1 && certified(t),
                                "A/(d + " + str(l) + "): " + describe(t));
                     }
                   }});
  cases.push_back({"sum-pullback-L", "$\\text{sum}^*\\mathcal{L}_{\\lambda} \\simeq \\mathcal{L}_{\\lambda} \\boxtimes \\mathcal{L}_{\\lambda}$",
                   [](Checks& c, std::mt19937_64&) {
                     for (const auto& l : lambdas_signed()) {
                       const CyclicModule lhs = sum_pullback(make_L(l));
                       const CyclicModule rhs = external_product(make_L(l), make_L(l));
                       const CyclicModule expected = CyclicModule::from_generators(
                           {WeylElt::d(2, 0) - WeylElt::constant(2, l), WeylElt::d(2, 1) - WeylElt::constant(2, l)});
                       c.expect(lhs == rhs, "lambda=" + str(l));
                       c.expect(rhs == expected, "lambda=" + str(l) + " presentation");
                     }
                   }});
  cases.push_back({"wedge-involution", "$K^{\\wedge\\wedge}\\simeq a^*K$", [](Checks& c, std::mt19937_64&) {
                     std::vector<CyclicModule> mods;
                     for (auto& [name, m] : regular_modules()) mods.push_back(m);
                     mods.push_back(make_L(3));
                     mods.push_back(exp_kernel_module());
                     for (const auto& m : mods) {
                       const auto vars = all_vars(m.n());
                       std::vector<WeylElt> flipped;
                       for (const auto& g : m.ideal().basis()) flipped.push_back(sign_flip(g));
                       c.expect(fourier_module(fourier_module(m, vars), vars) == CyclicModule::from_generators(flipped),
                                m.ideal().basis().front().to_string());
                     }
                   }});
  cases.push_back({"injectivity-regular", "$\\ker(\\partial_t-\\lambda\\colon K\\to K) = 0$",
                   [](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (const auto& [name, m] : regular_modules()) {
                       for (const auto& l : realization_lambdas()) {
                         const auto r = injectivity_check(m, l, policy);
                         c.expect(r.injective && certified(r.complex),
                                  name + " lambda=" + str(l) + ": " + describe(r.complex));
                       }
                     }
                   }});
  cases.push_back({"injectivity-counterexample", "$K = \\mathcal{L}_{-\\lambda}$",
                   [](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (const auto& l : realization_lambdas()) {
                       const auto r = injectivity_check(make_L(-l), l, policy);
                       c.expect(!r.injective && certified(r.complex), "lambda=" + str(l) + ": " + describe(r.complex));
                     }
                   }});
  cases.push_back({"exp-kernel-restriction", "$\\mathrm{real}_{\\mathcal{L}}(\\EE) \\simeq \\mathcal{L}$",
                   [](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     const int second = 1;
                     const CyclicModule wedge = fourier_module(exp_kernel_module(), std::span<const int>(&second, 1));
                     for (const Rational& l : {Rational(1), Rational(2), Rational(-1)}) {
                       const RestrictionResult r = partial_restrict_last(wedge, l, policy);
                       const GroebnerBasis expected = buchberger({d_op() - q(l)});
                       std::string got;
                       for (const auto& g : r.ideal_out.basis()) got += (got.empty() ? "" : "; ") + g.to_string();
                       c.expect(r.cyclic && ideal_eq(r.ideal_out, expected), "lambda=" + str(l) + ": {" + got + "}");
                       c.expect(r.certificate.kind != CertificateKind::inconclusive, "lambda=" + str(l) + " uncertified");
                     }
                   }});
}

// ---------------------------------------------------------------------------
// Realization and cross-engine coherence

void add_realization_cases(std::vector<CaseSpec>& cases, const SuiteParams& params) {
  cases.push_back({"real-at-delta", "$\\mathrm{real}_{\\lambda}(\\delta_0)$", [](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (const auto& l : realization_lambdas()) {
                       const auto t = real_at(make_delta(0), l, policy);
                       c.expect(t.dim_ker == 0 && t.dim_coker == 1 && t.degree_labels[1] == 0 && certified(t),
                                "lambda=" + str(l) + ": " + describe(t));
                     }
                   }});
  cases.push_back({"real-at-O", "$\\mathrm{real}_{\\lambda}(\\mathcal{O})$", [](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (const auto& l : realization_lambdas()) {
                       const auto t = real_at(make_O(), l, policy);
                       c.expect(t.dim_ker == 0 && t.dim_coker == 0 && certified(t), "lambda=" + str(l) + ": " + describe(t));
                     }
                   }});
  cases.push_back({"real-at-kummer", "$\\mathrm{real}_{\\lambda}(t\\partial_t-\\alpha)$", [](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (const Rational& a : {Rational(1, 3), Rational(1, 2), Rational(2)}) {
                       for (const auto& l : realization_lambdas()) {
                         const auto t = real_at(make_kummer(a), l, policy);
                         c.expect(t.dim_ker == 0 && t.dim_coker == 1 && t.degree_labels[1] == 0 && certified(t),
                                  "alpha=" + str(a) + " lambda=" + str(l) + ": " + describe(t));
                       }
                     }
                   }});
  cases.push_back({"real-t-exact", "$\\mathrm{real}_{\\lambda}\\colon E(X) \\to D_{\\mathrm{hol}}(X)$ t-exact",
                   [](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (const auto& [name, m] : regular_modules()) {
                       for (const auto& l : realization_lambdas()) {
                         const auto t = real_at(m, l, policy);
                         c.expect(t.dim_ker == 0 && certified(t), name + " lambda=" + str(l) + ": " + describe(t));
                       }
                     }
                   }});
  cases.push_back({"real-faithful", "$\\mathrm{real}_{\\lambda}$ faithful on the heart",
                   [](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (const auto& [name, m] : regular_modules()) {
                       if (name == "O" || name.rfind("two_point", 0) == 0) continue;
                       for (const auto& l : realization_lambdas()) {
                         const auto t = real_at(m, l, policy);
                         c.expect(t.dim_ker + t.dim_coker > 0 && certified(t), name + " lambda=" + str(l) + ": " + describe(t));
                       }
                     }
                   }});

  std::vector<int> primes = params.primes;
  if (std::find(primes.begin(), primes.end(), 7) == primes.end()) primes.push_back(7);
  std::sort(primes.begin(), primes.end());
  cases.push_back({"cross-engine-delta", "$\\mathrm{real}_{\\lambda}(\\delta_c)$", [primes](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (long point : {0L, 2L}) {
                       const auto dm = real_at(make_delta(point), 1, policy);
                       for (int p : primes) {
                         for (long l = 1; l < p; ++l) {
                           const auto v = real_psi(delta(1, p, 0, point), l).front();
                           c.expect(v == psi(point, l, p), "p=" + std::to_string(p));
                           c.expect((dm.dim_coker == 0) == v.is_zero(), "vanishing mismatch at c=" + std::to_string(point));
                         }
                       }
                     }
                   }});
  cases.push_back({"cross-engine-unit", "$\\mathrm{real}_{\\mathcal{L}}(\\mathbf{1}_X) \\simeq \\mathcal{O}_X$",
                   [primes](Checks& c, std::mt19937_64&) {
                     const auto dm = real_at(make_delta(0), 1, TruncationPolicy::from_environment());
                     c.expect(dm.dim_coker == 1 && dm.dim_ker == 0, "unit module: " + describe(dm));
                     for (int p : primes) {
                       const auto v = real_psi(unit_1(FiniteSet(1), p), 1).front();
                       c.expect(v == Cyclo::one(p), "p=" + std::to_string(p));
                     }
                   }});
  cases.push_back({"cross-engine-constant", "$\\mathrm{real}_{\\lambda}(\\mathcal{O}) = 0$",
                   [primes](Checks& c, std::mt19937_64&) {
                     const auto dm = real_at(make_O(), 1, TruncationPolicy::from_environment());
                     c.expect(dm.dim_coker == 0 && dm.dim_ker == 0, "O: " + describe(dm));
                     for (int p : primes) {
                       ExpObject constant(FiniteSet(1), p);
                       for (long t = 0; t < p; ++t) constant.at(0, t) = Cyclo::one(p);
                       const ExpClass h(std::move(constant));
                       c.expect(h.is_zero(), "constant class is nonzero at p=" + std::to_string(p));
                       for (long l = 1; l < p; ++l) c.expect(real_psi(h, l).front().is_zero(), "p=" + std::to_string(p));
                     }
                   }});
  cases.push_back({"cross-engine-exp-pushforward", "$\\pi_! \\mathcal{L}_{\\lambda} = 0$",
                   [primes](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     for (const auto& l : realization_lambdas()) {
                       const auto dm = derham_pushforward(make_L(l), policy);
                       c.expect(dm.dim_ker == 0 && dm.dim_coker == 0, "lambda=" + str(l) + ": " + describe(dm));
                     }
                     for (int p : primes) {
                       const ExpClass e = kernel_E(p);
                       const ExpClass total = pushforward(FiniteMap::constant(e.base(), FiniteSet(1), 0), e);
                       for (long l = 1; l < p; ++l) c.expect(real_psi(total, l).front().is_zero(), "p=" + std::to_string(p));
                     }
                   }});
  cases.push_back({"cross-engine-square-map", "$\\mathrm{real}_{\\lambda}(t\\partial_t-\\tfrac{1}{2})$",
                   [primes](Checks& c, std::mt19937_64&) {
                     const auto policy = TruncationPolicy::from_environment();
                     const auto dm = real_at(make_kummer(Rational(1, 2)), 1, policy);
                     c.expect(dm.dim_coker == 1 && dm.dim_ker == 0, "kummer 1/2: " + describe(dm));
                     for (int p : primes) {
                       // The square map's pushforward splits off the quadratic character;
                       // its realization over a point is the Gauss sum, |g|^2 = p.
                       const ExpClass sq = square_pushforward(p);
                       const ExpClass total = pushforward(FiniteMap::constant(sq.base(), FiniteSet(1), 0), sq);
                       for (long l = 1; l < p; ++l) {
                         const Cyclo g = real_psi(total, l).front();
                         c.expect(g == oracle::gauss_enumerate(p, l), "p=" + std::to_string(p) + " pipeline vs enumeration");
                         c.expect(!g.is_zero(), "p=" + std::to_string(p) + " Gauss sum vanishes");
                         const long sign = oracle::legendre(-1, p);
                         c.expect(g * g == embed_rational(Rational(sign * p), p),
                                  "p=" + std::to_string(p) + " g^2 != (-1/p) p");
                       }
                     }
                   }});
  cases.push_back({"kloosterman-pipeline", "$\\sum_{x} \\psi(x + a x^{-1})$", [primes](Checks& c, std::mt19937_64&) {
                     for (int p : primes) {
                       for (long a = 1; a < p; ++a) {
                         c.expect(kloosterman_sum(p, a) == oracle::kloosterman_enumerate(p, a),
                                  "p=" + std::to_string(p) + " a=" + std::to_string(a));
                       }
                     }
                   }});
}

void validate(const SuiteParams& params) {
  if (params.primes.empty()) throw UsageError("no primes given");
  if (params.ranks.empty()) throw UsageError("no ranks given");
  for (int p : params.primes) {
    if (p < 3 || p > 31 || !is_prime(p)) throw UsageError("invalid prime: " + std::to_string(p));
  }
  for (int r : params.ranks) {
    if (r < 1 || r > 3) throw UsageError("invalid rank: " + std::to_string(r));
    for (int p : params.primes) {
      double size = 1;
      for (int i = 0; i < 2 * r + 1; ++i) size *= p;
      if (size > 2.0e6) {
        throw UsageError("invalid rank: p=" + std::to_string(p) + " r=" + std::to_string(r) + " is too large");
      }
    }
  }
  if (params.bound < 1 || params.bound > 5) throw UsageError("invalid bound: " + std::to_string(params.bound));
}

std::vector<CaseSpec> collect(const std::string& name, const SuiteParams& params) {
  std::vector<CaseSpec> cases;
  const bool all = name == "all";
  if (all || name == "finite-identities") add_finite_cases(cases, params);
  if (all || name == "weyl-core") add_weyl_cases(cases);
  if (all || name == "dmod-core") add_dmod_cases(cases);
  if (all || name == "realization") add_realization_cases(cases, params);
  return cases;
}

CaseResult run_case(const CaseSpec& spec, std::uint64_t seed) {
  CaseResult r{spec.id, spec.anchor, CaseStatus::pass, {}};
  std::mt19937_64 rng(seed ^ fnv1a(spec.id));
  try {
    Checks checks;
    spec.run(checks, rng);
    r.status = checks.passed() ? CaseStatus::pass : CaseStatus::fail;
    r.details = checks.details();
  } catch (const std::exception& e) {
    r.status = CaseStatus::error;
    r.details = e.what();
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"finite-identities", "weyl-core", "dmod-core", "realization", "all"};
  return names;
}

bool SuiteReport::all_pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.status == CaseStatus::pass; });
}

int SuiteReport::exit_code() const {
  bool failed = false, errored = false;
  for (const auto& c : cases) {
    failed |= c.status == CaseStatus::fail;
    errored |= c.status == CaseStatus::error;
  }
  return failed ? 1 : (errored ? 3 : 0);
}

SuiteReport run_suite(const std::string& name, const SuiteParams& params) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown suite: " + name);
  validate(params);

  std::vector<CaseSpec> specs = collect(name, params);
  std::sort(specs.begin(), specs.end(), [](const CaseSpec& a, const CaseSpec& b) { return a.id < b.id; });

  SuiteReport report{name, std::vector<CaseResult>(specs.size()), params};
  unsigned workers = params.threads != 0 ? params.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, specs.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) report.cases[i] = run_case(specs[i], params.seed);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return report;
}

const char* to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass:
      return "pass";
    case CaseStatus::fail:
      return "fail";
    case CaseStatus::error:
      break;
  }
  return "error";
}

json to_json(const SuiteReport& r) {
  json cases = json::array();
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& c : r.cases) {
    ++counts[static_cast<int>(c.status)];
    cases.push_back(json{{"id", c.id},
                         {"paper_anchor", c.paper_anchor},
                         {"status", to_string(c.status)},
                         {"details", c.details}});
  }
  return json{{"schema", kSchema},
              {"suite", r.suite},
              {"parameters",
               {{"primes", r.params.primes},
                {"ranks", r.params.ranks},
                {"seed", r.params.seed},
                {"bounds",
                 {{"additivity_max_base", r.params.bound},
                  {"max_degree", TruncationPolicy::from_environment().hard_cap}}}}},
              {"cases", std::move(cases)},
              {"summary", {{"pass", counts[0]}, {"fail", counts[1]}, {"error", counts[2]}}}};
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& c : r.cases) width = std::max(width, c.id.size());
  for (const auto& c : r.cases) {
    out << to_string(c.status) << std::string(c.status == CaseStatus::error ? 1 : 2, ' ') << c.id
        << std::string(width - c.id.size() + 2, ' ') << c.details << '\n';
  }
  std::size_t passed = 0;
  for (const auto& c : r.cases) passed += c.status == CaseStatus::pass;
  out << r.suite << ": " << passed << "/" << r.cases.size() << " cases passed\n";
  return out.str();
}

}  // namespace explab
