#pragma once

// Cyclic modules A_n / I and the operations used to compute restrictions,
// de Rham pushforwards and realizations.
//
// Kernels and cokernels of u -> A*u are computed as plain linear maps on
// truncated bases of standard monomials. The set {u : A*u in I} is not a left
// ideal, so no ideal-sum shortcut is used.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "explab/groebner.hpp"

namespace explab {

class CyclicModule {
 public:
  explicit CyclicModule(GroebnerBasis ideal, std::string note = {});
  static CyclicModule from_generators(const std::vector<WeylElt>& gens, std::string note = {});

  int n() const noexcept { return ideal_.n(); }
  const GroebnerBasis& ideal() const noexcept { return ideal_; }
  bool is_zero_module() const { return ideal_.is_unit(); }
  /// The generator when the reduced basis has exactly one element.
  std::optional<WeylElt> principal_generator() const;
  /// Free-form flag set by constructors, e.g. "not an exponential module".
  const std::string& note() const noexcept { return note_; }

  friend bool operator==(const CyclicModule& a, const CyclicModule& b) {
    return ideal_eq(a.ideal_, b.ideal_);
  }

 private:
  GroebnerBasis ideal_;
  std::string note_;
};

enum class CertificateKind { exact_triangular, stabilized, inconclusive };

struct Certificate {
  CertificateKind kind = CertificateKind::inconclusive;
  int low = 0;   // stabilized: first agreeing truncation degree
  int high = 0;  // stabilized: last agreeing truncation degree

  /// "exact-triangular", "stabilized(d, d+2)" or "inconclusive".
  std::string to_string() const;
};

/// Kernel and cokernel data of m -> A*m. degree_labels give the cohomological
/// degrees of (kernel, cokernel).
struct TwoTermComplex {
  int dim_ker = 0;
  int dim_coker = 0;
  std::array<int, 2> degree_labels{-1, 0};
  std::vector<WeylElt> ker_witnesses;
  std::vector<WeylElt> coker_witnesses;
  Certificate certificate;
};

struct RestrictionResult {
  GroebnerBasis ideal_out;
  bool cyclic = false;
  Certificate certificate;
};

/// Truncation escalation: start at `start` (auto when <= 0) and raise the
/// degree by one until a certificate is found or `hard_cap` is passed.
struct TruncationPolicy {
  int start = 0;
  int hard_cap = 60;
  bool escalate = true;

  /// hard_cap from EXPLAB_MAX_DEGREE when set.
  static TruncationPolicy from_environment();
};

/// A_1 / A_1 (d - lambda). lambda = 0 gives O, flagged in note().
CyclicModule make_L(const Rational& lambda);
/// O = A_1 / A_1 d.
CyclicModule make_O();
/// delta_c = A_1 / A_1 (t - c).
CyclicModule make_delta(const Rational& c);
/// A_1 / A_1 (t d - alpha).
CyclicModule make_kummer(const Rational& alpha);
/// A_2 / (x1 - x2, d1 + d2): the diagonal pushforward of O on G_a.
CyclicModule exp_kernel_module();

/// A_1 / A_1 adjoint(P), monic. Requires n = 1, principal, positive d-order.
CyclicModule dual(const CyclicModule& m);

/// A_n / A_n fourier_auto(I) on the given (0-based) variables.
CyclicModule fourier_module(const CyclicModule& m, std::span<const int> vars);

/// Pullback along the group law (x1, x2) -> x1 + x2 of a principal A_1
/// module A_1/A_1 P: generated by P(x1 + x2, d1) and d1 - d2.
CyclicModule sum_pullback(const CyclicModule& m);
/// A_2 / (P(x1, d1), Q(x2, d2)) for principal A_1 modules.
CyclicModule external_product(const CyclicModule& a, const CyclicModule& b);

/// Left multiplication by A on M. Throws CertificateError when the cap is
/// reached without a certificate.
TwoTermComplex mult_complex(const CyclicModule& m, const WeylElt& a,
                            const TruncationPolicy& policy = TruncationPolicy::from_environment());

/// Multiplication by (t - c), labels (-1, 0): dimensions of i_c^! M [1].
TwoTermComplex point_complex(const CyclicModule& m, const Rational& c,
                             const TruncationPolicy& policy = TruncationPolicy::from_environment());

/// Multiplication by d, labels (-1, 0): the de Rham complex of M on A^1.
TwoTermComplex derham_pushforward(const CyclicModule& m,
                                  const TruncationPolicy& policy = TruncationPolicy::from_environment());

/// Realization at lambda: adjoint, then Fourier, then point_complex at
/// -lambda, then the duality flip of degrees. The result's labels are (1, 0):
/// the cokernel sits in degree 0.
TwoTermComplex real_at(const CyclicModule& m, const Rational& lambda,
                       const TruncationPolicy& policy = TruncationPolicy::from_environment());

struct InjectivityResult {
  bool injective = false;
  TwoTermComplex complex;
};

/// Whether t - lambda is injective on fourier_module(M).
InjectivityResult injectivity_check(const CyclicModule& m, const Rational& lambda,
                                    const TruncationPolicy& policy = TruncationPolicy::from_environment());

/// Restriction of an A_2 module to x2 = c: the annihilator in A_1 of the
/// image of 1 in M / (x2 - c) M. Throws "restriction unsupported for this
/// module" when the cokernel is zero or not cyclic, or x2 - c is not
/// injective.
RestrictionResult partial_restrict_last(const CyclicModule& m, const Rational& c,
                                        const TruncationPolicy& policy = TruncationPolicy::from_environment());

/// d-order of the principal generator.
int holonomic_rank(const CyclicModule& m);

}  // namespace explab
