#pragma once

// Closed-form reference computations, written as direct loops over points
// without the functorial pipeline. The suites compare pipeline results
// against these.

#include <vector>

#include "explab/cyclotomic.hpp"
#include "explab/finite_model.hpp"

namespace explab::oracle {

/// (s, y, t) -> (-1)^r sum_x h(s, x, t - x.y) on S x F_p^r, fiber index
/// digits least significant first.
ExpObject fourier_closed_form(const ExpObject& h, int rank);

/// (y, t) -> #{x in F_p^r : x.y = t}.
ExpObject incidence_counts(int prime, int rank);

/// p^r [y = 0][t = 0] on F_p^r.
ExpObject scaled_origin_delta(int prime, int rank);

/// sum_{x=1}^{p-1} zeta^(x + a x^(p-2)).
Cyclo kloosterman_enumerate(int prime, long a);

/// sum_{x=0}^{p-1} zeta^(lambda x^2).
Cyclo gauss_enumerate(int prime, long lambda);

/// Legendre symbol (a/p) by Euler's criterion.
int legendre(long a, int prime);

}  // namespace explab::oracle
