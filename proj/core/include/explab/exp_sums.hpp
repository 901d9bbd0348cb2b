#pragma once

// Classical exponential sums computed through the finite model: pull the
// kernel back along a map to G_a, push forward to a point, realize at lambda.

#include "explab/cyclotomic.hpp"
#include "explab/finite_model.hpp"

namespace explab {

/// Modular inverse of a unit a mod p.
long inverse_mod(long a, long p);

/// The class on F_p^* of (x, t) -> [t == x + a/x].
ExpClass kloosterman_object(int prime, long a);

/// sum_{x in F_p^*} zeta^(x + a/x), via pushforward to a point and real_psi.
Cyclo kloosterman_sum(int prime, long a);

/// sum_{x in F_p} zeta^(lambda x^2), via the square map and real_psi.
Cyclo gauss_sum(int prime, long lambda);

/// Pushforward of kernel_E along x -> x^2 on F_p: the class of
/// (y, t) -> #{x : x^2 = y} [t == y].
ExpClass square_pushforward(int prime);

}  // namespace explab
