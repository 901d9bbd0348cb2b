#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace explab {

/// Exact rational with arbitrary-precision numerator and denominator.
/// Always kept canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a" or "a/b" with an optional leading sign. Throws explab::Error
/// on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& q);

/// Binomial coefficient C(n, k) for 0 <= k <= n, else 0.
Integer binomial(long n, long k);
Integer factorial(long n);

}  // namespace explab
