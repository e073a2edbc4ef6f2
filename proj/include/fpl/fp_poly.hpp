#pragma once

// Dense polynomials over the prime field F_p (constant term first). Used by
// the irreducibility machinery; zero is the empty vector.

#include <vector>

#include "fpl/modarith.hpp"

namespace fpl::fp_poly {

using Poly = std::vector<u64>;

void trim(Poly& a);
Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
/// Remainder of a modulo a nonzero polynomial f.
Poly mod(Poly a, const Poly& f, u64 p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p);
Poly powmod(Poly base, u64 e, const Poly& f, u64 p);
/// Monic gcd (empty if both inputs are zero).
Poly gcd(Poly a, Poly b, u64 p);
/// Evaluates a at x by Horner's rule.
u64 eval(const Poly& a, u64 x, u64 p);

}  // namespace fpl::fp_poly
