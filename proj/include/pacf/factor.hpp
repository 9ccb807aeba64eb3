#pragma once

// Multivariate factorization over finite constant fields. Bivariate cores are
// handled by Hensel lifting at a good specialization point (moving to a
// constant extension and descending by Frobenius orbits when the field is too
// small); more variables are folded into one by Kronecker substitution.

#include <vector>

#include "pacf/gf.hpp"
#include "pacf/rpoly.hpp"

namespace pacf::mfactor {

struct PolyFactor {
    RPoly poly;  // irreducible, leading constant 1
    unsigned multiplicity;
};

/// Irreducible factorization over F in all variables of f (constant factor dropped).
std::vector<PolyFactor> factor(const ConstField& F, const RPoly& f);

/// Nonconstant and irreducible over F.
bool is_irreducible(const ConstField& F, const RPoly& f);

/// Re-encode f over a constant field containing F.
RPoly extend(const ConstField& F, const ConstField& big, const RPoly& f);

/// Smallest s in 1..max_s with f reducible over GF(q^s), or 0 if none.
/// f must be irreducible over F.
unsigned splitting_degree(const ConstFieldPtr& F, const RPoly& f, unsigned max_s);

}  // namespace pacf::mfactor
