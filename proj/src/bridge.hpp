#pragma once

// Conversion between polynomials over K = GF(q)(t_1..t_m) and dense recursive
// polynomials in GF(q)[t_1..t_m, x_1..x_n] (transcendentals first).

#include "pacf/poly.hpp"
#include "pacf/rpoly.hpp"

namespace pacf::detail {

/// f times the lcm of its coefficient denominators.
RPoly to_rpoly(const MultiPoly& f);
MultiPoly from_rpoly(const Ring& r, const RPoly& f);

}  // namespace pacf::detail
