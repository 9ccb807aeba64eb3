#pragma once

// Recursive dense polynomials over a finite constant field. A polynomial of
// level L lives in GF(q)[t_0, ..., t_{L-1}] and is stored as a coefficient
// vector in the main variable t_{L-1} whose entries have level L-1.

#include <optional>
#include <vector>

#include "pacf/gf.hpp"

namespace pacf {

struct RPoly {
    int level = 0;
    Code c = 0;              // level 0 only
    std::vector<RPoly> co;   // level > 0 only; trimmed

    friend bool operator==(const RPoly& a, const RPoly& b) {
        return a.level == b.level && a.c == b.c && a.co == b.co;
    }
};

namespace rp {

using Exponents = std::vector<unsigned>;
struct Term {
    Exponents exps;  // indexed by variable
    Code coef;
};

RPoly zero(int level);
RPoly constant(int level, Code c);
RPoly variable(int level, int index);

bool is_zero(const RPoly& a);
/// Constant in every variable.
bool is_constant(const RPoly& a);
/// Value of a constant polynomial.
Code constant_value(const RPoly& a);
/// Coefficient of the recursive-lex leading term.
Code leading_constant(const RPoly& a);
int main_degree(const RPoly& a);
unsigned total_degree(const RPoly& a);
unsigned degree_in(const RPoly& a, int var);

RPoly add(const ConstField& F, const RPoly& a, const RPoly& b);
RPoly sub(const ConstField& F, const RPoly& a, const RPoly& b);
RPoly neg(const ConstField& F, const RPoly& a);
RPoly mul(const ConstField& F, const RPoly& a, const RPoly& b);
RPoly scale(const ConstField& F, const RPoly& a, Code c);
RPoly pow(const ConstField& F, const RPoly& a, unsigned e);

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<RPoly> div_exact(const ConstField& F, const RPoly& a, const RPoly& b);
RPoly gcd(const ConstField& F, const RPoly& a, const RPoly& b);
/// Scale so that the leading constant is 1 (zero stays zero).
RPoly make_monic(const ConstField& F, const RPoly& a);

RPoly derivative(const ConstField& F, const RPoly& a, int var);

/// gcd of the coefficients with respect to the main variable (level - 1).
RPoly content(const ConstField& F, const RPoly& a);
/// a divided by its content, made monic.
RPoly primitive_part(const ConstField& F, const RPoly& a);
/// Rename variables: variable i of `a` becomes variable perm[i].
RPoly permute(const ConstField& F, const RPoly& a, const std::vector<int>& perm);
/// Lift a polynomial of lower level into level `level` (extra variables unused).
RPoly raise(const RPoly& a, int level);

std::vector<Term> terms(const RPoly& a);
RPoly from_terms(const ConstField& F, int level, const std::vector<Term>& ts);

/// Lift a polynomial to a larger constant field through an embedding table.
RPoly map_constants(const RPoly& a, const std::vector<Code>& table);

}  // namespace rp
}  // namespace pacf
