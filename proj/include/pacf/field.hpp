#pragma once

// Base fields K = GF(p^k)(t_1, ..., t_m): a finite constant field extended by
// m >= 0 transcendentals. m = 0 gives GF(p^k); k = 1 gives F_p(t_1..t_m).
// Elements are reduced fractions of recursive polynomials with a denominator
// whose leading constant is 1, so equality is representation equality.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pacf/gf.hpp"
#include "pacf/rpoly.hpp"

namespace pacf {

class FieldDescriptor;
using Field = std::shared_ptr<const FieldDescriptor>;

class FieldDescriptor {
public:
    FieldDescriptor(ConstFieldPtr constants, std::vector<std::string> transcendentals);

    Code p() const { return constants_->p(); }
    const ConstField& constants() const { return *constants_; }
    const ConstFieldPtr& constants_ptr() const { return constants_; }
    const std::vector<std::string>& transcendentals() const { return vars_; }
    int m() const { return int(vars_.size()); }
    bool is_finite() const { return vars_.empty(); }
    /// log_p [K : K^p]
    int imperfection_exponent() const { return m(); }
    /// Name used for the generator of GF(p^k) in literals and printing.
    static constexpr const char* kGeneratorName = "g";

    bool same_as(const FieldDescriptor& o) const;
    /// Canonical spec string, e.g. "GF(2,2)" or "Fp(3; t)".
    std::string spec() const;

private:
    ConstFieldPtr constants_;
    std::vector<std::string> vars_;
};

/// Descriptor from a spec string: `GF(p,k)`, `GF(p,k,poly)`, `Fp(p; t,s)`,
/// and the constant-extension form `GF(p,k; t,s)`.
Field make_field(const std::string& spec);
Field make_field(Code p, unsigned k, const std::vector<std::string>& transcendentals = {});
Field make_field(Code p, const ConstField::Modulus& modulus, const std::vector<std::string>& transcendentals = {});
/// Same transcendentals, constants extended to GF(p^(k*s)).
Field constant_extension(const Field& f, unsigned s);

void require_same_field(const Field& a, const Field& b, const char* what);

class Scalar {
public:
    Scalar() = default;
    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar from_int(const Field& f, long long v);
    static Scalar from_code(const Field& f, Code c);
    static Scalar generator(const Field& f);
    static Scalar transcendental(const Field& f, int index);
    static Scalar fraction(const Field& f, RPoly num, RPoly den);

    const Field& field() const { return field_; }
    const RPoly& num() const { return num_; }
    const RPoly& den() const { return den_; }

    bool is_zero() const { return rp::is_zero(num_); }
    bool is_one() const;
    bool is_constant() const { return rp::is_constant(num_) && rp::is_constant(den_); }
    Code constant_code() const;
    /// max total degree of numerator and denominator
    unsigned height() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;
    Scalar pow(long long e) const;

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    /// Deterministic total order (height first); used for enumeration.
    friend bool operator<(const Scalar& a, const Scalar& b);

    std::string to_string() const;

    /// Partial derivative with respect to transcendental `var`.
    Scalar partial(int var) const;
    /// Substitute t_i -> images[i] (elements of `target`, whose constant
    /// field must contain this one).
    Scalar substitute(const Field& target, const std::vector<Scalar>& images) const;

private:
    Field field_;
    RPoly num_, den_;
};

// --- characteristic-p structure maps -------------------------------------

Scalar frobenius(const Scalar& x);
std::optional<Scalar> pth_root(const Scalar& x);
Scalar lambda0(const Scalar& x);

/// Coordinates of x over K^p in the monomial basis t^a, 0 <= a_i < p
/// (lexicographic on exponent vectors): x = sum_a coords[a]^p * t^a.
std::vector<Scalar> p_coordinates(const Scalar& x);

enum class PIndependence { independent, dependent, exceeds_imperfection };
PIndependence p_independence(const std::vector<Scalar>& xs, const Field& K);
bool is_p_independent(const std::vector<Scalar>& xs, const Field& K);

/// The p^e monomials m_{j,e}(b), j = 1..p^e, exponent vectors enumerated
/// lexicographically (so m_1 = 1, m_2 = b_e).
std::vector<Scalar> p_monomials(const std::vector<Scalar>& bs, const Field& K);
std::vector<unsigned> p_monomial_exponents(unsigned j, unsigned e, Code p);

enum class LambdaCase { dependent_basis = 1, independent_with_c = 2, solved = 3 };

struct LambdaFamily {
    LambdaCase which;
    std::vector<Scalar> values;  // lambda_{j,e}(b; c), j = 1..p^e
};

LambdaFamily lambda_family(const std::vector<Scalar>& bs, const Scalar& c);
/// lambda_{i,e}(b_1..b_e; c), 1 <= i <= p^e.
Scalar lambda_multi(unsigned i, unsigned e, const std::vector<Scalar>& bs, const Scalar& c);
/// Unary lambda with respect to a fixed p-basis; verifies the basis.
Scalar lambda_basis(unsigned i, unsigned e, const Scalar& c, const std::vector<Scalar>& basis);
void require_p_basis(const std::vector<Scalar>& basis, const Field& K);

}  // namespace pacf
