#pragma once

// Finite constant fields GF(p^k) and dense univariate polynomials over them.
//
// Elements of GF(p^k) are encoded as integers in [0, q): the base-p digits
// of the code are the coefficients of the element in the power basis
// 1, g, ..., g^(k-1) of the generator g (a root of the defining polynomial).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pacf {

using Code = std::uint32_t;

class ConstField {
public:
    /// Defining polynomial coefficients, low degree first, monic, over F_p.
    using Modulus = std::vector<Code>;

    /// Smallest (lexicographic) monic irreducible polynomial of degree k.
    static Modulus default_modulus(Code p, unsigned k);
    static bool is_irreducible_modulus(Code p, const Modulus& f);

    /// Shared, cached instance. Throws on non-prime p or reducible modulus.
    static std::shared_ptr<const ConstField> get(Code p, unsigned k);
    static std::shared_ptr<const ConstField> get(Code p, const Modulus& modulus);

    Code p() const { return p_; }
    unsigned k() const { return k_; }
    Code q() const { return q_; }
    const Modulus& modulus() const { return modulus_; }

    Code add(Code a, Code b) const;
    Code sub(Code a, Code b) const;
    Code neg(Code a) const;
    Code mul(Code a, Code b) const {
        if (a == 0 || b == 0) return 0;
        Code e = log_[a] + log_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }
    Code inv(Code a) const;
    Code div(Code a, Code b) const { return mul(a, inv(b)); }
    Code pow(Code a, std::uint64_t e) const;
    Code frobenius(Code a) const { return pow(a, p_); }
    /// Inverse of Frobenius (the field is perfect).
    Code pth_root(Code a) const { return pow(a, q_ / p_); }
    Code from_int(long long v) const;
    /// The generator g of the power basis.
    Code generator() const { return k_ == 1 ? (p_ > 1 ? 1 : 0) : p_; }
    Code primitive_element() const { return exp_[1 % (q_ - 1 == 0 ? 1 : q_ - 1)]; }
    /// True when a lies in the prime field.
    bool in_prime_field(Code a) const { return a < p_; }
    std::vector<Code> digits(Code a) const;
    Code from_digits(const std::vector<Code>& d) const;

    bool same_as(const ConstField& o) const {
        return p_ == o.p_ && modulus_ == o.modulus_;
    }

    std::string describe() const;

    ConstField(Code p, Modulus modulus);

private:
    Code p_;
    unsigned k_;
    Code q_;
    Modulus modulus_;
    std::vector<Code> log_, exp_;
    std::vector<Code> add_table_;  // populated for small q only
};

using ConstFieldPtr = std::shared_ptr<const ConstField>;

bool is_prime(std::uint64_t n);

/// Embedding of `small` into `big` as a table indexed by element code.
/// Maps the generator of `small` to the smallest-coded root of its defining
/// polynomial in `big`. Throws when k_small does not divide k_big.
std::vector<Code> embed_table(const ConstField& small, const ConstField& big);

// ---------------------------------------------------------------------------
// Dense univariate polynomials over a ConstField, low degree first; the zero
// polynomial is the empty vector.
namespace upoly {

using UPoly = std::vector<Code>;

void trim(UPoly& a);
int degree(const UPoly& a);
UPoly add(const ConstField& F, const UPoly& a, const UPoly& b);
UPoly sub(const ConstField& F, const UPoly& a, const UPoly& b);
UPoly mul(const ConstField& F, const UPoly& a, const UPoly& b);
UPoly scale(const ConstField& F, const UPoly& a, Code c);
/// Quotient and remainder; divisor must be nonzero.
void divmod(const ConstField& F, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly rem(const ConstField& F, const UPoly& a, const UPoly& b);
UPoly monic(const ConstField& F, const UPoly& a);
UPoly gcd(const ConstField& F, UPoly a, UPoly b);
UPoly derivative(const ConstField& F, const UPoly& a);
UPoly powmod(const ConstField& F, UPoly base, std::uint64_t e, const UPoly& mod);
Code eval(const ConstField& F, const UPoly& a, Code x);

struct Factor {
    UPoly poly;  // monic irreducible
    unsigned multiplicity;
};

/// Complete factorization into monic irreducibles (leading coefficient
/// dropped). Deterministic: factors sorted by (degree, coefficients).
std::vector<Factor> factor(const ConstField& F, const UPoly& a);
std::vector<Code> roots(const ConstField& F, const UPoly& a);

}  // namespace upoly
}  // namespace pacf
