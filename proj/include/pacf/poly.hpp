#pragma once

// Sparse multivariate polynomials over a base field K, monomial orders,
// ideals with cached Groebner bases, elimination, dimension and membership.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pacf/field.hpp"

namespace pacf {

class PolyRing;
using Ring = std::shared_ptr<const PolyRing>;

class PolyRing {
public:
    PolyRing(Field field, std::vector<std::string> vars);

    const Field& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    std::optional<std::size_t> index_of(const std::string& name) const;
    bool same_as(const PolyRing& o) const;

private:
    Field field_;
    std::vector<std::string> vars_;
};

Ring make_ring(const Field& field, const std::vector<std::string>& vars);
void require_same_ring(const Ring& a, const Ring& b, const char* what);

using Mono = std::vector<unsigned>;

enum class OrderKind { grevlex, lex, block };

/// grevlex, lex (variable 0 largest), or a block order comparing the
/// variables flagged in `first` by grevlex before the remaining ones.
struct MonomialOrder {
    OrderKind kind = OrderKind::grevlex;
    std::vector<bool> first;

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder lex() { return {OrderKind::lex, {}}; }
    static MonomialOrder block(std::vector<bool> first) { return {OrderKind::block, std::move(first)}; }

    /// <0, 0, >0 as a is smaller, equal, larger than b.
    int compare(const Mono& a, const Mono& b) const;
    std::string key() const;
};

class MultiPoly {
public:
    using Terms = std::map<Mono, Scalar>;

    MultiPoly() = default;
    static MultiPoly zero(const Ring& r);
    static MultiPoly constant(const Ring& r, const Scalar& c);
    static MultiPoly constant(const Ring& r, long long c);
    static MultiPoly var(const Ring& r, std::size_t i);
    static MultiPoly var(const Ring& r, const std::string& name);
    static MultiPoly monomial(const Ring& r, Mono m, const Scalar& c);

    const Ring& ring() const { return ring_; }
    const Field& field() const { return ring_->field(); }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_term() const;
    unsigned total_degree() const;
    unsigned degree_in(std::size_t i) const;
    bool involves(std::size_t i) const;
    std::vector<bool> support() const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Scalar& c) const;
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly pow(unsigned e) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    std::pair<Mono, Scalar> leading(const MonomialOrder& ord) const;
    MultiPoly monic(const MonomialOrder& ord) const;

    Scalar eval(const std::vector<Scalar>& point) const;
    MultiPoly partial(std::size_t i) const;
    /// Replace variable i by images[i] (polynomials of `target`).
    MultiPoly substitute(const Ring& target, const std::vector<MultiPoly>& images) const;
    /// Same polynomial viewed in a ring whose variables include ours (by name).
    MultiPoly embed(const Ring& target) const;
    /// Apply a map to every coefficient (result in ring `target`, same variables).
    template <class Fn>
    MultiPoly map_coefficients(const Ring& target, Fn&& fn) const {
        MultiPoly r = zero(target);
        for (const auto& [m, c] : terms_) {
            Scalar v = fn(c);
            if (!v.is_zero()) r.terms_.emplace(m, std::move(v));
        }
        return r;
    }

    std::string to_string() const;

private:
    Ring ring_;
    Terms terms_;
    friend class PolyBuilder;
};

/// Accumulates terms without intermediate normalization.
class PolyBuilder {
public:
    explicit PolyBuilder(const Ring& r) : poly_(MultiPoly::zero(r)) {}
    void add(const Mono& m, const Scalar& c);
    MultiPoly take() { return std::move(poly_); }

private:
    MultiPoly poly_;
};

/// Polynomial DSL: sums of products of integers, ring variables, field
/// transcendentals and the constant-field generator `g`, with ^, unary minus,
/// parentheses, and division by nonzero field constants.
MultiPoly parse_poly(const Ring& r, const std::string& text);

/// A quotient of polynomials, as parsed from the same DSL with polynomial
/// denominators allowed.
struct RationalExpr {
    MultiPoly num, den;
};
RationalExpr parse_rational(const Ring& r, const std::string& text);
RationalExpr rational(const MultiPoly& p);
RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
/// nullopt when the denominator vanishes at the point.
std::optional<Scalar> eval(const RationalExpr& e, const std::vector<Scalar>& point);
std::string to_string(const RationalExpr& e);

struct GroebnerLimits {
    std::size_t max_basis = 4000;
    unsigned max_degree = 400;
    std::size_t max_pairs = 400000;
};

class Ideal {
public:
    Ideal() = default;
    Ideal(Ring r, std::vector<MultiPoly> gens);

    const Ring& ring() const { return ring_; }
    const std::vector<MultiPoly>& gens() const { return gens_; }

    /// Reduced Groebner basis, cached per order.
    const std::vector<MultiPoly>& basis(const MonomialOrder& ord = MonomialOrder::grevlex()) const;

private:
    struct Cache {
        std::mutex mu;
        std::map<std::string, std::shared_ptr<const std::vector<MultiPoly>>> bases;
    };
    Ring ring_;
    std::vector<MultiPoly> gens_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Reduced Groebner basis (monic, sorted by decreasing leading monomial).
std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens, const MonomialOrder& ord,
                                      const GroebnerLimits& limits = {});
std::vector<MultiPoly> groebner_basis(const Ideal& I, const MonomialOrder& ord = MonomialOrder::grevlex());

/// Full normal form of f modulo a Groebner basis.
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis, const MonomialOrder& ord);

bool ideal_member(const MultiPoly& f, const Ideal& I);
bool contains_one(const Ideal& I);

/// I intersected with K[variables not in drop]; generators live in the same ring.
Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop);
Ideal eliminate(const Ideal& I, const std::vector<bool>& drop);

/// Krull dimension of V(I) over the algebraic closure; nullopt when 1 in I.
std::optional<int> ideal_dimension(const Ideal& I);

/// f vanishes on V(I) (over the algebraic closure).
bool radical_member(const MultiPoly& f, const Ideal& I);

/// A new ring with extra variables appended; names must be fresh.
Ring extend_ring(const Ring& r, const std::vector<std::string>& extra);
/// First name of the form base, base1, base2, ... not used by r or its field.
std::string fresh_name(const Ring& r, const std::string& base);

}  // namespace pacf
