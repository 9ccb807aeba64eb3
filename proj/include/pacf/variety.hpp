#pragma once

// Affine varieties over K = GF(q)(t_1..t_m): loci, irreducibility over K and
// over the algebraic closure, dominance of rational maps, rational points,
// and p-structure of function fields K(V).

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pacf/poly.hpp"

namespace pacf {

class AffineVariety {
public:
    AffineVariety() = default;
    AffineVariety(Ring r, std::vector<MultiPoly> gens);
    explicit AffineVariety(Ideal I);

    const Ring& ring() const { return ideal_.ring(); }
    const Field& field() const { return ideal_.ring()->field(); }
    const Ideal& ideal() const { return ideal_; }
    const std::vector<MultiPoly>& gens() const { return ideal_.gens(); }
    std::size_t nvars() const { return ideal_.ring()->nvars(); }

    bool is_empty() const;
    /// nullopt for the empty variety
    std::optional<int> dimension() const;
    bool contains(const std::vector<Scalar>& point) const;

    /// Set when the variety is known to be K-irreducible by construction.
    void mark_irreducible() const;
    std::optional<bool> cached_irreducible() const;
    void cache_irreducible(bool v) const;
    std::optional<bool> cached_absolutely_irreducible() const;
    void cache_absolutely_irreducible(bool v) const;

    std::string to_string() const;

private:
    struct Flags {
        std::mutex mu;
        std::optional<bool> irreducible, absolutely_irreducible;
    };
    Ideal ideal_;
    std::shared_ptr<Flags> flags_ = std::make_shared<Flags>();
};

/// A verdict together with a human-readable certificate.
struct Verdict {
    bool value = false;
    std::string certificate;
};

// --- factorization bridge -----------------------------------------------------

struct PolyFactorK {
    MultiPoly poly;  // irreducible over K, monic in grevlex
    unsigned multiplicity;
};
/// Irreducible factors of f over K (factors constant in the ring variables dropped).
std::vector<PolyFactorK> factor_polynomial(const MultiPoly& f);

// --- construction -------------------------------------------------------------

/// A K-algebra domain K[a_1..a_k]/P with a tuple of elements given as fractions.
struct LocusInput {
    Ring aux;                          // auxiliary generators over K
    std::vector<MultiPoly> relations;  // generators of the prime P (may be empty)
    std::vector<RationalExpr> tuple;   // elements, in `aux`
    std::vector<std::string> names;    // variable names of the output; default x1..xn
};
AffineVariety locus(const LocusInput& in);

// --- irreducibility -------------------------------------------------------------

Verdict irreducibility(const AffineVariety& V);
bool is_irreducible(const AffineVariety& V);
/// max_s = 0 means the total-degree bound.
Verdict absolute_irreducibility(const AffineVariety& V, unsigned max_s = 0);
bool is_absolutely_irreducible(const AffineVariety& V);

/// Elimination of variables occurring linearly with constant coefficient:
/// V is isomorphic to V(residual) in the variables that are not eliminated,
/// and x_i = images[i] on V.
struct GraphPresentation {
    std::vector<bool> eliminated;
    std::vector<MultiPoly> images;
    std::vector<MultiPoly> residual;  // reduced basis, only non-eliminated variables
};
GraphPresentation graph_presentation(const AffineVariety& V);

/// V(f) absolutely irreducible for a hypersurface f over K.
Verdict hypersurface_absolutely_irreducible(const MultiPoly& f, unsigned max_s = 0);

// --- rational maps ------------------------------------------------------------------

struct RationalMapData {
    AffineVariety source;              // W
    AffineVariety target;              // V
    std::vector<RationalExpr> coords;  // in source ring, one per target variable
};

/// The coordinates satisfy the target's equations on the source.
bool maps_into(const RationalMapData& m);
/// Generators of the kernel of K[target] -> K(source) (Zariski closure of the image).
Ideal image_closure(const RationalMapData& m);
Verdict dominance(const RationalMapData& m);
bool is_dominant(const RationalMapData& m);

// --- points ---------------------------------------------------------------------------

/// All elements of K of height <= bound in deterministic order (all of K when finite).
std::vector<Scalar> field_elements(const Field& K, unsigned bound, std::size_t cap = 2000000);

struct PointSearch {
    unsigned bound = 1;                 // height bound (ignored for finite K)
    std::vector<MultiPoly> avoid;       // point must make some avoid[i] nonzero
    std::size_t max_candidates = 20000000;
    std::size_t limit = 0;              // stop after this many points (0 = all)
};
/// Points of V(K) (or of V minus V(avoid)) in deterministic order.
std::vector<std::vector<Scalar>> enumerate_points(const AffineVariety& V, const PointSearch& opts = {});
/// First point satisfying an extra predicate, in the same order.
std::optional<std::vector<Scalar>> find_point(const AffineVariety& V, const PointSearch& opts,
                                              const std::function<bool(const std::vector<Scalar>&)>& accept);

/// Jacobian rank of the defining ideal at a equals the codimension.
bool is_smooth_point(const AffineVariety& V, const std::vector<Scalar>& a);

// --- function fields ------------------------------------------------------------------

class FunctionFieldElem {
public:
    FunctionFieldElem() = default;
    FunctionFieldElem(const AffineVariety& V, MultiPoly num, MultiPoly den);
    static FunctionFieldElem from_expr(const AffineVariety& V, const RationalExpr& e);
    static FunctionFieldElem from_poly(const AffineVariety& V, const MultiPoly& p);
    static FunctionFieldElem constant(const AffineVariety& V, const Scalar& c);

    const AffineVariety& variety() const { return V_; }
    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const;
    FunctionFieldElem operator+(const FunctionFieldElem& o) const;
    FunctionFieldElem operator-(const FunctionFieldElem& o) const;
    FunctionFieldElem operator-() const;
    FunctionFieldElem operator*(const FunctionFieldElem& o) const;
    FunctionFieldElem operator/(const FunctionFieldElem& o) const;
    FunctionFieldElem inverse() const;
    FunctionFieldElem pow(unsigned e) const;
    friend bool operator==(const FunctionFieldElem& a, const FunctionFieldElem& b);
    friend bool operator!=(const FunctionFieldElem& a, const FunctionFieldElem& b) { return !(a == b); }

    /// nullopt when the denominator vanishes at the point.
    std::optional<Scalar> eval(const std::vector<Scalar>& point) const;
    std::string to_string() const;

private:
    struct Unchecked {};
    FunctionFieldElem(Unchecked, const AffineVariety& V, MultiPoly num, MultiPoly den);

    AffineVariety V_;
    MultiPoly num_, den_;
};

enum class TriState { yes, no, undecided };
std::string to_string(TriState t);

/// Decided by the differential criterion (f is a p-th power iff df = 0 in the
/// absolute Kaehler differentials of K(V)); the root is searched with a
/// bounded-degree ansatz and may be absent even when is_power is yes.
struct PPowerResult {
    TriState is_power = TriState::undecided;
    std::optional<FunctionFieldElem> root;
    std::string certificate;
};
struct PPowerOptions {
    unsigned degree_bound = 2;   // ansatz degree for numerator/denominator
    unsigned point_bound = 1;    // height bound for separating points
};
PPowerResult ppower_test(const FunctionFieldElem& f, const PPowerOptions& opts = {});

struct PIndepResult {
    TriState independent = TriState::undecided;
    std::string certificate;
};
PIndepResult pindep_function_field(const std::vector<FunctionFieldElem>& fs, const PPowerOptions& opts = {});

}  // namespace pacf
