#pragma once

// Derivations on K = GF(q)(t_1..t_m), prolongations tau^D(V), the section
// D_V, the equalizer E of a pair W over V, and the two sides of the kerprol
// equivalence (dominance of E -> W versus solvability of the extension).

#include <optional>
#include <string>
#include <vector>

#include "pacf/variety.hpp"

namespace pacf {

class DerivationContext {
public:
    DerivationContext() = default;
    /// images[j] = D(t_j); missing images are zero. On a finite field D = 0.
    DerivationContext(Field K, std::vector<Scalar> images = {});
    /// d/dt_j
    static DerivationContext standard(const Field& K, int j = 0);

    const Field& field() const { return field_; }
    const std::vector<Scalar>& images() const { return images_; }
    bool is_zero() const;

    Scalar apply(const Scalar& c) const;
    /// g^D: D applied to every coefficient.
    MultiPoly apply_coefficients(const MultiPoly& g) const;
    /// D(g(a)) = sum_i dg/dx_i(a) * da_i + g^D(a).
    Scalar total(const MultiPoly& g, const std::vector<Scalar>& a, const std::vector<Scalar>& da) const;

    std::string to_string() const;

private:
    Field field_;
    std::vector<Scalar> images_;
};

struct ProlongationGenerator {
    std::size_t source;  // index into the source generators
    bool linear;         // false: the source generator itself
};

struct ProlongationBundle {
    AffineVariety source;
    AffineVariety tau;  // variables: source variables, then derivative variables
    std::vector<ProlongationGenerator> provenance;  // one per generator of tau
    std::size_t n = 0;

    /// Coordinates of the projection tau -> V.
    std::vector<RationalExpr> projection() const;
};

/// Default derivative names: "d" + name, made fresh.
std::vector<std::string> derivative_names(const Ring& r, std::size_t count);

/// Prolongation built from the given generators of V.
ProlongationBundle prolongation(const AffineVariety& V, const DerivationContext& D,
                                std::vector<std::string> dnames = {});

/// (a, D(a)) for a rational point a of V.
std::vector<Scalar> nabla_point(const ProlongationBundle& tau, const DerivationContext& D,
                                const std::vector<Scalar>& a);

/// Images of the coordinates under a derivation of K(V) extending D (free
/// coordinates sent to 0); nullopt when no extension exists. V K-irreducible.
std::optional<std::vector<FunctionFieldElem>> nabla_generic(const AffineVariety& V, const DerivationContext& D);

/// W lives in variables (x, u) with x those of V; decides W inside tau^D(V).
Verdict derivation_extends(const AffineVariety& V, const AffineVariety& W, const DerivationContext& D);

struct EqualizerData {
    ProlongationBundle tau_w;  // tau^D(W) in (x, u, dx, du)
    AffineVariety E;           // tau^D(W) cut by dx = u
};
EqualizerData equalizer(const AffineVariety& V, const AffineVariety& W, const DerivationContext& D);

/// The projection E -> W is dominant.
Verdict kerprol_check(const AffineVariety& V, const AffineVariety& W, const DerivationContext& D);

/// A derivation on K(W) extending D with D(x) = u exists: solvability of the
/// chain-rule system for D(u) over K(W).
Verdict extension_oracle(const AffineVariety& V, const AffineVariety& W, const DerivationContext& D);

}  // namespace pacf
