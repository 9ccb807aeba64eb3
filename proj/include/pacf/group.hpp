#pragma once

// Finite groups acting on finite fields by automorphisms: fixed fields,
// faithfulness, Galois data, codes of finite sets, K-irreducibility of
// Galois-stable finite sets and the algebraic strong-PAC probe.

#include <string>
#include <vector>

#include "pacf/field.hpp"
#include "pacf/poly.hpp"

namespace pacf {

class FiniteGroup {
public:
    FiniteGroup() = default;
    /// table[a][b] = index of a*b; verified to be a group.
    FiniteGroup(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table);
    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup trivial() { return cyclic(1); }

    std::size_t size() const { return names_.size(); }
    std::size_t identity() const { return identity_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse(std::size_t a) const;
    std::size_t order(std::size_t a) const;
    const std::string& name(std::size_t a) const { return names_[a]; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> table_;
    std::size_t identity_ = 0;
};

/// An automorphism of GF(p^k), stored as the image of the power-basis generator.
struct FieldAutomorphism {
    ConstFieldPtr field;
    Code image;

    Code apply(Code x) const;
    FieldAutomorphism compose(const FieldAutomorphism& inner) const;  // this after inner
    bool is_identity() const { return image == field->generator(); }
    /// j with image = g^(p^j).
    unsigned frobenius_power() const;
};

/// Automorphism g -> c, verified (c must be a root of the defining polynomial).
FieldAutomorphism make_automorphism(const ConstFieldPtr& K, Code image);
FieldAutomorphism frobenius_automorphism(const ConstFieldPtr& K, unsigned power = 1);

class FieldAction {
public:
    /// sigma[i] acts for group element i; the homomorphism property is verified.
    FieldAction(FiniteGroup G, ConstFieldPtr K, std::vector<FieldAutomorphism> sigma);
    /// Cyclic group of order n whose generator acts by `generator_image`.
    static FieldAction cyclic(std::size_t n, const FieldAutomorphism& generator_image);

    const FiniteGroup& group() const { return G_; }
    const ConstFieldPtr& field() const { return K_; }
    const FieldAutomorphism& sigma(std::size_t g) const { return sigma_[g]; }

private:
    FiniteGroup G_;
    ConstFieldPtr K_;
    std::vector<FieldAutomorphism> sigma_;
};

struct GaloisGroup {
    FiniteGroup group;
    std::vector<FieldAutomorphism> automorphisms;  // one per group element
    unsigned base_degree = 1;                      // [F : F_p]
};
/// Aut(K/F) for F the subfield of K of degree base_degree over F_p.
GaloisGroup galois_group(const ConstFieldPtr& K, unsigned base_degree);

struct Subfield {
    unsigned degree = 0;             // over F_p
    std::vector<Code> basis;         // F_p-basis inside K
    ConstFieldPtr field;             // GF(p^degree)
    std::vector<Code> embedding;     // field -> K, by codes
};
Subfield invariants(const FieldAction& act);
bool is_faithful(const FieldAction& act);

struct GaloisReport {
    Subfield fixed;
    bool separable_algebraic = false;
    bool normal = false;
    bool isomorphic = false;
    std::vector<std::size_t> iso;  // group element -> index in galois.automorphisms
    GaloisGroup galois;
    std::string text;
    bool all_pass() const { return separable_algebraic && normal && isomorphic; }
};
GaloisReport check_galois_data(const FieldAction& act);

/// Elementary symmetric values e_1..e_n of the distinct elements of S.
std::vector<Scalar> code_finite_set(const std::vector<Scalar>& S);

/// K has the same transcendentals as L and constant field a subfield of L's.
/// Galois-stable S inside L is K-irreducible iff Frobenius over K is transitive on S.
bool finite_set_k_irreducible(const std::vector<std::vector<Scalar>>& S, const Field& K);
/// Orbits of S (indices) under the Galois group of L over K.
std::vector<std::vector<std::size_t>> galois_orbits(const std::vector<std::vector<Scalar>>& S, const Field& K);
/// The automorphism of L = GF(q^s)(t..) over K = GF(q)(t..) acting by c -> c^q on constants.
Scalar relative_frobenius(const Scalar& x, const Field& K);

enum class ProbeVerdict { pass_in_f, pass_vacuous, fail };
std::string to_string(ProbeVerdict v);

struct ProbeEntry {
    MultiPoly theta;
    ProbeVerdict verdict = ProbeVerdict::pass_vacuous;
    std::vector<std::size_t> orbit_sizes;
    unsigned splitting_degree = 0;  // solutions live in GF(p^splitting_degree)
    std::string witness;
};
struct ProbeReport {
    std::vector<ProbeEntry> entries;
    bool no_counterexample() const;
};
/// F and K finite with F inside K; thetas univariate over F.
ProbeReport alg_strongly_pac_probe(const Field& F, const Field& K, const std::vector<MultiPoly>& thetas);

}  // namespace pacf
