#pragma once

// Instance-level checks of the D-PAC and G-B-DCF axiom schemes, witness
// search, the open-subset PAC task, the SCF reduction to p-independence rows,
// and verification of B-operators.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pacf/differential.hpp"
#include "pacf/formula.hpp"
#include "pacf/group.hpp"
#include "pacf/variety.hpp"

namespace pacf {

enum class ReportStatus { valid_instance, invalid, witness_found, exhausted, resource_exhausted };
std::string to_string(ReportStatus s);

struct BulletVerdict {
    std::string id;
    std::string title;
    bool pass = false;
    std::string certificate;
};

struct CheckReport {
    ReportStatus status = ReportStatus::valid_instance;
    std::vector<BulletVerdict> bullets;
    std::string failed_bullet;     // set when invalid
    std::vector<Scalar> point;     // set when witness_found
    std::vector<std::string> vars; // names for `point`
    unsigned bound = 0;
    std::size_t candidates = 0;    // points of V(K) examined by a search
    std::string message;

    /// pass/witness
    bool ok() const { return status == ReportStatus::valid_instance || status == ReportStatus::witness_found; }
    std::string to_string() const;
};

// --- D-PAC ----------------------------------------------------------------------------

struct DPacInstance {
    DerivationContext D;
    AffineVariety V;              // in x
    AffineVariety W;              // in (x, u)
    std::vector<RationalExpr> f;  // in V's ring
    unsigned bound = 1;           // height bound for witness search
};

/// Bullet ids, in checking order.
inline constexpr const char* kBulletAbsIrr = "absolutely-irreducible";
inline constexpr const char* kBulletContained = "contained-in-prolongation";
inline constexpr const char* kBulletDominant = "projection-dominant";
inline constexpr const char* kBulletEqualizer = "equalizer-dominant";
inline constexpr const char* kBulletAdmissible = "admissible";

CheckReport validate_dpac_instance(const DPacInstance& inst);
/// Runs validation first; throws when the instance is not valid.
CheckReport search_dpac_witness(const DPacInstance& inst);
/// Independent recomputation of the witness conditions at x.
bool reverify_dpac_witness(const DPacInstance& inst, const std::vector<Scalar>& x);

// --- PAC via open subsets -----------------------------------------------------------------

/// Points of V(K) at which some avoidance polynomial is nonzero.
CheckReport pac_witness_task(const AffineVariety& V, const std::vector<MultiPoly>& avoid, unsigned bound);

// --- SCF reduction ------------------------------------------------------------------------

struct ScfAudit {
    std::size_t sampled = 0;      // points of V(K) examined
    std::size_t independent = 0;  // of which every row was p-independent
    std::size_t confirmed = 0;    // of which the formula held
    std::vector<std::vector<Scalar>> failures;
    bool passed() const { return confirmed == independent; }
};

struct ScfReduction {
    UnravelResult unravel;
    AffineVariety V;
    std::vector<std::vector<FunctionFieldElem>> rows;
    std::vector<std::string> row_origin;  // "lambda <k>" or "given <k>"
    ScfAudit audit;
};

/// `independence_rows` are tuples of ring terms in the formula's variables
/// asserted to be p-independent (the beta part). The audit samples points of
/// V over K up to `audit_bound` (at most `audit_limit` points).
ScfReduction scf_reduce(const FormulaPtr& f, const std::vector<std::string>& vars, const Structure& s,
                        const Assignment& witness, const std::vector<std::vector<TermPtr>>& independence_rows = {},
                        unsigned audit_bound = 1, std::size_t audit_limit = 200);

// --- B-operators --------------------------------------------------------------------------

/// A finite local commutative k-algebra with basis b_0 = 1, b_1..b_d and
/// augmentation pi(b_i) = 0 for i > 0.
struct BAlgebra {
    Field k;
    std::vector<std::vector<std::vector<Scalar>>> mult;  // b_i b_j = sum_l mult[i][j][l] b_l

    std::size_t dim() const { return mult.size(); }
    static BAlgebra truncated(const Field& k, unsigned n);  // k[eta]/(eta^n)
    /// Throws unless unital with b_0, associative, commutative, with nilpotent augmentation ideal.
    void validate() const;
    /// Frobenius vanishes on the augmentation ideal.
    bool frobenius_kills_augmentation() const;
    /// n when the basis is 1, eta, .., eta^(n-1) of k[eta]/(eta^n).
    std::optional<unsigned> truncated_order() const;
};

struct BOperatorData {
    Ring R;
    std::vector<MultiPoly> relations;    // of R
    Ring T;
    std::vector<MultiPoly> t_relations;  // of T
    std::vector<std::function<MultiPoly(const MultiPoly&)>> maps;  // d_0..d_d : K[R] -> K[T]
    unsigned degree = 2;                 // products checked on monomials up to this degree
};

struct BOperatorReport {
    bool is_operator = false;
    std::string certificate;
};
BOperatorReport b_operator_check(const BOperatorData& data, const BAlgebra& B);

/// P -> P^D + sum_j dP/dx_j * images[j]
std::function<MultiPoly(const MultiPoly&)> derivation_map(const DerivationContext& D, std::vector<MultiPoly> images);
/// Linear map given on monomials; monomials missing from the table go to 0.
std::function<MultiPoly(const MultiPoly&)> table_map(const Ring& target, std::vector<std::pair<Mono, MultiPoly>> table);

// --- G-B-DCF ------------------------------------------------------------------------------

/// K^G for an action on the constants of K: same transcendentals, constants the fixed field.
Field invariant_field(const Field& K, const FieldAction& act);
/// The embedding K^G -> K.
Scalar embed_invariant(const Scalar& x, const Field& K, const FieldAction& act);

inline constexpr const char* kBulletFaithful = "faithful";
inline constexpr const char* kBulletIrreducible = "irreducible";

struct GbDcfInstance {
    Field K;
    const FieldAction* action = nullptr;  // on K's constants
    BAlgebra B;
    std::vector<Scalar> images;           // d_1(t_j) in K; must be G-invariant
    AffineVariety V;                      // over K^G
    AffineVariety W;                      // over K^G, in (x, u)
    std::vector<RationalExpr> f;          // optional admissibility rows, default empty
    unsigned bound = 1;
    bool search = true;
};

CheckReport validate_gbdcf_instance(const GbDcfInstance& inst);

}  // namespace pacf
