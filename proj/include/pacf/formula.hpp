#pragma once

// Quantifier-free formulas in L_ring, L_lambda, L_{lambda0,D} and L_G:
// terms, parsing, canonical printing, evaluation, the lambda-term unraveller
// and the lambda0/D correction rewriter.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pacf/differential.hpp"
#include "pacf/group.hpp"
#include "pacf/variety.hpp"

namespace pacf {

enum class Language { ring, lambda, lambda0_d, group, all };
std::string to_string(Language l);
Language parse_language(const std::string& s);

enum class TermKind { constant, variable, add, sub, neg, mul, div, pow, deriv, lambda0, lambda, sigma };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermKind kind = TermKind::constant;
    Scalar value;              // constant
    std::string name;          // variable name, or group element for sigma
    unsigned i = 0, e = 0;     // lambda_{i,e}
    unsigned exponent = 0;     // pow
    std::vector<TermPtr> args; // lambda: b_1..b_e, then c

    static TermPtr constant(const Scalar& c);
    static TermPtr variable(const std::string& name);
    static TermPtr unary(TermKind kind, TermPtr a);
    static TermPtr binary(TermKind kind, TermPtr a, TermPtr b);
    static TermPtr power(TermPtr a, unsigned exponent);
    static TermPtr lambda(unsigned i, unsigned e, std::vector<TermPtr> basis, TermPtr arg);
    static TermPtr sigma(const std::string& g, TermPtr a);
};

bool same_term(const TermPtr& a, const TermPtr& b);
std::string to_string(const TermPtr& t);
bool term_is_constant(const TermPtr& t);
/// Smallest language containing every constructor of t.
bool term_in_language(const TermPtr& t, Language l);

enum class FormulaKind { atom, conj, disj };
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Negation-normal form: negation only on atoms.
struct Formula {
    FormulaKind kind = FormulaKind::atom;
    TermPtr lhs, rhs;
    bool negated = false;
    std::vector<FormulaPtr> args;

    static FormulaPtr atom(TermPtr lhs, TermPtr rhs, bool negated = false);
    static FormulaPtr conj(std::vector<FormulaPtr> args);
    static FormulaPtr disj(std::vector<FormulaPtr> args);
};

FormulaPtr negate(const FormulaPtr& f);
bool same_formula(const FormulaPtr& a, const FormulaPtr& b);
std::string to_string(const FormulaPtr& f);

struct ParseContext {
    Field field;
    std::vector<std::string> vars;
    Language language = Language::all;
    std::vector<std::string> group_elements;  // allowed names in s[g](.)
};

/// Grammar: atoms `a = b`, `a != b`; connectives `&`, `|`, `!` (also and/or/not);
/// terms with + - * ^ and division by constant terms; D(e), l0(e),
/// lam(i,e; b1, .., be; c), s[g](e). Identifiers resolve to declared variables,
/// field transcendentals or the constant-field generator g.
TermPtr parse_term(const std::string& text, const ParseContext& ctx);
FormulaPtr parse_formula(const std::string& text, const ParseContext& ctx);

/// Operators available to evaluation.
struct Structure {
    Field field;
    std::optional<DerivationContext> derivation;
    const FieldAction* action = nullptr;  // for sigma on finite fields
};
using Assignment = std::map<std::string, Scalar>;

Scalar eval_term(const TermPtr& t, const Structure& s, const Assignment& a);
bool eval_formula(const FormulaPtr& f, const Structure& s, const Assignment& a);

/// Polynomial of a ring term (constants, variables, + - * ^, division by constants).
MultiPoly term_polynomial(const TermPtr& t, const Ring& r);

/// Constant folding and removal of neutral elements.
TermPtr simplify(const TermPtr& t, const Structure& s);

/// Each negated atom a != b becomes (a - b)*w = 1 with a fresh w (w1, w2, ...).
struct NegationElimination {
    FormulaPtr formula;
    std::vector<std::string> vars;  // input variables, then the w's
    std::vector<TermPtr> inverted;  // a - b for each w
};
NegationElimination eliminate_negated_equalities(const FormulaPtr& f, const std::vector<std::string>& vars,
                                                const Field& K);

// --- lambda unravelling ------------------------------------------------------------

struct UnravelCoordinate {
    std::string name;
    TermPtr definition;  // the lambda subterm it stands for (inner lambdas replaced)
    Scalar value;        // at the witness
};

struct LambdaSite {
    std::vector<MultiPoly> basis;     // b_1..b_e in the result ring
    MultiPoly argument;               // c in the result ring
    LambdaCase which = LambdaCase::solved;
    std::vector<std::string> coordinates;
};

struct UnravelResult {
    std::vector<std::string> vars;               // x..., w (negation helpers), z (lambda coordinates)
    std::vector<Scalar> tuple;                   // extended witness, same order
    std::vector<UnravelCoordinate> coordinates;  // every introduced coordinate, in order
    std::vector<std::size_t> used;               // index into vars of each lambda value, innermost first
    std::vector<MultiPoly> conditions;           // polynomial locus conditions
    std::size_t base_count = 0;                  // number of original variables
    std::vector<LambdaSite> sites;               // one per distinct lambda family
    Ring ring;

    /// (a, values of the lambda subterms innermost first), as in the hand construction.
    std::vector<Scalar> value_tuple() const;
    /// V(conditions); the extended witness is one of its points.
    AffineVariety variety() const;
};

UnravelResult unravel_lambda_terms(const FormulaPtr& f, const std::vector<std::string>& vars,
                                   const Structure& s, const Assignment& witness);

// --- lambda0 / D correction --------------------------------------------------------

enum class L0Case { pth_power, zero_argument, non_pth_power };
std::string to_string(L0Case c);

struct CaseTraceEntry {
    TermPtr argument;  // rewritten argument s of lambda0(s)
    L0Case kind;
    std::string note;  // introduced variable, fixed term or atom
};

struct CorrectionResult {
    FormulaPtr formula;                 // in L_D, over vars
    std::vector<std::string> vars;      // x..., then y1, y2, ...
    std::vector<TermPtr> fixed_terms;   // must not be p-th powers
    std::vector<CaseTraceEntry> trace;
    Assignment witness;                 // extended witness (witness mode only)
};

struct CaseSource {
    std::optional<Assignment> witness;      // resolve cases at this point
    std::vector<L0Case> explicit_cases;     // or in traversal order
};

CorrectionResult correct_lambda0_D(const FormulaPtr& f, const std::vector<std::string>& vars, const Structure& s,
                                   const CaseSource& source);

/// Polynomial image of a lambda0-free L_D term with D^j(v) as separate
/// indeterminates named v, v_D1, v_D2, ...; the ring covers derivatives up to `order`.
struct JetRing {
    Ring ring;
    std::vector<std::string> base;
    unsigned order = 0;
    std::size_t index(const std::string& var, unsigned j) const;
};
JetRing make_jet_ring(const Field& K, const std::vector<std::string>& vars, unsigned order);
MultiPoly jet_polynomial(const TermPtr& t, const JetRing& jr, const DerivationContext& D);
/// Maximal nesting depth of D.
unsigned derivative_depth(const TermPtr& t);
unsigned derivative_depth(const FormulaPtr& f);

}  // namespace pacf
