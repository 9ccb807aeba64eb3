#include <algorithm>
#include <set>

#include "pacf/error.hpp"
#include "pacf/formula.hpp"

namespace pacf {

MultiPoly term_polynomial(const TermPtr& t, const Ring& r) {
    switch (t->kind) {
        case TermKind::constant: return MultiPoly::constant(r, t->value);
        case TermKind::variable: {
            auto i = r->index_of(t->name);
            if (!i) fail("unknown variable '" + t->name + "'");
            return MultiPoly::var(r, *i);
        }
        case TermKind::add: return term_polynomial(t->args[0], r) + term_polynomial(t->args[1], r);
        case TermKind::sub: return term_polynomial(t->args[0], r) - term_polynomial(t->args[1], r);
        case TermKind::mul: return term_polynomial(t->args[0], r) * term_polynomial(t->args[1], r);
        case TermKind::neg: return -term_polynomial(t->args[0], r);
        case TermKind::pow: return term_polynomial(t->args[0], r).pow(t->exponent);
        case TermKind::div: {
            const MultiPoly d = term_polynomial(t->args[1], r);
            if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero term");
            return term_polynomial(t->args[0], r) * d.constant_term().inverse();
        }
        default: fail("term " + to_string(t) + " is not a ring term");
    }
}

namespace {

std::string fresh(const std::string& base, std::set<std::string>& taken) {
    std::string name = base;
    for (unsigned k = 1; taken.count(name); ++k) name = base + "_" + std::to_string(k);
    taken.insert(name);
    return name;
}

/// Conjunction of atoms of f that holds at the witness (first true disjunct).
void satisfied_atoms(const FormulaPtr& f, const Structure& s, const Assignment& a, std::vector<FormulaPtr>& out) {
    switch (f->kind) {
        case FormulaKind::atom:
            if (!eval_formula(f, s, a)) fail("the witness does not satisfy " + to_string(f));
            out.push_back(f);
            return;
        case FormulaKind::conj:
            for (const auto& g : f->args) satisfied_atoms(g, s, a, out);
            return;
        case FormulaKind::disj:
            for (const auto& g : f->args)
                if (eval_formula(g, s, a)) return satisfied_atoms(g, s, a, out);
            fail("the witness does not satisfy " + to_string(f));
    }
}

struct LambdaOccurrence {
    TermPtr term;  // lambda-free basis and argument
    std::vector<std::string> names;
    std::vector<Scalar> values;
    bool solved = false;
    LambdaCase which = LambdaCase::solved;
};

struct Unraveller {
    const Structure& s;
    Assignment values;
    std::set<std::string> taken;
    std::vector<LambdaOccurrence> occ;
    std::vector<std::string> used;

    TermPtr replace(const TermPtr& t) {
        if (t->kind == TermKind::constant || t->kind == TermKind::variable) return t;
        if (t->kind == TermKind::deriv || t->kind == TermKind::lambda0 || t->kind == TermKind::sigma)
            fail("unravelling expects a formula of the lambda language, found " + to_string(t));
        auto r = std::make_shared<Term>(*t);
        for (auto& a : r->args) a = replace(a);
        if (r->kind != TermKind::lambda) return r;
        r->i = 0;
        TermPtr plain = r;
        for (const auto& o : occ) {
            if (same_term(o.term, plain)) {
                used.push_back(o.names[t->i - 1]);
                return Term::variable(o.names[t->i - 1]);
            }
        }
        LambdaOccurrence o;
        o.term = plain;
        std::vector<Scalar> bs;
        for (std::size_t k = 0; k + 1 < r->args.size(); ++k) bs.push_back(eval_term(r->args[k], s, values));
        const Scalar c = eval_term(r->args.back(), s, values);
        LambdaFamily fam = lambda_family(bs, c);
        o.solved = fam.which == LambdaCase::solved;
        o.which = fam.which;
        o.values = fam.values;
        if (t->i < 1 || t->i > o.values.size()) fail("lambda index out of range in " + to_string(t));
        const std::string base = "z" + std::to_string(occ.size() + 1);
        for (std::size_t j = 0; j < o.values.size(); ++j) {
            o.names.push_back(fresh(base + "_" + std::to_string(j + 1), taken));
            values[o.names.back()] = o.values[j];
        }
        used.push_back(o.names[t->i - 1]);
        occ.push_back(o);
        return Term::variable(occ.back().names[t->i - 1]);
    }
};

}  // namespace

std::vector<Scalar> UnravelResult::value_tuple() const {
    std::vector<Scalar> out(tuple.begin(), tuple.begin() + std::ptrdiff_t(base_count));
    for (auto k : used) out.push_back(tuple[k]);
    return out;
}

AffineVariety UnravelResult::variety() const { return AffineVariety(ring, conditions); }

UnravelResult unravel_lambda_terms(const FormulaPtr& f, const std::vector<std::string>& vars, const Structure& s,
                                   const Assignment& witness) {
    for (const auto& v : vars)
        if (!witness.count(v)) fail("no witness value for '" + v + "'");
    std::vector<FormulaPtr> atoms;
    satisfied_atoms(f, s, witness, atoms);

    Unraveller u{s, witness, {vars.begin(), vars.end()}, {}, {}};
    struct Cond {
        TermPtr lhs, rhs;
        std::string w;
    };
    std::vector<Cond> conds;
    std::vector<std::string> ws;
    std::vector<Scalar> wvals;
    for (const auto& a : atoms) {
        Cond c{u.replace(a->lhs), u.replace(a->rhs), ""};
        if (a->negated) {
            c.w = fresh("w" + std::to_string(ws.size() + 1), u.taken);
            ws.push_back(c.w);
            wvals.push_back((eval_term(c.lhs, s, u.values) - eval_term(c.rhs, s, u.values)).inverse());
        }
        conds.push_back(c);
    }

    UnravelResult res;
    res.vars = vars;
    res.base_count = vars.size();
    res.vars.insert(res.vars.end(), ws.begin(), ws.end());
    for (const auto& v : vars) res.tuple.push_back(witness.at(v));
    res.tuple.insert(res.tuple.end(), wvals.begin(), wvals.end());
    for (const auto& o : u.occ) {
        for (std::size_t j = 0; j < o.names.size(); ++j) {
            res.vars.push_back(o.names[j]);
            res.tuple.push_back(o.values[j]);
            auto def = std::make_shared<Term>(*o.term);
            def->i = unsigned(j + 1);
            res.coordinates.push_back({o.names[j], def, o.values[j]});
        }
    }
    for (const auto& name : u.used) {
        const auto idx = std::size_t(std::find(res.vars.begin(), res.vars.end(), name) - res.vars.begin());
        if (std::find(res.used.begin(), res.used.end(), idx) == res.used.end()) res.used.push_back(idx);
    }
    res.ring = make_ring(s.field, res.vars);

    const Code p = s.field->p();
    for (const auto& o : u.occ) {
        LambdaSite site;
        for (unsigned k = 0; k < o.term->e; ++k) site.basis.push_back(term_polynomial(o.term->args[k], res.ring));
        site.argument = term_polynomial(o.term->args.back(), res.ring);
        site.which = o.which;
        site.coordinates = o.names;
        res.sites.push_back(site);
        if (!o.solved) {
            for (const auto& n : o.names) res.conditions.push_back(MultiPoly::var(res.ring, n));
            continue;
        }
        const unsigned e = o.term->e;
        std::vector<MultiPoly> bs;
        for (unsigned k = 0; k < e; ++k) bs.push_back(term_polynomial(o.term->args[k], res.ring));
        MultiPoly rel = term_polynomial(o.term->args.back(), res.ring);
        for (std::size_t j = 0; j < o.names.size(); ++j) {
            const auto ex = p_monomial_exponents(unsigned(j + 1), e, p);
            MultiPoly m = MultiPoly::var(res.ring, o.names[j]).pow(unsigned(p));
            for (unsigned k = 0; k < e; ++k)
                if (ex[k]) m *= bs[k].pow(ex[k]);
            rel -= m;
        }
        res.conditions.push_back(rel);
    }
    for (const auto& c : conds) {
        MultiPoly d = term_polynomial(c.lhs, res.ring) - term_polynomial(c.rhs, res.ring);
        if (!c.w.empty()) d = d * MultiPoly::var(res.ring, c.w) - MultiPoly::constant(res.ring, 1);
        if (!d.is_zero()) res.conditions.push_back(d);
    }
    return res;
}

namespace {

FormulaPtr drop_negations(const FormulaPtr& f, NegationElimination& out, std::set<std::string>& taken,
                          const Field& K) {
    if (f->kind == FormulaKind::atom) {
        if (!f->negated) return f;
        const std::string w = fresh("w" + std::to_string(out.inverted.size() + 1), taken);
        out.vars.push_back(w);
        auto diff = Term::binary(TermKind::sub, f->lhs, f->rhs);
        out.inverted.push_back(diff);
        return Formula::atom(Term::binary(TermKind::mul, diff, Term::variable(w)), Term::constant(Scalar::one(K)));
    }
    std::vector<FormulaPtr> args;
    for (const auto& g : f->args) args.push_back(drop_negations(g, out, taken, K));
    return f->kind == FormulaKind::conj ? Formula::conj(std::move(args)) : Formula::disj(std::move(args));
}

}  // namespace

NegationElimination eliminate_negated_equalities(const FormulaPtr& f, const std::vector<std::string>& vars,
                                                const Field& K) {
    NegationElimination out;
    out.vars = vars;
    std::set<std::string> taken(vars.begin(), vars.end());
    out.formula = drop_negations(f, out, taken, K);
    return out;
}

// --- lambda0 / D correction --------------------------------------------------------------

std::string to_string(L0Case c) {
    switch (c) {
        case L0Case::pth_power: return "nonzero p-th power";
        case L0Case::zero_argument: return "zero argument";
        case L0Case::non_pth_power: return "not a p-th power";
    }
    return "?";
}

unsigned derivative_depth(const TermPtr& t) {
    unsigned d = 0;
    for (const auto& a : t->args) d = std::max(d, derivative_depth(a));
    return t->kind == TermKind::deriv ? d + 1 : d;
}

unsigned derivative_depth(const FormulaPtr& f) {
    if (f->kind == FormulaKind::atom) return std::max(derivative_depth(f->lhs), derivative_depth(f->rhs));
    unsigned d = 0;
    for (const auto& g : f->args) d = std::max(d, derivative_depth(g));
    return d;
}

std::size_t JetRing::index(const std::string& var, unsigned j) const {
    auto it = std::find(base.begin(), base.end(), var);
    if (it == base.end()) fail("unknown variable '" + var + "'");
    if (j > order) fail("derivative order exceeds the jet ring");
    return std::size_t(it - base.begin()) * (order + 1) + j;
}

JetRing make_jet_ring(const Field& K, const std::vector<std::string>& vars, unsigned order) {
    JetRing jr;
    jr.base = vars;
    jr.order = order;
    std::vector<std::string> names;
    for (const auto& v : vars)
        for (unsigned j = 0; j <= order; ++j) names.push_back(j ? v + "_D" + std::to_string(j) : v);
    jr.ring = make_ring(K, names);
    return jr;
}

namespace {

MultiPoly derive(const MultiPoly& P, const JetRing& jr, const DerivationContext& D) {
    MultiPoly r = D.apply_coefficients(P);
    for (std::size_t v = 0; v < jr.base.size(); ++v) {
        for (unsigned j = 0; j <= jr.order; ++j) {
            const std::size_t i = v * (jr.order + 1) + j;
            if (!P.involves(i)) continue;
            if (j == jr.order) fail("derivative order exceeds the jet ring");
            r += P.partial(i) * MultiPoly::var(jr.ring, i + 1);
        }
    }
    return r;
}

}  // namespace

MultiPoly jet_polynomial(const TermPtr& t, const JetRing& jr, const DerivationContext& D) {
    switch (t->kind) {
        case TermKind::constant: return MultiPoly::constant(jr.ring, t->value);
        case TermKind::variable: return MultiPoly::var(jr.ring, jr.index(t->name, 0));
        case TermKind::add: return jet_polynomial(t->args[0], jr, D) + jet_polynomial(t->args[1], jr, D);
        case TermKind::sub: return jet_polynomial(t->args[0], jr, D) - jet_polynomial(t->args[1], jr, D);
        case TermKind::mul: return jet_polynomial(t->args[0], jr, D) * jet_polynomial(t->args[1], jr, D);
        case TermKind::neg: return -jet_polynomial(t->args[0], jr, D);
        case TermKind::pow: return jet_polynomial(t->args[0], jr, D).pow(t->exponent);
        case TermKind::div: {
            const MultiPoly d = jet_polynomial(t->args[1], jr, D);
            if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero term");
            return jet_polynomial(t->args[0], jr, D) * d.constant_term().inverse();
        }
        case TermKind::deriv: return derive(jet_polynomial(t->args[0], jr, D), jr, D);
        default: fail("term " + to_string(t) + " is not a differential ring term");
    }
}

namespace {

struct Corrector {
    const Structure& s;
    const CaseSource& src;
    std::set<std::string> taken;
    CorrectionResult res;
    std::vector<FormulaPtr> defining;
    std::size_t next_case = 0;
    unsigned next_y = 1;

    TermPtr zero() const { return Term::constant(Scalar::zero(s.field)); }

    L0Case decide(const TermPtr& arg) {
        if (src.witness) {
            const Scalar v = eval_term(arg, s, res.witness);
            if (v.is_zero()) return L0Case::zero_argument;
            return pth_root(v) ? L0Case::pth_power : L0Case::non_pth_power;
        }
        if (next_case >= src.explicit_cases.size()) fail("not enough cases for the lambda0 occurrences");
        return src.explicit_cases[next_case++];
    }

    void add_defining(const FormulaPtr& atom) {
        for (const auto& d : defining)
            if (same_formula(d, atom)) return;
        defining.push_back(atom);
    }

    TermPtr rewrite(const TermPtr& t) {
        if (t->kind == TermKind::constant || t->kind == TermKind::variable) return t;
        if (t->kind == TermKind::lambda || t->kind == TermKind::sigma)
            fail("correction expects a formula of the lambda0/D language, found " + to_string(t));
        auto r = std::make_shared<Term>(*t);
        for (auto& a : r->args) a = rewrite(a);
        if (r->kind != TermKind::lambda0) return simplify(r, s);
        const TermPtr arg = simplify(r->args[0], s);
        const L0Case kind = decide(arg);
        switch (kind) {
            case L0Case::pth_power: {
                std::string y;
                do y = "y" + std::to_string(next_y++);
                while (taken.count(y));
                taken.insert(y);
                res.vars.push_back(y);
                auto atom = Formula::atom(Term::power(Term::variable(y), unsigned(s.field->p())), arg);
                add_defining(atom);
                if (src.witness) {
                    auto root = pth_root(eval_term(arg, s, res.witness));
                    res.witness[y] = *root;
                }
                res.trace.push_back({arg, kind, to_string(atom)});
                return Term::variable(y);
            }
            case L0Case::zero_argument: {
                auto atom = Formula::atom(arg, zero());
                add_defining(atom);
                res.trace.push_back({arg, kind, to_string(atom)});
                return zero();
            }
            case L0Case::non_pth_power: {
                const bool dup = std::any_of(res.fixed_terms.begin(), res.fixed_terms.end(),
                                             [&](const TermPtr& f) { return same_term(f, arg); });
                if (!dup) res.fixed_terms.push_back(arg);
                res.trace.push_back({arg, kind, "fixed term " + to_string(arg)});
                return zero();
            }
        }
        return zero();
    }

    FormulaPtr rewrite(const FormulaPtr& f) {
        if (f->kind == FormulaKind::atom) {
            auto l = rewrite(f->lhs);
            auto r = rewrite(f->rhs);
            return Formula::atom(l, r, f->negated);
        }
        std::vector<FormulaPtr> args;
        for (const auto& g : f->args) args.push_back(rewrite(g));
        return f->kind == FormulaKind::conj ? Formula::conj(std::move(args)) : Formula::disj(std::move(args));
    }
};

void collect_positive_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->kind == FormulaKind::atom) {
        if (!f->negated) out.push_back(f);
    } else if (f->kind == FormulaKind::conj) {
        for (const auto& g : f->args) collect_positive_atoms(g, out);
    } else if (f->args.size() == 1) {
        collect_positive_atoms(f->args[0], out);
    }
}

void check_consistency(const CorrectionResult& res, const Structure& s) {
    std::vector<FormulaPtr> atoms;
    collect_positive_atoms(res.formula, atoms);
    unsigned order = derivative_depth(res.formula);
    for (const auto& t : res.fixed_terms) order = std::max(order, derivative_depth(t));
    const DerivationContext D = s.derivation ? *s.derivation : DerivationContext(s.field);
    const JetRing jr = make_jet_ring(s.field, res.vars, order + 1);
    std::vector<MultiPoly> gens;
    for (const auto& a : atoms) {
        MultiPoly g = jet_polynomial(a->lhs, jr, D) - jet_polynomial(a->rhs, jr, D);
        if (!g.is_zero()) gens.push_back(g);
    }
    const Ideal I(jr.ring, gens);
    if (contains_one(I)) fail("inconsistent case assignment: the corrected formula has no solutions");
    for (const auto& e : res.trace) {
        if (e.kind == L0Case::zero_argument) continue;
        if (radical_member(jet_polynomial(e.argument, jr, D), I))
            fail("inconsistent case assignment: " + to_string(e.argument) + " is declared " + to_string(e.kind) +
                 " but the corrected formula forces it to be 0");
    }
}

}  // namespace

CorrectionResult correct_lambda0_D(const FormulaPtr& f, const std::vector<std::string>& vars, const Structure& s,
                                   const CaseSource& source) {
    if (eliminate_negated_equalities(f, vars, s.field).vars.size() != vars.size())
        fail("correction expects a formula without negated equalities; eliminate them first");
    Corrector c{s, source, {vars.begin(), vars.end()}, {}, {}};
    c.res.vars = vars;
    for (const auto& t : s.field->transcendentals()) c.taken.insert(t);
    if (source.witness) {
        for (const auto& v : vars)
            if (!source.witness->count(v)) fail("no witness value for '" + v + "'");
        if (!eval_formula(f, s, *source.witness)) fail("the witness does not satisfy " + to_string(f));
        c.res.witness = *source.witness;
    }
    FormulaPtr body = c.rewrite(f);
    if (!source.witness && c.next_case != source.explicit_cases.size())
        fail("more cases given than lambda0 occurrences");
    std::vector<FormulaPtr> parts = c.defining;
    bool dup = false;
    for (const auto& d : parts) dup = dup || same_formula(d, body);
    if (!dup) parts.push_back(body);
    c.res.formula = Formula::conj(std::move(parts));
    if (source.witness) {
        if (!eval_formula(c.res.formula, s, c.res.witness)) fail("corrected formula fails at the extended witness");
    } else {
        check_consistency(c.res, s);
    }
    return c.res;
}

}  // namespace pacf
