#include "pacf/formula.hpp"

#include <algorithm>
#include <cctype>

#include "pacf/error.hpp"

namespace pacf {

std::string to_string(Language l) {
    switch (l) {
        case Language::ring: return "ring";
        case Language::lambda: return "lambda";
        case Language::lambda0_d: return "lambda0_D";
        case Language::group: return "G";
        case Language::all: return "all";
    }
    return "?";
}

Language parse_language(const std::string& s) {
    if (s == "ring" || s == "L_ring") return Language::ring;
    if (s == "lambda" || s == "L_lambda") return Language::lambda;
    if (s == "lambda0_D" || s == "lambda0_d" || s == "L_lambda0_D") return Language::lambda0_d;
    if (s == "G" || s == "group" || s == "L_G") return Language::group;
    if (s == "all") return Language::all;
    fail("unknown language tag '" + s + "'");
}

// --- construction ------------------------------------------------------------------

TermPtr Term::constant(const Scalar& c) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::constant;
    t->value = c;
    return t;
}

TermPtr Term::variable(const std::string& name) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::variable;
    t->name = name;
    return t;
}

TermPtr Term::unary(TermKind kind, TermPtr a) {
    require(kind == TermKind::neg || kind == TermKind::deriv || kind == TermKind::lambda0, "not a unary term kind");
    auto t = std::make_shared<Term>();
    t->kind = kind;
    t->args = {std::move(a)};
    return t;
}

TermPtr Term::binary(TermKind kind, TermPtr a, TermPtr b) {
    require(kind == TermKind::add || kind == TermKind::sub || kind == TermKind::mul || kind == TermKind::div,
            "not a binary term kind");
    auto t = std::make_shared<Term>();
    t->kind = kind;
    t->args = {std::move(a), std::move(b)};
    return t;
}

TermPtr Term::power(TermPtr a, unsigned exponent) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::pow;
    t->exponent = exponent;
    t->args = {std::move(a)};
    return t;
}

TermPtr Term::lambda(unsigned i, unsigned e, std::vector<TermPtr> basis, TermPtr arg) {
    require(e >= 1 && basis.size() == e, "lambda_{i,e} needs exactly e basis terms");
    auto t = std::make_shared<Term>();
    t->kind = TermKind::lambda;
    t->i = i;
    t->e = e;
    t->args = std::move(basis);
    t->args.push_back(std::move(arg));
    return t;
}

TermPtr Term::sigma(const std::string& g, TermPtr a) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::sigma;
    t->name = g;
    t->args = {std::move(a)};
    return t;
}

bool same_term(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    if (a->kind == TermKind::constant) return a->value == b->value;
    if (a->name != b->name || a->i != b->i || a->e != b->e || a->exponent != b->exponent) return false;
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t k = 0; k < a->args.size(); ++k)
        if (!same_term(a->args[k], b->args[k])) return false;
    return true;
}

bool term_is_constant(const TermPtr& t) {
    if (t->kind == TermKind::variable) return false;
    return std::all_of(t->args.begin(), t->args.end(), [](const TermPtr& a) { return term_is_constant(a); });
}

namespace {

bool kind_allowed(TermKind k, Language l) {
    if (l == Language::all) return true;
    switch (k) {
        case TermKind::deriv:
        case TermKind::lambda0: return l == Language::lambda0_d;
        case TermKind::lambda: return l == Language::lambda;
        case TermKind::sigma: return l == Language::group;
        default: return true;
    }
}

}  // namespace

bool term_in_language(const TermPtr& t, Language l) {
    if (!kind_allowed(t->kind, l)) return false;
    return std::all_of(t->args.begin(), t->args.end(), [&](const TermPtr& a) { return term_in_language(a, l); });
}

// --- printing ----------------------------------------------------------------------

namespace {

constexpr int kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kPrimary = 5;

bool simple_literal(const std::string& s) {
    if (s.empty()) return false;
    if (std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) return true;
    if (!(std::isalpha((unsigned char)s[0]) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::string print(const TermPtr& t, int prec) {
    auto wrap = [&](int own, std::string s) { return own < prec ? "(" + s + ")" : s; };
    switch (t->kind) {
        case TermKind::constant: {
            std::string s = t->value.to_string();
            return simple_literal(s) ? s : (prec > 0 ? "(" + s + ")" : s);
        }
        case TermKind::variable: return t->name;
        case TermKind::add: return wrap(kSum, print(t->args[0], kSum) + " + " + print(t->args[1], kProduct));
        case TermKind::sub: return wrap(kSum, print(t->args[0], kSum) + " - " + print(t->args[1], kProduct));
        case TermKind::mul: return wrap(kProduct, print(t->args[0], kProduct) + "*" + print(t->args[1], kUnary));
        case TermKind::div: return wrap(kProduct, print(t->args[0], kProduct) + "/" + print(t->args[1], kUnary));
        case TermKind::neg: return wrap(kUnary, "-" + print(t->args[0], kUnary));
        case TermKind::pow:
            return wrap(kPower, print(t->args[0], kPrimary) + "^" + std::to_string(t->exponent));
        case TermKind::deriv: return "D(" + print(t->args[0], 0) + ")";
        case TermKind::lambda0: return "l0(" + print(t->args[0], 0) + ")";
        case TermKind::lambda: {
            std::string s = "lam(" + std::to_string(t->i) + "," + std::to_string(t->e) + "; ";
            for (std::size_t k = 0; k + 1 < t->args.size(); ++k) {
                if (k) s += ", ";
                s += print(t->args[k], 0);
            }
            return s + "; " + print(t->args.back(), 0) + ")";
        }
        case TermKind::sigma: return "s[" + t->name + "](" + print(t->args[0], 0) + ")";
    }
    return "?";
}

}  // namespace

std::string to_string(const TermPtr& t) { return print(t, 0); }

FormulaPtr Formula::atom(TermPtr lhs, TermPtr rhs, bool negated) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::atom;
    f->lhs = std::move(lhs);
    f->rhs = std::move(rhs);
    f->negated = negated;
    return f;
}

namespace {

FormulaPtr junction(FormulaKind kind, std::vector<FormulaPtr> args) {
    std::vector<FormulaPtr> flat;
    for (auto& a : args) {
        if (a->kind == kind)
            flat.insert(flat.end(), a->args.begin(), a->args.end());
        else
            flat.push_back(std::move(a));
    }
    if (flat.size() == 1) return flat[0];
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    f->args = std::move(flat);
    return f;
}

}  // namespace

FormulaPtr Formula::conj(std::vector<FormulaPtr> args) { return junction(FormulaKind::conj, std::move(args)); }
FormulaPtr Formula::disj(std::vector<FormulaPtr> args) { return junction(FormulaKind::disj, std::move(args)); }

FormulaPtr negate(const FormulaPtr& f) {
    if (f->kind == FormulaKind::atom) return Formula::atom(f->lhs, f->rhs, !f->negated);
    std::vector<FormulaPtr> args;
    for (const auto& a : f->args) args.push_back(negate(a));
    return f->kind == FormulaKind::conj ? Formula::disj(std::move(args)) : Formula::conj(std::move(args));
}

bool same_formula(const FormulaPtr& a, const FormulaPtr& b) {
    if (a->kind != b->kind) return false;
    if (a->kind == FormulaKind::atom)
        return a->negated == b->negated && same_term(a->lhs, b->lhs) && same_term(a->rhs, b->rhs);
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t k = 0; k < a->args.size(); ++k)
        if (!same_formula(a->args[k], b->args[k])) return false;
    return true;
}

std::string to_string(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::atom:
            return to_string(f->lhs) + (f->negated ? " != " : " = ") + to_string(f->rhs);
        case FormulaKind::conj: {
            if (f->args.empty()) return "true";
            std::string s;
            for (std::size_t k = 0; k < f->args.size(); ++k) {
                if (k) s += " & ";
                const auto& a = f->args[k];
                s += a->kind == FormulaKind::disj ? "(" + to_string(a) + ")" : to_string(a);
            }
            return s;
        }
        case FormulaKind::disj: {
            if (f->args.empty()) return "false";
            std::string s;
            for (std::size_t k = 0; k < f->args.size(); ++k) {
                if (k) s += " | ";
                s += to_string(f->args[k]);
            }
            return s;
        }
    }
    return "?";
}

// --- parsing -----------------------------------------------------------------------

namespace {

struct Token {
    enum Kind { ident, number, symbol, end } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = s[i];
        if (std::isspace(c)) {
            ++i;
        } else if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            out.push_back({Token::ident, s.substr(i, j - i)});
            i = j;
        } else if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            out.push_back({Token::number, s.substr(i, j - i)});
            i = j;
        } else if (s.compare(i, 2, "!=") == 0 || s.compare(i, 2, "&&") == 0 || s.compare(i, 2, "||") == 0) {
            out.push_back({Token::symbol, s.substr(i, 2) == "!=" ? "!=" : s.substr(i, 1)});
            i += 2;
        } else if (std::string("+-*/^()[],;=&|!").find(char(c)) != std::string::npos) {
            out.push_back({Token::symbol, std::string(1, char(c))});
            ++i;
        } else {
            fail("unexpected character '" + std::string(1, char(c)) + "' in formula");
        }
    }
    out.push_back({Token::end, ""});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, const ParseContext& ctx) : toks_(tokenize(text)), ctx_(ctx) {
        require(ctx.field != nullptr, "formula parsing needs a field");
    }

    FormulaPtr formula_all() {
        auto f = disjunction();
        expect_end();
        return f;
    }

    TermPtr term_all() {
        auto t = sum();
        expect_end();
        return t;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const ParseContext& ctx_;

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool is_symbol(const std::string& s, std::size_t ahead = 0) const {
        return peek(ahead).kind == Token::symbol && peek(ahead).text == s;
    }
    bool is_word(const std::string& s) const { return peek().kind == Token::ident && peek().text == s; }
    bool accept(const std::string& s) {
        if (is_symbol(s)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(const std::string& s) {
        if (!accept(s)) fail("expected '" + s + "' near '" + peek().text + "'");
    }
    void expect_end() {
        if (peek().kind != Token::end) fail("unexpected '" + peek().text + "' in formula");
    }
    unsigned number() {
        if (peek().kind != Token::number) fail("expected a number near '" + peek().text + "'");
        const std::string s = toks_[pos_++].text;
        require(s.size() < 9, "number too large: " + s);
        return unsigned(std::stoul(s));
    }

    void check_language(TermKind k, const std::string& what) {
        if (!kind_allowed(k, ctx_.language))
            fail("'" + what + "' is not in the language " + to_string(ctx_.language));
    }

    FormulaPtr disjunction() {
        std::vector<FormulaPtr> parts{conjunction()};
        while (accept("|") || (is_word("or") && ++pos_)) parts.push_back(conjunction());
        return Formula::disj(std::move(parts));
    }

    FormulaPtr conjunction() {
        std::vector<FormulaPtr> parts{unit()};
        while (accept("&") || (is_word("and") && ++pos_)) parts.push_back(unit());
        return Formula::conj(std::move(parts));
    }

    FormulaPtr unit() {
        if (accept("!") || (is_word("not") && ++pos_)) return negate(unit());
        if (is_word("true")) {
            ++pos_;
            return Formula::conj({});
        }
        if (is_word("false")) {
            ++pos_;
            return Formula::disj({});
        }
        if (is_symbol("(")) {
            const std::size_t save = pos_;
            try {
                return atom();
            } catch (const Error&) {
                pos_ = save;
            }
            expect("(");
            auto f = disjunction();
            expect(")");
            return f;
        }
        return atom();
    }

    FormulaPtr atom() {
        auto lhs = sum();
        bool neg;
        if (accept("="))
            neg = false;
        else if (accept("!="))
            neg = true;
        else
            fail("expected '=' or '!=' near '" + peek().text + "'");
        auto rhs = sum();
        return Formula::atom(lhs, rhs, neg);
    }

    TermPtr sum() {
        auto t = product();
        for (;;) {
            if (accept("+"))
                t = Term::binary(TermKind::add, t, product());
            else if (accept("-"))
                t = Term::binary(TermKind::sub, t, product());
            else
                return t;
        }
    }

    TermPtr product() {
        auto t = unary();
        for (;;) {
            if (accept("*")) {
                t = Term::binary(TermKind::mul, t, unary());
            } else if (accept("/")) {
                auto d = unary();
                if (!term_is_constant(d)) fail("division is only allowed by constant terms");
                t = Term::binary(TermKind::div, t, d);
            } else {
                return t;
            }
        }
    }

    TermPtr unary() {
        if (accept("-")) return Term::unary(TermKind::neg, unary());
        return power();
    }

    TermPtr power() {
        auto base = primary();
        if (accept("^")) return Term::power(base, number());
        return base;
    }

    TermPtr primary() {
        const Field& K = ctx_.field;
        if (accept("(")) {
            auto t = sum();
            expect(")");
            return t;
        }
        if (peek().kind == Token::number) {
            const std::string s = toks_[pos_++].text;
            Code v = 0;
            for (char c : s) v = (v * 10 + Code(c - '0')) % K->p();
            return Term::constant(Scalar::from_int(K, (long long)v));
        }
        if (peek().kind != Token::ident) fail("unexpected '" + peek().text + "' in term");
        const std::string id = toks_[pos_++].text;
        const bool is_var = std::find(ctx_.vars.begin(), ctx_.vars.end(), id) != ctx_.vars.end();
        if (!is_var && id == "D" && is_symbol("(")) {
            check_language(TermKind::deriv, "D");
            expect("(");
            auto a = sum();
            expect(")");
            return Term::unary(TermKind::deriv, a);
        }
        if (!is_var && id == "l0" && is_symbol("(")) {
            check_language(TermKind::lambda0, "l0");
            expect("(");
            auto a = sum();
            expect(")");
            return Term::unary(TermKind::lambda0, a);
        }
        if (!is_var && id == "lam" && is_symbol("(")) {
            check_language(TermKind::lambda, "lam");
            expect("(");
            const unsigned i = number();
            expect(",");
            const unsigned e = number();
            expect(";");
            std::vector<TermPtr> basis{sum()};
            while (accept(",")) basis.push_back(sum());
            expect(";");
            auto c = sum();
            expect(")");
            if (basis.size() != e) fail("lam(i,e; ...) needs exactly e basis terms");
            if (i < 1) fail("lambda index starts at 1");
            return Term::lambda(i, e, std::move(basis), c);
        }
        if (!is_var && id == "s" && is_symbol("[")) {
            check_language(TermKind::sigma, "s[.]");
            expect("[");
            if (peek().kind != Token::ident && peek().kind != Token::number) fail("expected a group element name");
            std::string g = toks_[pos_++].text;
            while (!is_symbol("]") && peek().kind != Token::end) g += toks_[pos_++].text;
            expect("]");
            if (!ctx_.group_elements.empty() &&
                std::find(ctx_.group_elements.begin(), ctx_.group_elements.end(), g) == ctx_.group_elements.end())
                fail("unknown group element '" + g + "'");
            expect("(");
            auto a = sum();
            expect(")");
            return Term::sigma(g, a);
        }
        if (is_var) return Term::variable(id);
        const auto& ts = K->transcendentals();
        if (auto it = std::find(ts.begin(), ts.end(), id); it != ts.end())
            return Term::constant(Scalar::transcendental(K, int(it - ts.begin())));
        if (id == FieldDescriptor::kGeneratorName) return Term::constant(Scalar::generator(K));
        fail("unknown identifier '" + id + "'");
    }
};

}  // namespace

TermPtr parse_term(const std::string& text, const ParseContext& ctx) { return Parser(text, ctx).term_all(); }

FormulaPtr parse_formula(const std::string& text, const ParseContext& ctx) {
    return Parser(text, ctx).formula_all();
}

// --- evaluation --------------------------------------------------------------------

namespace {

std::size_t group_index(const FieldAction& act, const std::string& name) {
    const auto& G = act.group();
    for (std::size_t g = 0; g < G.size(); ++g)
        if (G.name(g) == name) return g;
    fail("unknown group element '" + name + "'");
}

}  // namespace

Scalar eval_term(const TermPtr& t, const Structure& s, const Assignment& a) {
    switch (t->kind) {
        case TermKind::constant: return t->value;
        case TermKind::variable: {
            auto it = a.find(t->name);
            if (it == a.end()) fail("no value for variable '" + t->name + "'");
            return it->second;
        }
        case TermKind::add: return eval_term(t->args[0], s, a) + eval_term(t->args[1], s, a);
        case TermKind::sub: return eval_term(t->args[0], s, a) - eval_term(t->args[1], s, a);
        case TermKind::mul: return eval_term(t->args[0], s, a) * eval_term(t->args[1], s, a);
        case TermKind::div: {
            const Scalar d = eval_term(t->args[1], s, a);
            if (d.is_zero()) fail("division by zero in term " + to_string(t));
            return eval_term(t->args[0], s, a) / d;
        }
        case TermKind::neg: return -eval_term(t->args[0], s, a);
        case TermKind::pow: return eval_term(t->args[0], s, a).pow(t->exponent);
        case TermKind::deriv:
            if (!s.derivation) fail("the structure has no derivation");
            return s.derivation->apply(eval_term(t->args[0], s, a));
        case TermKind::lambda0: return lambda0(eval_term(t->args[0], s, a));
        case TermKind::lambda: {
            std::vector<Scalar> bs;
            for (std::size_t k = 0; k + 1 < t->args.size(); ++k) bs.push_back(eval_term(t->args[k], s, a));
            return lambda_multi(t->i, t->e, bs, eval_term(t->args.back(), s, a));
        }
        case TermKind::sigma: {
            if (!s.action) fail("the structure has no group action");
            if (!s.field->is_finite()) unsupported("group actions are implemented on finite fields only");
            const Scalar x = eval_term(t->args[0], s, a);
            const auto& sg = s.action->sigma(group_index(*s.action, t->name));
            return Scalar::from_code(s.field, sg.apply(x.constant_code()));
        }
    }
    fail("bad term");
}

bool eval_formula(const FormulaPtr& f, const Structure& s, const Assignment& a) {
    switch (f->kind) {
        case FormulaKind::atom: {
            const bool eq = eval_term(f->lhs, s, a) == eval_term(f->rhs, s, a);
            return eq != f->negated;
        }
        case FormulaKind::conj:
            return std::all_of(f->args.begin(), f->args.end(), [&](const FormulaPtr& g) { return eval_formula(g, s, a); });
        case FormulaKind::disj:
            return std::any_of(f->args.begin(), f->args.end(), [&](const FormulaPtr& g) { return eval_formula(g, s, a); });
    }
    return false;
}

// --- simplification ----------------------------------------------------------------

namespace {

bool is_const_value(const TermPtr& t, long long v) {
    if (t->kind != TermKind::constant) return false;
    return t->value == Scalar::from_int(t->value.field(), v);
}

bool foldable(const TermPtr& t, const Structure& s) {
    if (t->kind == TermKind::variable) return false;
    if (t->kind == TermKind::deriv && !s.derivation) return false;
    if (t->kind == TermKind::sigma && !s.action) return false;
    return std::all_of(t->args.begin(), t->args.end(), [&](const TermPtr& a) { return foldable(a, s); });
}

}  // namespace

TermPtr simplify(const TermPtr& t, const Structure& s) {
    if (t->kind == TermKind::constant || t->kind == TermKind::variable) return t;
    auto r = std::make_shared<Term>(*t);
    for (auto& a : r->args) a = simplify(a, s);
    TermPtr out = r;
    if (foldable(out, s)) {
        try {
            return Term::constant(eval_term(out, s, {}));
        } catch (const Error&) {
            return out;
        }
    }
    const auto& A = r->args;
    switch (r->kind) {
        case TermKind::add:
            if (is_const_value(A[0], 0)) return A[1];
            if (is_const_value(A[1], 0)) return A[0];
            break;
        case TermKind::sub:
            if (is_const_value(A[1], 0)) return A[0];
            if (is_const_value(A[0], 0)) return Term::unary(TermKind::neg, A[1]);
            break;
        case TermKind::mul:
            if (is_const_value(A[0], 0)) return A[0];
            if (is_const_value(A[1], 0)) return A[1];
            if (is_const_value(A[0], 1)) return A[1];
            if (is_const_value(A[1], 1)) return A[0];
            break;
        case TermKind::div:
            if (is_const_value(A[1], 1)) return A[0];
            break;
        case TermKind::neg:
            if (A[0]->kind == TermKind::neg) return A[0]->args[0];
            break;
        case TermKind::pow:
            if (r->exponent == 1) return A[0];
            break;
        case TermKind::deriv:
        case TermKind::lambda0:
            if (is_const_value(A[0], 0)) return A[0];
            break;
        default: break;
    }
    return out;
}

}  // namespace pacf
