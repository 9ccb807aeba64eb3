#include "pacf/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "pacf/error.hpp"

namespace pacf {

// --- rings -------------------------------------------------------------------

PolyRing::PolyRing(Field field, std::vector<std::string> vars) : field_(std::move(field)), vars_(std::move(vars)) {
    std::set<std::string> seen(field_->transcendentals().begin(), field_->transcendentals().end());
    for (const auto& v : vars_) {
        if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
            fail("invalid variable name '" + v + "'");
        for (char ch : v)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
                fail("invalid variable name '" + v + "'");
        if (v == FieldDescriptor::kGeneratorName) fail("variable may not be named '" + v + "'");
        if (!seen.insert(v).second) fail("duplicate variable name '" + v + "'");
    }
}

std::optional<std::size_t> PolyRing::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

bool PolyRing::same_as(const PolyRing& o) const { return field_->same_as(*o.field_) && vars_ == o.vars_; }

Ring make_ring(const Field& field, const std::vector<std::string>& vars) {
    return std::make_shared<const PolyRing>(field, vars);
}

void require_same_ring(const Ring& a, const Ring& b, const char* what) {
    if (a.get() != b.get() && !a->same_as(*b)) fail(std::string("ring mismatch in ") + what);
}

Ring extend_ring(const Ring& r, const std::vector<std::string>& extra) {
    auto vars = r->vars();
    vars.insert(vars.end(), extra.begin(), extra.end());
    return make_ring(r->field(), vars);
}

std::string fresh_name(const Ring& r, const std::string& base) {
    auto used = [&](const std::string& n) {
        if (r->index_of(n)) return true;
        const auto& ts = r->field()->transcendentals();
        return n == FieldDescriptor::kGeneratorName || std::find(ts.begin(), ts.end(), n) != ts.end();
    };
    if (!used(base)) return base;
    for (int i = 1;; ++i) {
        std::string n = base + std::to_string(i);
        if (!used(n)) return n;
    }
}

// --- orders ------------------------------------------------------------------

namespace {

int grevlex_masked(const Mono& a, const Mono& b, const std::vector<bool>* mask, bool want) {
    unsigned da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (mask && (*mask)[i] != want) continue;
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (mask && (*mask)[i] != want) continue;
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace

int MonomialOrder::compare(const Mono& a, const Mono& b) const {
    switch (kind) {
        case OrderKind::lex:
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
            return 0;
        case OrderKind::block: {
            if (int c = grevlex_masked(a, b, &first, true)) return c;
            return grevlex_masked(a, b, &first, false);
        }
        case OrderKind::grevlex:
        default:
            return grevlex_masked(a, b, nullptr, true);
    }
}

std::string MonomialOrder::key() const {
    std::string k = kind == OrderKind::lex ? "lex" : kind == OrderKind::block ? "block:" : "grevlex";
    if (kind == OrderKind::block)
        for (bool b : first) k += b ? '1' : '0';
    return k;
}

// --- polynomials -------------------------------------------------------------

MultiPoly MultiPoly::zero(const Ring& r) {
    MultiPoly p;
    p.ring_ = r;
    return p;
}

MultiPoly MultiPoly::constant(const Ring& r, const Scalar& c) {
    require_same_field(r->field(), c.field(), "polynomial constant");
    return monomial(r, Mono(r->nvars(), 0), c);
}

MultiPoly MultiPoly::constant(const Ring& r, long long c) { return constant(r, Scalar::from_int(r->field(), c)); }

MultiPoly MultiPoly::var(const Ring& r, std::size_t i) {
    if (i >= r->nvars()) fail("variable index out of range");
    Mono m(r->nvars(), 0);
    m[i] = 1;
    return monomial(r, m, Scalar::one(r->field()));
}

MultiPoly MultiPoly::var(const Ring& r, const std::string& name) {
    auto i = r->index_of(name);
    if (!i) fail("unknown variable '" + name + "'");
    return var(r, *i);
}

MultiPoly MultiPoly::monomial(const Ring& r, Mono m, const Scalar& c) {
    if (m.size() != r->nvars()) fail("monomial arity mismatch");
    MultiPoly p = zero(r);
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Scalar MultiPoly::constant_term() const {
    auto it = terms_.find(Mono(ring_->nvars(), 0));
    return it == terms_.end() ? Scalar::zero(field()) : it->second;
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0u));
    return d;
}

unsigned MultiPoly::degree_in(std::size_t i) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
    return d;
}

bool MultiPoly::involves(std::size_t i) const { return degree_in(i) > 0; }

std::vector<bool> MultiPoly::support() const {
    std::vector<bool> s(ring_->nvars(), false);
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) s[i] = true;
    return s;
}

void PolyBuilder::add(const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = poly_.terms_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) poly_.terms_.erase(it);
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    require_same_ring(ring_, o.ring_, "addition");
    PolyBuilder b(ring_);
    for (const auto& [m, c] : terms_) b.add(m, c);
    for (const auto& [m, c] : o.terms_) b.add(m, c);
    return b.take();
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    require_same_ring(ring_, o.ring_, "multiplication");
    PolyBuilder b(ring_);
    Mono m(ring_->nvars());
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            b.add(m, ca * cb);
        }
    return b.take();
}

MultiPoly MultiPoly::operator*(const Scalar& c) const {
    if (c.is_zero()) return zero(ring_);
    MultiPoly r = *this;
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result = constant(ring_, 1);
    MultiPoly base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::pair<Mono, Scalar> MultiPoly::leading(const MonomialOrder& ord) const {
    if (terms_.empty()) fail("leading term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (ord.compare(it->first, best->first) > 0) best = it;
    return *best;
}

MultiPoly MultiPoly::monic(const MonomialOrder& ord) const {
    if (is_zero()) return *this;
    return *this * leading(ord).second.inverse();
}

Scalar MultiPoly::eval(const std::vector<Scalar>& point) const {
    if (point.size() != ring_->nvars()) fail("evaluation point has wrong arity");
    Scalar acc = Scalar::zero(field());
    for (const auto& [m, c] : terms_) {
        Scalar t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) t *= point[i].pow(m[i]);
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::partial(std::size_t i) const {
    PolyBuilder b(ring_);
    for (const auto& [m, c] : terms_) {
        if (m[i] == 0) continue;
        Mono d = m;
        d[i] -= 1;
        b.add(d, c * Scalar::from_int(field(), m[i]));
    }
    return b.take();
}

MultiPoly MultiPoly::substitute(const Ring& target, const std::vector<MultiPoly>& images) const {
    if (images.size() != ring_->nvars()) fail("substitution needs one image per variable");
    require_same_field(field(), target->field(), "substitution");
    std::vector<std::vector<MultiPoly>> powers(images.size());
    auto power = [&](std::size_t i, unsigned e) -> const MultiPoly& {
        auto& ps = powers[i];
        if (ps.empty()) ps.push_back(constant(target, 1));
        while (ps.size() <= e) ps.push_back(ps.back() * images[i]);
        return ps[e];
    };
    MultiPoly acc = zero(target);
    for (const auto& [m, c] : terms_) {
        MultiPoly t = constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) t = t * power(i, m[i]);
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::embed(const Ring& target) const {
    require_same_field(field(), target->field(), "embedding");
    std::vector<std::size_t> where(ring_->nvars());
    for (std::size_t i = 0; i < where.size(); ++i) {
        auto j = target->index_of(ring_->vars()[i]);
        if (!j) {
            if (!involves(i)) { where[i] = SIZE_MAX; continue; }
            fail("variable '" + ring_->vars()[i] + "' missing from target ring");
        }
        where[i] = *j;
    }
    MultiPoly r = zero(target);
    for (const auto& [m, c] : terms_) {
        Mono n(target->nvars(), 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) n[where[i]] = m[i];
        r.terms_.emplace(std::move(n), c);
    }
    return r;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const Terms::value_type*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    const auto ord = MonomialOrder::grevlex();
    std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) { return ord.compare(a->first, b->first) > 0; });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : ts) {
        if (!first) os << "+";
        first = false;
        const Mono& m = t->first;
        std::string cs = t->second.to_string();
        bool compound = cs.find_first_of("+/") != std::string::npos;
        bool has_mono = std::any_of(m.begin(), m.end(), [](unsigned e) { return e > 0; });
        if (!has_mono) {
            os << (compound && ts.size() > 1 ? "(" + cs + ")" : cs);
            continue;
        }
        bool sep = false;
        if (!t->second.is_one()) {
            os << (compound ? "(" + cs + ")" : cs);
            sep = true;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (sep) os << "*";
            os << ring_->vars()[i];
            if (m[i] > 1) os << "^" << m[i];
            sep = true;
        }
    }
    return os.str();
}

// --- parsing -----------------------------------------------------------------

namespace {

struct Token {
    enum Kind { num, ident, op, end } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::num, s.substr(i, j - i)});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::ident, s.substr(i, j - i)});
            i = j;
        } else if (std::string("+-*/^()").find(ch) != std::string::npos) {
            out.push_back({Token::op, std::string(1, ch)});
            ++i;
        } else {
            fail(std::string("unexpected character '") + ch + "' in polynomial '" + s + "'");
        }
    }
    out.push_back({Token::end, ""});
    return out;
}

RationalExpr normalize(RationalExpr e) {
    if (e.den.is_constant()) {
        e.num = e.num * e.den.constant_term().inverse();
        e.den = MultiPoly::constant(e.den.ring(), 1);
    }
    return e;
}

RationalExpr radd(const RationalExpr& a, const RationalExpr& b, bool subtract) {
    MultiPoly bn = subtract ? -b.num : b.num;
    if (a.den == b.den) return normalize({a.num + bn, a.den});
    return normalize({a.num * b.den + bn * a.den, a.den * b.den});
}

RationalExpr rmul(const RationalExpr& a, const RationalExpr& b) { return normalize({a.num * b.num, a.den * b.den}); }

RationalExpr rdiv(const RationalExpr& a, const RationalExpr& b) {
    if (b.num.is_zero()) fail("division by zero in polynomial expression");
    return normalize({a.num * b.den, a.den * b.num});
}

class Parser {
public:
    Parser(const Ring& r, const std::string& text) : ring_(r), text_(text), toks_(tokenize(text)) {}

    RationalExpr parse() {
        auto e = sum();
        if (peek().kind != Token::end) error("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool accept(const char* op) {
        if (peek().kind == Token::op && peek().text == op) { ++pos_; return true; }
        return false;
    }
    [[noreturn]] void error(const std::string& msg) const { fail("cannot parse '" + text_ + "': " + msg); }

    RationalExpr one() const {
        return {MultiPoly::constant(ring_, 1), MultiPoly::constant(ring_, 1)};
    }
    RationalExpr lift(MultiPoly p) const { return {std::move(p), MultiPoly::constant(ring_, 1)}; }

    RationalExpr sum() {
        RationalExpr acc;
        if (accept("-")) acc = rmul(lift(MultiPoly::constant(ring_, -1)), product());
        else {
            accept("+");
            acc = product();
        }
        while (true) {
            if (accept("+")) acc = radd(acc, product(), false);
            else if (accept("-")) acc = radd(acc, product(), true);
            else return acc;
        }
    }

    RationalExpr product() {
        RationalExpr acc = power();
        while (true) {
            if (accept("*")) acc = rmul(acc, power());
            else if (accept("/")) acc = rdiv(acc, power());
            else return acc;
        }
    }

    RationalExpr power() {
        RationalExpr base = atom();
        if (!accept("^")) return base;
        bool neg = accept("-");
        if (peek().kind != Token::num) error("exponent must be an integer");
        long long e = std::stoll(toks_[pos_++].text);
        if (e > 100000) error("exponent too large");
        RationalExpr r = {base.num.pow(unsigned(e)), base.den.pow(unsigned(e))};
        r = normalize(r);
        return neg ? rdiv(one(), r) : r;
    }

    RationalExpr atom() {
        const Token t = peek();
        if (t.kind == Token::num) {
            ++pos_;
            Code p = ring_->field()->p();
            long long v = 0;
            for (char ch : t.text) v = (v * 10 + (ch - '0')) % static_cast<long long>(p);
            return lift(MultiPoly::constant(ring_, v));
        }
        if (t.kind == Token::ident) {
            ++pos_;
            if (auto i = ring_->index_of(t.text)) return lift(MultiPoly::var(ring_, *i));
            const auto& ts = ring_->field()->transcendentals();
            auto it = std::find(ts.begin(), ts.end(), t.text);
            if (it != ts.end())
                return lift(MultiPoly::constant(ring_, Scalar::transcendental(ring_->field(), int(it - ts.begin()))));
            if (t.text == FieldDescriptor::kGeneratorName && ring_->field()->constants().k() > 1)
                return lift(MultiPoly::constant(ring_, Scalar::generator(ring_->field())));
            error("unknown identifier '" + t.text + "'");
        }
        if (accept("(")) {
            auto e = sum();
            if (!accept(")")) error("missing ')'");
            return e;
        }
        error(t.kind == Token::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }

    const Ring& ring_;
    std::string text_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalExpr parse_rational(const Ring& r, const std::string& text) { return Parser(r, text).parse(); }

RationalExpr rational(const MultiPoly& p) { return {p, MultiPoly::constant(p.ring(), 1)}; }
RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) { return radd(a, b, false); }
RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return radd(a, b, true); }
RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) { return rmul(a, b); }
RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) { return rdiv(a, b); }

std::optional<Scalar> eval(const RationalExpr& e, const std::vector<Scalar>& point) {
    Scalar d = e.den.eval(point);
    if (d.is_zero()) return std::nullopt;
    return e.num.eval(point) / d;
}

std::string to_string(const RationalExpr& e) {
    if (e.den.is_constant() && e.den.constant_term().is_one()) return e.num.to_string();
    auto wrap = [](const MultiPoly& p) {
        std::string s = p.to_string();
        return p.size() > 1 || s.find_first_of("+/") != std::string::npos ? "(" + s + ")" : s;
    };
    return wrap(e.num) + "/" + wrap(e.den);
}

MultiPoly parse_poly(const Ring& r, const std::string& text) {
    auto e = parse_rational(r, text);
    if (!e.den.is_constant()) fail("'" + text + "' is not a polynomial");
    return e.num;
}

// --- Groebner bases ------------------------------------------------------------

namespace {

struct GTerm {
    Mono m;
    Scalar c;
};
using GPoly = std::vector<GTerm>;  // sorted by decreasing monomial

GPoly to_gpoly(const MultiPoly& f, const MonomialOrder& ord) {
    GPoly g;
    g.reserve(f.size());
    for (const auto& [m, c] : f.terms()) g.push_back({m, c});
    std::sort(g.begin(), g.end(), [&](const GTerm& a, const GTerm& b) { return ord.compare(a.m, b.m) > 0; });
    return g;
}

MultiPoly from_gpoly(const Ring& r, const GPoly& g) {
    PolyBuilder b(r);
    for (const auto& t : g) b.add(t.m, t.c);
    return b.take();
}

bool divides(const Mono& a, const Mono& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono lcm(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool coprime(const Mono& a, const Mono& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

unsigned degree(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0u); }

struct Desc {
    const MonomialOrder* ord;
    bool operator()(const Mono& a, const Mono& b) const { return ord->compare(a, b) > 0; }
};

// Full reduction; lead-only when `full` is false.
GPoly reduce(const GPoly& f, const std::vector<GPoly>& G, const MonomialOrder& ord, bool full = true,
             std::size_t skip = SIZE_MAX) {
    std::map<Mono, Scalar, Desc> work{Desc{&ord}};
    for (const auto& t : f) work.emplace(t.m, t.c);
    GPoly out;
    Mono shifted;
    while (!work.empty()) {
        auto it = work.begin();
        const GPoly* div = nullptr;
        for (std::size_t k = 0; k < G.size(); ++k) {
            if (k == skip || G[k].empty()) continue;
            if (divides(G[k][0].m, it->first)) { div = &G[k]; break; }
        }
        if (!div) {
            if (!full) {
                for (auto& [m, c] : work) out.push_back({m, c});
                return out;
            }
            out.push_back({it->first, it->second});
            work.erase(it);
            continue;
        }
        const Mono lead = it->first;
        const Scalar q = it->second / (*div)[0].c;
        work.erase(it);
        for (std::size_t j = 1; j < div->size(); ++j) {
            const auto& t = (*div)[j];
            shifted.resize(lead.size());
            for (std::size_t i = 0; i < lead.size(); ++i) shifted[i] = t.m[i] + lead[i] - (*div)[0].m[i];
            Scalar v = q * t.c;
            auto [w, inserted] = work.emplace(shifted, -v);
            if (!inserted) {
                w->second -= v;
                if (w->second.is_zero()) work.erase(w);
            }
        }
    }
    return out;
}

void make_monic(GPoly& g) {
    if (g.empty() || g[0].c.is_one()) return;
    Scalar inv = g[0].c.inverse();
    for (auto& t : g) t.c *= inv;
}

GPoly spoly(const GPoly& a, const GPoly& b) {
    Mono l = lcm(a[0].m, b[0].m);
    std::vector<GTerm> terms;
    std::map<Mono, Scalar> acc;
    auto add_shifted = [&](const GPoly& g, const Scalar& scale) {
        for (std::size_t j = 1; j < g.size(); ++j) {
            Mono m(l.size());
            for (std::size_t i = 0; i < l.size(); ++i) m[i] = g[j].m[i] + l[i] - g[0].m[i];
            Scalar v = g[j].c * scale;
            auto [w, inserted] = acc.emplace(std::move(m), v);
            if (!inserted) {
                w->second += v;
                if (w->second.is_zero()) acc.erase(w);
            }
        }
    };
    // a and b are monic
    add_shifted(a, Scalar::one(a[0].c.field()));
    add_shifted(b, -Scalar::one(a[0].c.field()));
    GPoly out;
    for (auto& [m, c] : acc) out.push_back({m, c});
    return out;
}

}  // namespace

std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens, const MonomialOrder& ord,
                                      const GroebnerLimits& limits) {
    if (gens.empty()) return {};
    const Ring ring = gens[0].ring();
    for (const auto& g : gens) require_same_ring(ring, g.ring(), "Groebner basis");
    MonomialOrder o = ord;
    if (o.kind == OrderKind::block && o.first.size() != ring->nvars()) fail("block order has wrong arity");
    auto sorter = [&](const GTerm& a, const GTerm& b) { return o.compare(a.m, b.m) > 0; };

    std::vector<GPoly> G;
    struct Pair {
        std::size_t i, j;
        Mono lcm;
    };
    std::vector<Pair> pairs;
    std::set<std::pair<std::size_t, std::size_t>> pending;
    bool unit = false;

    auto add = [&](GPoly h) {
        make_monic(h);
        if (degree(h[0].m) == 0) unit = true;
        if (degree(h[0].m) > limits.max_degree) exhausted("Groebner basis degree cap exceeded");
        std::size_t idx = G.size();
        G.push_back(std::move(h));
        if (G.size() > limits.max_basis) exhausted("Groebner basis size cap exceeded");
        for (std::size_t i = 0; i < idx; ++i) {
            if (G[i].empty()) continue;
            pairs.push_back({i, idx, lcm(G[i][0].m, G[idx][0].m)});
            pending.insert({i, idx});
        }
    };

    std::vector<GPoly> input;
    for (const auto& g : gens)
        if (!g.is_zero()) input.push_back(to_gpoly(g, o));
    std::sort(input.begin(), input.end(), [&](const GPoly& a, const GPoly& b) { return sorter(b[0], a[0]); });
    for (auto& g : input) {
        if (unit) break;
        GPoly h = reduce(g, G, o);
        if (!h.empty()) add(std::move(h));
    }

    std::size_t processed = 0;
    while (!pairs.empty() && !unit) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            int c = o.compare(pairs[k].lcm, pairs[best].lcm);
            if (c < 0 || (c == 0 && (pairs[k].j < pairs[best].j))) best = k;
        }
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + std::ptrdiff_t(best));
        pending.erase({pr.i, pr.j});
        if (++processed > limits.max_pairs) exhausted("Groebner pair cap exceeded");
        const GPoly& a = G[pr.i];
        const GPoly& b = G[pr.j];
        if (coprime(a[0].m, b[0].m)) continue;
        bool chain = false;
        for (std::size_t k = 0; k < G.size() && !chain; ++k) {
            if (k == pr.i || k == pr.j || G[k].empty()) continue;
            if (!divides(G[k][0].m, pr.lcm)) continue;
            auto key = [](std::size_t x, std::size_t y) { return std::make_pair(std::min(x, y), std::max(x, y)); };
            if (!pending.count(key(pr.i, k)) && !pending.count(key(pr.j, k))) chain = true;
        }
        if (chain) continue;
        GPoly h = reduce(spoly(a, b), G, o);
        if (!h.empty()) add(std::move(h));
    }

    if (unit) return {MultiPoly::constant(ring, 1)};

    // minimalize
    std::vector<GPoly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            if (divides(G[j][0].m, G[i][0].m) && (G[j][0].m != G[i][0].m || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    // interreduce tails
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        GPoly tail(minimal[i].begin() + 1, minimal[i].end());
        GPoly red = reduce(tail, minimal, o, true, i);
        GPoly full;
        full.push_back(minimal[i][0]);
        full.insert(full.end(), red.begin(), red.end());
        minimal[i] = std::move(full);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const GPoly& a, const GPoly& b) { return sorter(a[0], b[0]); });
    std::vector<MultiPoly> out;
    out.reserve(minimal.size());
    for (const auto& g : minimal) out.push_back(from_gpoly(ring, g));
    return out;
}

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis, const MonomialOrder& ord) {
    std::vector<GPoly> G;
    for (const auto& b : basis) {
        require_same_ring(f.ring(), b.ring(), "normal form");
        if (!b.is_zero()) G.push_back(to_gpoly(b, ord));
    }
    return from_gpoly(f.ring(), reduce(to_gpoly(f, ord), G, ord));
}

Ideal::Ideal(Ring r, std::vector<MultiPoly> gens) : ring_(std::move(r)) {
    for (auto& g : gens) {
        require_same_ring(ring_, g.ring(), "ideal");
        if (!g.is_zero()) gens_.push_back(std::move(g));
    }
}

const std::vector<MultiPoly>& Ideal::basis(const MonomialOrder& ord) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto key = ord.key();
    auto it = cache_->bases.find(key);
    if (it != cache_->bases.end()) return *it->second;
    auto gb = std::make_shared<const std::vector<MultiPoly>>(groebner_basis(gens_, ord));
    cache_->bases.emplace(key, gb);
    return *gb;
}

std::vector<MultiPoly> groebner_basis(const Ideal& I, const MonomialOrder& ord) { return I.basis(ord); }

bool ideal_member(const MultiPoly& f, const Ideal& I) {
    require_same_ring(f.ring(), I.ring(), "ideal membership");
    if (f.is_zero()) return true;
    return normal_form(f, I.basis(), MonomialOrder::grevlex()).is_zero();
}

bool contains_one(const Ideal& I) {
    const auto& gb = I.basis();
    return gb.size() == 1 && gb[0].is_constant();
}

Ideal eliminate(const Ideal& I, const std::vector<bool>& drop) {
    if (drop.size() != I.ring()->nvars()) fail("elimination mask has wrong arity");
    if (std::none_of(drop.begin(), drop.end(), [](bool b) { return b; })) return I;
    const auto& gb = I.basis(MonomialOrder::block(drop));
    std::vector<MultiPoly> kept;
    for (const auto& g : gb) {
        auto s = g.support();
        bool ok = true;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] && drop[i]) ok = false;
        if (ok) kept.push_back(g);
    }
    return Ideal(I.ring(), kept);
}

Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop) {
    std::vector<bool> mask(I.ring()->nvars(), false);
    for (const auto& name : drop) {
        auto i = I.ring()->index_of(name);
        if (!i) fail("cannot eliminate unknown variable '" + name + "'");
        mask[*i] = true;
    }
    return eliminate(I, mask);
}

std::optional<int> ideal_dimension(const Ideal& I) {
    const std::size_t n = I.ring()->nvars();
    const auto& gb = I.basis();
    if (gb.size() == 1 && gb[0].is_constant()) return std::nullopt;
    std::vector<std::vector<bool>> leads;
    for (const auto& g : gb) {
        auto lm = g.leading(MonomialOrder::grevlex()).first;
        std::vector<bool> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = lm[i] > 0;
        leads.push_back(s);
    }
    if (n > 24) unsupported("dimension computation limited to 24 variables");
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const auto& s : leads) {
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i)
                if (s[i] && !(mask >> i & 1u)) inside = false;
            if (inside) { independent = false; break; }
        }
        if (independent) best = size;
    }
    return best;
}

bool radical_member(const MultiPoly& f, const Ideal& I) {
    require_same_ring(f.ring(), I.ring(), "radical membership");
    if (f.is_zero()) return true;
    if (ideal_member(f, I)) return true;
    Ring ext = extend_ring(I.ring(), {fresh_name(I.ring(), "w")});
    std::vector<MultiPoly> gens;
    for (const auto& g : I.gens()) gens.push_back(g.embed(ext));
    MultiPoly w = MultiPoly::var(ext, ext->nvars() - 1);
    gens.push_back(MultiPoly::constant(ext, 1) - w * f.embed(ext));
    return contains_one(Ideal(ext, gens));
}

}  // namespace pacf
