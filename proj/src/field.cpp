#include "pacf/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "pacf/error.hpp"
#include "pacf/linalg.hpp"

namespace pacf {

// --- descriptors ------------------------------------------------------------

FieldDescriptor::FieldDescriptor(ConstFieldPtr constants, std::vector<std::string> transcendentals)
    : constants_(std::move(constants)), vars_(std::move(transcendentals)) {
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
            fail("invalid transcendental name '" + v + "'");
        if (v == kGeneratorName) fail("transcendental may not be named '" + v + "'");
        if (!seen.insert(v).second) fail("duplicate variable name '" + v + "'");
    }
}

bool FieldDescriptor::same_as(const FieldDescriptor& o) const {
    return constants_->same_as(*o.constants_) && vars_ == o.vars_;
}

std::string FieldDescriptor::spec() const {
    std::ostringstream os;
    const auto& F = *constants_;
    if (F.k() == 1) {
        os << "Fp(" << F.p() << ";";
        for (std::size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : " ") << vars_[i];
        os << ")";
        return os.str();
    }
    os << "GF(" << F.p() << "," << F.k();
    if (F.modulus() != ConstField::default_modulus(F.p(), F.k())) {
        os << ",";
        bool first = true;
        for (std::size_t i = F.modulus().size(); i-- > 0;) {
            Code c = F.modulus()[i];
            if (c == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0) { os << c; continue; }
            if (c != 1) os << c << "*";
            os << kGeneratorName;
            if (i > 1) os << "^" << i;
        }
    }
    if (!vars_.empty()) {
        os << ";";
        for (std::size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : " ") << vars_[i];
    }
    os << ")";
    return os.str();
}

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) { out.push_back(strip(cur)); cur.clear(); }
        else cur += ch;
    }
    out.push_back(strip(cur));
    return out;
}

long long parse_int(const std::string& s, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail("expected integer in " + ctx + ", got '" + s + "'");
    }
}

// Univariate polynomial over F_p written in any single variable name.
ConstField::Modulus parse_modulus(const std::string& text, Code p) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    std::map<unsigned, long long> coef;
    std::size_t i = 0;
    std::string varname;
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        long long c = 1;
        bool have_num = false;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) { c = std::stoll(s.substr(start, i - start)); have_num = true; }
        if (i < s.size() && s[i] == '*') ++i;
        unsigned e = 0;
        if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
            std::size_t vs = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            std::string v = s.substr(vs, i - vs);
            if (!varname.empty() && v != varname) fail("defining polynomial must be univariate");
            varname = v;
            e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t es = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (es == i) fail("bad exponent in defining polynomial");
                e = unsigned(std::stoul(s.substr(es, i - es)));
            }
        } else if (!have_num) {
            fail("cannot parse defining polynomial '" + text + "'");
        }
        coef[e] += sign * c;
        if (i < s.size() && s[i] != '+' && s[i] != '-') fail("cannot parse defining polynomial '" + text + "'");
    }
    unsigned deg = coef.empty() ? 0 : coef.rbegin()->first;
    ConstField::Modulus m(deg + 1, 0);
    for (auto [e, c] : coef) {
        long long r = c % static_cast<long long>(p);
        if (r < 0) r += p;
        m[e] = Code(r);
    }
    while (!m.empty() && m.back() == 0) m.pop_back();
    return m;
}

}  // namespace

Field make_field(Code p, unsigned k, const std::vector<std::string>& transcendentals) {
    if (!is_prime(p)) fail("characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) fail("extension degree must be at least 1");
    return std::make_shared<const FieldDescriptor>(ConstField::get(p, k), transcendentals);
}

Field make_field(Code p, const ConstField::Modulus& modulus, const std::vector<std::string>& transcendentals) {
    return std::make_shared<const FieldDescriptor>(ConstField::get(p, modulus), transcendentals);
}

Field make_field(const std::string& raw) {
    std::string s = strip(raw);
    auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') fail("bad field spec '" + raw + "'");
    std::string head = strip(s.substr(0, open));
    std::string body = s.substr(open + 1, s.size() - open - 2);
    std::string before = body, after;
    if (auto semi = body.find(';'); semi != std::string::npos) {
        before = body.substr(0, semi);
        after = body.substr(semi + 1);
    }
    std::vector<std::string> vars;
    if (!strip(after).empty())
        for (auto& v : split(after, ',')) vars.push_back(v);
    auto parts = split(before, ',');
    if (head == "Fp") {
        if (parts.size() != 1) fail("Fp(p; vars) expects a single characteristic");
        long long p = parse_int(parts[0], raw);
        if (p < 2 || !is_prime(Code(p))) fail("characteristic " + parts[0] + " is not prime");
        return make_field(Code(p), 1, vars);
    }
    if (head == "GF") {
        if (parts.size() < 2 || parts.size() > 3) fail("GF(p,k[,poly]) expected");
        long long p = parse_int(parts[0], raw);
        long long k = parse_int(parts[1], raw);
        if (p < 2 || !is_prime(Code(p))) fail("characteristic " + parts[0] + " is not prime");
        if (k < 1) fail("extension degree must be at least 1");
        if (parts.size() == 3) {
            auto m = parse_modulus(parts[2], Code(p));
            if (m.size() != std::size_t(k) + 1) fail("defining polynomial must have degree " + parts[1]);
            if (m.back() != 1) fail("defining polynomial must be monic");
            if (!ConstField::is_irreducible_modulus(Code(p), m))
                fail("defining polynomial " + parts[2] + " is reducible over GF(" + parts[0] + ")");
            return make_field(Code(p), m, vars);
        }
        return make_field(Code(p), unsigned(k), vars);
    }
    fail("unknown field kind '" + head + "'");
}

Field constant_extension(const Field& f, unsigned s) {
    return make_field(f->p(), f->constants().k() * s, f->transcendentals());
}

void require_same_field(const Field& a, const Field& b, const char* what) {
    if (a.get() != b.get() && !a->same_as(*b))
        fail(std::string("field mismatch in ") + what + ": " + a->spec() + " vs " + b->spec());
}

// --- scalars ----------------------------------------------------------------

Scalar Scalar::fraction(const Field& f, RPoly num, RPoly den) {
    const auto& F = f->constants();
    if (rp::is_zero(den)) fail("division by zero in " + f->spec());
    Scalar s;
    s.field_ = f;
    if (rp::is_zero(num)) {
        s.num_ = rp::zero(f->m());
        s.den_ = rp::constant(f->m(), 1);
        return s;
    }
    if (!rp::is_constant(den)) {
        RPoly g = rp::gcd(F, num, den);
        if (!rp::is_constant(g)) {
            num = *rp::div_exact(F, num, g);
            den = *rp::div_exact(F, den, g);
        }
    }
    Code l = rp::leading_constant(den);
    if (l != 1) {
        Code li = F.inv(l);
        num = rp::scale(F, num, li);
        den = rp::scale(F, den, li);
    }
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    return s;
}

Scalar Scalar::zero(const Field& f) { return from_code(f, 0); }
Scalar Scalar::one(const Field& f) { return from_code(f, 1); }

Scalar Scalar::from_code(const Field& f, Code c) {
    Scalar s;
    s.field_ = f;
    s.num_ = rp::constant(f->m(), c);
    s.den_ = rp::constant(f->m(), 1);
    return s;
}

Scalar Scalar::from_int(const Field& f, long long v) { return from_code(f, f->constants().from_int(v)); }

Scalar Scalar::generator(const Field& f) { return from_code(f, f->constants().generator()); }

Scalar Scalar::transcendental(const Field& f, int index) {
    Scalar s;
    s.field_ = f;
    s.num_ = rp::variable(f->m(), index);
    s.den_ = rp::constant(f->m(), 1);
    return s;
}

bool Scalar::is_one() const {
    return rp::is_constant(num_) && rp::constant_value(num_) == 1 && rp::is_constant(den_);
}

Code Scalar::constant_code() const {
    if (!is_constant()) fail("scalar " + to_string() + " is not a constant");
    return rp::constant_value(num_);
}

unsigned Scalar::height() const { return std::max(rp::total_degree(num_), rp::total_degree(den_)); }

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(field_, o.field_, "addition");
    const auto& F = field_->constants();
    if (den_ == o.den_) return fraction(field_, rp::add(F, num_, o.num_), den_);
    return fraction(field_, rp::add(F, rp::mul(F, num_, o.den_), rp::mul(F, o.num_, den_)), rp::mul(F, den_, o.den_));
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    s.num_ = rp::neg(field_->constants(), num_);
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(field_, o.field_, "multiplication");
    const auto& F = field_->constants();
    if (is_zero() || o.is_zero()) return zero(field_);
    return fraction(field_, rp::mul(F, num_, o.num_), rp::mul(F, den_, o.den_));
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail("inverse of zero in " + field_->spec());
    return fraction(field_, den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    const auto& F = field_->constants();
    Scalar s;
    s.field_ = field_;
    s.num_ = rp::pow(F, num_, unsigned(e));
    s.den_ = rp::pow(F, den_, unsigned(e));
    if (rp::is_zero(s.num_)) return zero(field_);
    return s;  // powers of coprime, normalized polynomials stay canonical
}

namespace {

bool term_greater(const rp::Term& a, const rp::Term& b) {
    unsigned da = 0, db = 0;
    for (auto e : a.exps) da += e;
    for (auto e : b.exps) db += e;
    if (da != db) return da > db;
    return a.exps > b.exps;
}

std::vector<rp::Term> sorted_terms(const RPoly& a) {
    auto ts = rp::terms(a);
    std::sort(ts.begin(), ts.end(), term_greater);
    return ts;
}

int compare_poly(const RPoly& a, const RPoly& b) {
    auto ta = sorted_terms(a), tb = sorted_terms(b);
    for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
        if (ta[i].exps != tb[i].exps) return term_greater(ta[i], tb[i]) ? 1 : -1;
        if (ta[i].coef != tb[i].coef) return ta[i].coef < tb[i].coef ? -1 : 1;
    }
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    return 0;
}

std::string const_to_string(const ConstField& F, Code c, bool* compound) {
    *compound = false;
    if (F.in_prime_field(c)) return std::to_string(c);
    auto d = F.digits(c);
    std::ostringstream os;
    int nterms = 0;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0) continue;
        if (nterms++) os << "+";
        if (i == 0) { os << d[i]; continue; }
        if (d[i] != 1) os << d[i] << "*";
        os << FieldDescriptor::kGeneratorName;
        if (i > 1) os << "^" << i;
    }
    *compound = nterms > 1;
    return os.str();
}

std::string poly_to_string(const FieldDescriptor& f, const RPoly& a, bool* multi) {
    auto ts = sorted_terms(a);
    *multi = ts.size() > 1;
    if (ts.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : ts) {
        bool compound = false;
        std::string cs = const_to_string(f.constants(), t.coef, &compound);
        bool has_mono = false;
        for (auto e : t.exps) has_mono |= e > 0;
        if (!first) os << "+";
        if (ts.size() > 1 && compound) *multi = true;
        if (!has_mono) {
            os << (compound && ts.size() > 1 ? "(" + cs + ")" : cs);
        } else {
            bool need_sep = false;
            if (t.coef != 1) {
                os << (compound ? "(" + cs + ")" : cs);
                need_sep = true;
            }
            for (std::size_t v = 0; v < t.exps.size(); ++v) {
                if (t.exps[v] == 0) continue;
                if (need_sep) os << "*";
                os << f.transcendentals()[v];
                if (t.exps[v] > 1) os << "^" << t.exps[v];
                need_sep = true;
            }
        }
        first = false;
    }
    if (ts.size() == 1) {
        bool compound = false;
        const_to_string(f.constants(), ts[0].coef, &compound);
        bool has_mono = false;
        for (auto e : ts[0].exps) has_mono |= e > 0;
        *multi = compound && !has_mono;
    }
    return os.str();
}

}  // namespace

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    if (int c = compare_poly(a.den_, b.den_); c != 0) return c < 0;
    return compare_poly(a.num_, b.num_) < 0;
}

std::string Scalar::to_string() const {
    if (!field_) return "<unset>";
    bool nm = false, dm = false;
    std::string n = poly_to_string(*field_, num_, &nm);
    if (rp::is_constant(den_)) return n;
    std::string d = poly_to_string(*field_, den_, &dm);
    bool dmono = !dm;
    return (nm ? "(" + n + ")" : n) + "/" + (dmono ? d : "(" + d + ")");
}

Scalar Scalar::partial(int var) const {
    const auto& F = field_->constants();
    // (n/d)' = (n' d - n d') / d^2
    RPoly dn = rp::derivative(F, num_, var);
    RPoly dd = rp::derivative(F, den_, var);
    RPoly top = rp::sub(F, rp::mul(F, dn, den_), rp::mul(F, num_, dd));
    return fraction(field_, top, rp::mul(F, den_, den_));
}

Scalar Scalar::substitute(const Field& target, const std::vector<Scalar>& images) const {
    if (int(images.size()) != field_->m()) fail("substitution needs one image per transcendental");
    std::vector<Code> table;
    const auto& src = field_->constants();
    const auto& dst = target->constants();
    if (!src.same_as(dst)) table = embed_table(src, dst);
    auto eval_poly = [&](const RPoly& a) {
        Scalar acc = Scalar::zero(target);
        for (const auto& t : rp::terms(a)) {
            Scalar term = Scalar::from_code(target, table.empty() ? t.coef : table[t.coef]);
            for (std::size_t v = 0; v < t.exps.size(); ++v)
                if (t.exps[v]) term = term * images[v].pow(t.exps[v]);
            acc = acc + term;
        }
        return acc;
    };
    Scalar d = eval_poly(den_);
    if (d.is_zero()) fail("denominator vanishes under substitution");
    return eval_poly(num_) / d;
}

// --- structure maps -----------------------------------------------------------

Scalar frobenius(const Scalar& x) { return x.pow(x.field()->p()); }

std::optional<Scalar> pth_root(const Scalar& x) {
    const auto& f = x.field();
    const auto& F = f->constants();
    const Code p = f->p();
    auto root_poly = [&](const RPoly& a) -> std::optional<RPoly> {
        std::vector<rp::Term> out;
        for (auto t : rp::terms(a)) {
            for (auto& e : t.exps) {
                if (e % p != 0) return std::nullopt;
                e /= p;
            }
            t.coef = F.pth_root(t.coef);
            out.push_back(std::move(t));
        }
        return rp::from_terms(F, f->m(), out);
    };
    auto n = root_poly(x.num());
    if (!n) return std::nullopt;
    auto d = root_poly(x.den());
    if (!d) return std::nullopt;
    return Scalar::fraction(f, *n, *d);
}

Scalar lambda0(const Scalar& x) {
    auto r = pth_root(x);
    return r ? *r : Scalar::zero(x.field());
}

std::vector<Scalar> p_coordinates(const Scalar& x) {
    const auto& f = x.field();
    const auto& F = f->constants();
    const Code p = f->p();
    const int m = f->m();
    std::size_t dim = 1;
    for (int i = 0; i < m; ++i) dim *= p;
    // x = num * den^(p-1) / den^p and den^p is already a p-th power.
    RPoly top = rp::mul(F, x.num(), rp::pow(F, x.den(), unsigned(p - 1)));
    std::vector<std::vector<rp::Term>> parts(dim);
    for (auto t : rp::terms(top)) {
        std::size_t idx = 0;
        for (int v = 0; v < m; ++v) {
            idx = idx * p + t.exps[v] % p;
            t.exps[v] /= p;
        }
        t.coef = F.pth_root(t.coef);
        parts[idx].push_back(std::move(t));
    }
    std::vector<Scalar> out;
    out.reserve(dim);
    for (auto& part : parts) out.push_back(Scalar::fraction(f, rp::from_terms(F, m, part), x.den()));
    return out;
}

std::vector<unsigned> p_monomial_exponents(unsigned j, unsigned e, Code p) {
    std::vector<unsigned> ex(e, 0);
    unsigned v = j - 1;
    for (unsigned i = e; i-- > 0;) {
        ex[i] = v % p;
        v /= p;
    }
    return ex;
}

std::vector<Scalar> p_monomials(const std::vector<Scalar>& bs, const Field& K) {
    const Code p = K->p();
    const unsigned e = unsigned(bs.size());
    unsigned count = 1;
    for (unsigned i = 0; i < e; ++i) count *= p;
    std::vector<Scalar> out;
    out.reserve(count);
    for (unsigned j = 1; j <= count; ++j) {
        auto ex = p_monomial_exponents(j, e, p);
        Scalar m = Scalar::one(K);
        for (unsigned i = 0; i < e; ++i)
            if (ex[i]) m = m * bs[i].pow(ex[i]);
        out.push_back(m);
    }
    return out;
}

namespace {

/// Rows (d/dt_1 x, ..., d/dt_m x); over F(t_1..t_m) a tuple is p-independent
/// iff these rows are linearly independent.
linalg::Matrix<Scalar> jacobian(const std::vector<Scalar>& xs, const Field& K) {
    linalg::Matrix<Scalar> rows;
    rows.reserve(xs.size());
    for (const auto& x : xs) {
        std::vector<Scalar> row;
        for (int v = 0; v < K->m(); ++v) row.push_back(x.partial(v));
        rows.push_back(std::move(row));
    }
    return rows;
}

Scalar apply_derivation(const std::vector<Scalar>& coeffs, const Scalar& x) {
    Scalar r = Scalar::zero(x.field());
    for (std::size_t v = 0; v < coeffs.size(); ++v)
        if (!coeffs[v].is_zero()) r += coeffs[v] * x.partial(int(v));
    return r;
}

}  // namespace

PIndependence p_independence(const std::vector<Scalar>& xs, const Field& K) {
    for (const auto& x : xs) require_same_field(x.field(), K, "p-independence");
    if (xs.empty()) return PIndependence::independent;
    if (int(xs.size()) > K->imperfection_exponent()) return PIndependence::exceeds_imperfection;
    return linalg::rank(jacobian(xs, K)) == xs.size() ? PIndependence::independent : PIndependence::dependent;
}

bool is_p_independent(const std::vector<Scalar>& xs, const Field& K) {
    return p_independence(xs, K) == PIndependence::independent;
}

LambdaFamily lambda_family(const std::vector<Scalar>& bs, const Scalar& c) {
    const Field& K = c.field();
    const Code p = K->p();
    const unsigned e = unsigned(bs.size());
    std::size_t count = 1;
    for (std::size_t i = 0; i < bs.size(); ++i) count *= p;
    LambdaFamily out{LambdaCase::dependent_basis, std::vector<Scalar>(count, Scalar::zero(K))};
    if (p_independence(bs, K) != PIndependence::independent) return out;
    auto with_c = bs;
    with_c.push_back(c);
    if (p_independence(with_c, K) == PIndependence::independent) {
        out.which = LambdaCase::independent_with_c;
        return out;
    }
    // Complete bs to a p-basis with transcendentals, then take the dual
    // derivations D_i (D_i(basis_k) = delta_ik).
    auto basis = bs;
    for (int v = 0; v < K->m() && int(basis.size()) < K->m(); ++v) {
        auto trial = basis;
        trial.push_back(Scalar::transcendental(K, v));
        if (p_independence(trial, K) == PIndependence::independent) basis = std::move(trial);
    }
    const std::size_t m = basis.size();
    const auto J = jacobian(basis, K);
    linalg::Matrix<Scalar> aug(m, std::vector<Scalar>(2 * m, Scalar::zero(K)));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) aug[j][k] = J[k][j];
        aug[j][m + j] = Scalar::one(K);
    }
    if (linalg::rref(aug).size() != m) fail("internal: completed p-basis is degenerate");
    std::vector<std::vector<Scalar>> dual(e, std::vector<Scalar>(m, Scalar::zero(K)));
    for (unsigned i = 0; i < e; ++i)
        for (std::size_t j = 0; j < m; ++j) dual[i][j] = aug[i][m + j];

    // derivs[j - 1] = D^{ex(j)} c, indexed like the p-monomials.
    auto index_of = [&](const std::vector<unsigned>& ex) {
        std::size_t idx = 0;
        for (unsigned i = 0; i < e; ++i) idx = idx * p + ex[i];
        return idx;
    };
    std::vector<Scalar> derivs(count, Scalar::zero(K));
    derivs[0] = c;
    for (unsigned j = 2; j <= count; ++j) {
        auto ex = p_monomial_exponents(j, e, p);
        unsigned last = e;
        while (ex[last - 1] == 0) --last;
        --ex[last - 1];
        derivs[j - 1] = apply_derivation(dual[last - 1], derivs[index_of(ex)]);
    }
    std::vector<Scalar> inv_fact(p, Scalar::one(K));
    for (Code k = 2; k < p; ++k) inv_fact[k] = inv_fact[k - 1] / Scalar::from_int(K, long(k));

    // A_a a! = sum_k prod_i (-b_i)^{k_i} / k_i! * D^{a+k} c, with a + k < p.
    for (unsigned j = 1; j <= count; ++j) {
        const auto a = p_monomial_exponents(j, e, p);
        Scalar acc = Scalar::zero(K);
        for (unsigned l = 1; l <= count; ++l) {
            const auto k = p_monomial_exponents(l, e, p);
            bool fits = true;
            for (unsigned i = 0; i < e && fits; ++i) fits = a[i] + k[i] < p;
            if (!fits) continue;
            Scalar w = Scalar::one(K);
            std::vector<unsigned> sum(e);
            for (unsigned i = 0; i < e; ++i) {
                sum[i] = a[i] + k[i];
                if (k[i]) w = w * (-bs[i]).pow(k[i]) * inv_fact[k[i]];
            }
            acc += w * derivs[index_of(sum)];
        }
        for (unsigned i = 0; i < e; ++i) acc = acc * inv_fact[a[i]];
        auto root = pth_root(acc);
        if (!root) fail("internal: Case-3 lambda coefficient is not a p-th power");
        out.values[j - 1] = *root;
    }
    out.which = LambdaCase::solved;
    return out;
}

Scalar lambda_multi(unsigned i, unsigned e, const std::vector<Scalar>& bs, const Scalar& c) {
    if (bs.size() != e) fail("lambda arity mismatch: e = " + std::to_string(e));
    std::size_t count = 1;
    for (unsigned k = 0; k < e; ++k) count *= c.field()->p();
    if (i < 1 || i > count) fail("lambda index " + std::to_string(i) + " out of range 1.." + std::to_string(count));
    return lambda_family(bs, c).values[i - 1];
}

void require_p_basis(const std::vector<Scalar>& basis, const Field& K) {
    if (p_independence(basis, K) != PIndependence::independent)
        fail("candidate p-basis is not p-independent");
    if (int(basis.size()) != K->imperfection_exponent())
        fail("candidate p-basis does not span K over K^p");
}

Scalar lambda_basis(unsigned i, unsigned e, const Scalar& c, const std::vector<Scalar>& basis) {
    require_p_basis(basis, c.field());
    return lambda_multi(i, e, basis, c);
}

}  // namespace pacf
