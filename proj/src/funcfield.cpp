#include <map>
#include <sstream>

#include "pacf/error.hpp"
#include "pacf/linalg.hpp"
#include "pacf/variety.hpp"

namespace pacf {

namespace {

MultiPoly reduce(const AffineVariety& V, const MultiPoly& f) {
    if (V.gens().empty()) return f;
    return normal_form(f, V.ideal().basis(), MonomialOrder::grevlex());
}

}  // namespace

FunctionFieldElem::FunctionFieldElem(const AffineVariety& V, MultiPoly num, MultiPoly den) : V_(V) {
    require_same_ring(num.ring(), V.ring(), "function field element");
    require_same_ring(den.ring(), V.ring(), "function field element");
    bool nonzero_constant = den.is_constant() && !den.is_zero();
    if (!nonzero_constant && radical_member(den, V.ideal()))
        fail("denominator " + den.to_string() + " vanishes on the variety");
    num_ = reduce(V, num);
    den_ = reduce(V, den);
}

FunctionFieldElem::FunctionFieldElem(Unchecked, const AffineVariety& V, MultiPoly num, MultiPoly den)
    : V_(V), num_(reduce(V, num)), den_(reduce(V, den)) {}

FunctionFieldElem FunctionFieldElem::from_expr(const AffineVariety& V, const RationalExpr& e) {
    return FunctionFieldElem(V, e.num, e.den);
}

FunctionFieldElem FunctionFieldElem::from_poly(const AffineVariety& V, const MultiPoly& p) {
    return FunctionFieldElem(V, p, MultiPoly::constant(V.ring(), 1));
}

FunctionFieldElem FunctionFieldElem::constant(const AffineVariety& V, const Scalar& c) {
    return from_poly(V, MultiPoly::constant(V.ring(), c));
}

bool FunctionFieldElem::is_zero() const { return num_.is_zero(); }

FunctionFieldElem FunctionFieldElem::operator+(const FunctionFieldElem& o) const {
    return {Unchecked{}, V_, num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}

FunctionFieldElem FunctionFieldElem::operator-(const FunctionFieldElem& o) const {
    return {Unchecked{}, V_, num_ * o.den_ - o.num_ * den_, den_ * o.den_};
}

FunctionFieldElem FunctionFieldElem::operator-() const { return {Unchecked{}, V_, -num_, den_}; }

FunctionFieldElem FunctionFieldElem::operator*(const FunctionFieldElem& o) const {
    return {Unchecked{}, V_, num_ * o.num_, den_ * o.den_};
}

FunctionFieldElem FunctionFieldElem::operator/(const FunctionFieldElem& o) const { return *this * o.inverse(); }

FunctionFieldElem FunctionFieldElem::inverse() const {
    if (is_zero()) fail("inverse of zero in the function field");
    return {Unchecked{}, V_, den_, num_};
}

FunctionFieldElem FunctionFieldElem::pow(unsigned e) const {
    FunctionFieldElem r = constant(V_, Scalar::one(V_.field()));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

bool operator==(const FunctionFieldElem& a, const FunctionFieldElem& b) {
    require_same_ring(a.num_.ring(), b.num_.ring(), "function field comparison");
    return reduce(a.V_, a.num_ * b.den_ - b.num_ * a.den_).is_zero();
}

std::optional<Scalar> FunctionFieldElem::eval(const std::vector<Scalar>& point) const {
    return pacf::eval(RationalExpr{num_, den_}, point);
}

std::string FunctionFieldElem::to_string() const { return pacf::to_string(RationalExpr{num_, den_}); }

std::string to_string(TriState t) {
    switch (t) {
        case TriState::yes: return "yes";
        case TriState::no: return "no";
        default: return "undecided";
    }
}

namespace {

using Row = std::vector<FunctionFieldElem>;

MultiPoly partial_t(const MultiPoly& f, int j) {
    return f.map_coefficients(f.ring(), [j](const Scalar& c) { return c.partial(j); });
}

// Coordinates of dP in the basis dt_1..dt_m, dx_1..dx_n.
std::vector<MultiPoly> differential(const MultiPoly& P) {
    std::vector<MultiPoly> out;
    for (int j = 0; j < P.field()->m(); ++j) out.push_back(partial_t(P, j));
    for (std::size_t i = 0; i < P.ring()->nvars(); ++i) out.push_back(P.partial(i));
    return out;
}

Row differential(const FunctionFieldElem& f) {
    const auto& V = f.variety();
    auto da = differential(f.num()), db = differential(f.den());
    FunctionFieldElem a = FunctionFieldElem::from_poly(V, f.num()), b = FunctionFieldElem::from_poly(V, f.den());
    FunctionFieldElem b2inv = (b * b).inverse();
    Row row;
    for (std::size_t k = 0; k < da.size(); ++k)
        row.push_back((b * FunctionFieldElem::from_poly(V, da[k]) - a * FunctionFieldElem::from_poly(V, db[k])) *
                      b2inv);
    return row;
}

linalg::Matrix<FunctionFieldElem> relation_rows(const AffineVariety& V) {
    linalg::Matrix<FunctionFieldElem> J;
    if (V.gens().empty()) return J;
    for (const auto& g : V.ideal().basis()) {
        Row row;
        for (const auto& c : differential(g)) row.push_back(FunctionFieldElem::from_poly(V, c));
        J.push_back(row);
    }
    return J;
}

// rank of (relations + extra) minus rank of relations
std::size_t differential_rank(const AffineVariety& V, const std::vector<Row>& extra) {
    auto J = relation_rows(V);
    std::size_t base = linalg::rank(J);
    for (const auto& r : extra) J.push_back(r);
    return linalg::rank(J) - base;
}

std::string row_string(const Row& r, const Field& K, const Ring& R) {
    std::vector<std::string> names;
    for (const auto& t : K->transcendentals()) names.push_back(t);
    for (const auto& x : R->vars()) names.push_back(x);
    std::string s;
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (r[k].is_zero()) continue;
        s += (s.empty() ? "" : " + ") + std::string("(") + r[k].to_string() + ") d" + names[k];
    }
    return s.empty() ? "0" : s;
}

std::vector<Mono> standard_monomials(const AffineVariety& V, unsigned degree) {
    const std::size_t n = V.nvars();
    std::vector<Mono> lms;
    if (!V.gens().empty())
        for (const auto& g : V.ideal().basis()) lms.push_back(g.leading(MonomialOrder::grevlex()).first);
    std::vector<Mono> all{Mono(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Mono> next;
        for (const auto& m : all) {
            unsigned used = 0;
            for (unsigned e : m) used += e;
            for (unsigned d = 0; used + d <= degree; ++d) {
                next.push_back(m);
                next.back()[i] = d;
            }
        }
        all = std::move(next);
    }
    std::vector<Mono> out;
    for (const auto& m : all) {
        bool standard = true;
        for (const auto& lm : lms) {
            bool divides = true;
            for (std::size_t i = 0; i < n; ++i)
                if (lm[i] > m[i]) divides = false;
            if (divides) standard = false;
        }
        if (standard) out.push_back(m);
    }
    std::stable_sort(out.begin(), out.end(), [](const Mono& a, const Mono& b) {
        return MonomialOrder::grevlex().compare(a, b) < 0;
    });
    return out;
}

// Finds A/B with (A/B)^p = f, A and B spanned by standard monomials of degree <= D.
// Writing A = sum a_mu x^mu, the condition A^p * den - num * B^p = 0 in K[V] is
// linear in the a_mu once every coefficient is split into p-coordinates.
std::optional<FunctionFieldElem> root_ansatz(const FunctionFieldElem& f, unsigned D) {
    const auto& V = f.variety();
    const Ring& R = V.ring();
    const Field& K = V.field();
    const Code p = K->p();
    auto mons = standard_monomials(V, D);
    const std::size_t N = mons.size();
    auto frob_mono = [&](const Mono& m) {
        Mono e = m;
        for (auto& x : e) x *= unsigned(p);
        return MultiPoly::monomial(R, e, Scalar::one(K));
    };
    std::vector<MultiPoly> P, Q;
    for (const auto& m : mons) {
        P.push_back(reduce(V, frob_mono(m) * f.den()));
        Q.push_back(reduce(V, frob_mono(m) * f.num()));
    }
    const std::size_t ncoords = p_coordinates(Scalar::one(K)).size();
    auto coord = [&](const MultiPoly& poly, const Mono& nu, std::size_t e) {
        auto it = poly.terms().find(nu);
        return it == poly.terms().end() ? Scalar::zero(K) : p_coordinates(it->second)[e];
    };
    std::map<Mono, bool> support;
    for (const auto& v : {&P, &Q})
        for (const auto& poly : *v)
            for (const auto& [nu, c] : poly.terms()) support[nu] = true;

    auto build = [&](const MultiPoly& A, const MultiPoly& B) -> std::optional<FunctionFieldElem> {
        if (B.is_zero()) return std::nullopt;
        FunctionFieldElem g(V, A, B);
        if (g.pow(unsigned(p)) != f) return std::nullopt;
        return g;
    };
    auto poly_of = [&](const std::vector<Scalar>& v, std::size_t offset) {
        MultiPoly r = MultiPoly::zero(R);
        for (std::size_t k = 0; k < N; ++k) r += MultiPoly::monomial(R, mons[k], v[offset + k]);
        return r;
    };

    // polynomial root first: B = 1
    linalg::Matrix<Scalar> A1;
    std::vector<Scalar> rhs;
    for (const auto& [nu, unused] : support)
        for (std::size_t e = 0; e < ncoords; ++e) {
            std::vector<Scalar> row;
            for (std::size_t k = 0; k < N; ++k) row.push_back(coord(P[k], nu, e));
            A1.push_back(row);
            rhs.push_back(coord(Q[0], nu, e));
        }
    if (auto sol = linalg::solve(A1, rhs, Scalar::zero(K)))
        if (auto g = build(poly_of(*sol, 0), MultiPoly::constant(R, 1))) return g;

    linalg::Matrix<Scalar> A2;
    for (const auto& [nu, unused] : support)
        for (std::size_t e = 0; e < ncoords; ++e) {
            std::vector<Scalar> row;
            for (std::size_t k = 0; k < N; ++k) row.push_back(coord(P[k], nu, e));
            for (std::size_t k = 0; k < N; ++k) row.push_back(-coord(Q[k], nu, e));
            A2.push_back(row);
        }
    for (const auto& v : linalg::nullspace(A2, 2 * N, Scalar::zero(K), Scalar::one(K)))
        if (auto g = build(poly_of(v, 0), poly_of(v, N))) return g;
    return std::nullopt;
}

std::string point_string(const std::vector<Scalar>& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + a[i].to_string();
    return s + ")";
}

std::optional<std::string> point_witness(const FunctionFieldElem& f, unsigned bound) {
    const auto& V = f.variety();
    if (V.field()->is_finite()) return std::nullopt;
    try {
        PointSearch opts;
        opts.bound = bound;
        opts.avoid = {f.den()};
        opts.max_candidates = 200000;
        std::optional<Scalar> value;
        auto a = find_point(V, opts, [&](const std::vector<Scalar>& pt) {
            auto v = f.eval(pt);
            if (!v || pth_root(*v)) return false;
            if (!is_smooth_point(V, pt)) return false;
            value = v;
            return true;
        });
        if (!a) return std::nullopt;
        return "f" + point_string(*a) + " = " + value->to_string() + " is not a p-th power at a smooth rational point";
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

PPowerResult ppower_test(const FunctionFieldElem& f, const PPowerOptions& opts) {
    PPowerResult r;
    const auto& V = f.variety();
    if (f.is_zero()) {
        r.is_power = TriState::yes;
        r.root = f;
        r.certificate = "0 = 0^p";
        return r;
    }
    Row df = differential(f);
    if (differential_rank(V, {df}) != 0) {
        r.is_power = TriState::no;
        if (auto w = point_witness(f, opts.point_bound)) r.certificate = *w;
        else r.certificate = "df = " + row_string(df, V.field(), V.ring()) + " is nonzero modulo the relations";
        return r;
    }
    r.is_power = TriState::yes;
    if ((r.root = root_ansatz(f, opts.degree_bound)))
        r.certificate = "(" + r.root->to_string() + ")^" + std::to_string(V.field()->p()) + " = f in K(V)";
    else
        r.certificate = "df = 0; no root of degree <= " + std::to_string(opts.degree_bound) + " found";
    return r;
}

PIndepResult pindep_function_field(const std::vector<FunctionFieldElem>& fs, const PPowerOptions&) {
    PIndepResult r;
    if (fs.empty()) {
        r.independent = TriState::yes;
        r.certificate = "empty family";
        return r;
    }
    const auto& V = fs[0].variety();
    std::vector<Row> rows;
    for (const auto& f : fs) {
        require_same_ring(f.variety().ring(), V.ring(), "p-independence");
        rows.push_back(differential(f));
    }
    std::size_t rank = differential_rank(V, rows);
    r.independent = rank == fs.size() ? TriState::yes : TriState::no;
    r.certificate = "differentials span rank " + std::to_string(rank) + " of " + std::to_string(fs.size()) +
                    " modulo the relations";
    return r;
}

}  // namespace pacf
