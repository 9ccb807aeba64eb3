#include "pacf/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pacf/error.hpp"
#include "pacf/linalg.hpp"

namespace pacf {

// --- groups --------------------------------------------------------------------------

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table)
    : names_(std::move(names)), table_(std::move(table)) {
    const std::size_t n = names_.size();
    if (n == 0) fail("a group needs at least one element");
    if (table_.size() != n) fail("multiplication table has wrong size");
    for (const auto& row : table_) {
        if (row.size() != n) fail("multiplication table has wrong size");
        for (auto v : row)
            if (v >= n) fail("multiplication table entry out of range");
    }
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
        if (ok) identity_ = e, found = true;
    }
    if (!found) fail("multiplication table has no identity");
    for (std::size_t a = 0; a < n; ++a) {
        bool inv = false;
        for (std::size_t b = 0; b < n && !inv; ++b) inv = table_[a][b] == identity_ && table_[b][a] == identity_;
        if (!inv) fail("element " + names_[a] + " has no inverse");
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) fail("multiplication is not associative");
    }
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n == 0) fail("cyclic group of order 0");
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(i == 0 ? "e" : i == 1 ? "s" : "s^" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    }
    return FiniteGroup(names, table);
}

std::size_t FiniteGroup::inverse(std::size_t a) const {
    for (std::size_t b = 0; b < size(); ++b)
        if (table_[a][b] == identity_) return b;
    fail("internal: missing inverse");
}

std::size_t FiniteGroup::order(std::size_t a) const {
    std::size_t k = 1;
    for (std::size_t x = a; x != identity_; x = table_[x][a]) ++k;
    return k;
}

// --- automorphisms ------------------------------------------------------------------------

Code FieldAutomorphism::apply(Code x) const {
    const ConstField& F = *field;
    auto d = F.digits(x);
    Code r = 0;
    for (std::size_t i = d.size(); i-- > 0;) r = F.add(F.mul(r, image), d[i]);
    return r;
}

FieldAutomorphism FieldAutomorphism::compose(const FieldAutomorphism& inner) const {
    return {field, apply(inner.image)};
}

unsigned FieldAutomorphism::frobenius_power() const {
    Code c = field->generator();
    for (unsigned j = 0; j < field->k(); ++j, c = field->frobenius(c))
        if (c == image) return j;
    fail("internal: automorphism is not a Frobenius power");
}

FieldAutomorphism make_automorphism(const ConstFieldPtr& K, Code image) {
    Code c = K->generator();
    for (unsigned j = 0; j < K->k(); ++j, c = K->frobenius(c))
        if (c == image) return {K, image};
    fail("image " + std::to_string(image) + " is not a conjugate of the generator; no automorphism");
}

FieldAutomorphism frobenius_automorphism(const ConstFieldPtr& K, unsigned power) {
    Code c = K->generator();
    for (unsigned j = 0; j < power % K->k(); ++j) c = K->frobenius(c);
    return {K, c};
}

FieldAction::FieldAction(FiniteGroup G, ConstFieldPtr K, std::vector<FieldAutomorphism> sigma)
    : G_(std::move(G)), K_(std::move(K)), sigma_(std::move(sigma)) {
    if (sigma_.size() != G_.size()) fail("action needs one automorphism per group element");
    for (auto& s : sigma_) {
        if (!s.field->same_as(*K_)) fail("automorphism of a different field");
        s = make_automorphism(K_, s.image);
    }
    for (std::size_t a = 0; a < G_.size(); ++a)
        for (std::size_t b = 0; b < G_.size(); ++b)
            if (sigma_[G_.mul(a, b)].image != sigma_[a].compose(sigma_[b]).image)
                fail("g -> sigma_g is not a homomorphism at (" + G_.name(a) + ", " + G_.name(b) + ")");
}

FieldAction FieldAction::cyclic(std::size_t n, const FieldAutomorphism& generator_image) {
    const auto& K = generator_image.field;
    std::vector<FieldAutomorphism> sigma{{K, K->generator()}};
    for (std::size_t i = 1; i < n; ++i) sigma.push_back(generator_image.compose(sigma.back()));
    return FieldAction(FiniteGroup::cyclic(n), K, sigma);
}

namespace {

std::size_t index_of(const std::vector<FieldAutomorphism>& autos, Code image) {
    for (std::size_t i = 0; i < autos.size(); ++i)
        if (autos[i].image == image) return i;
    return autos.size();
}

FiniteGroup composition_group(const std::vector<FieldAutomorphism>& autos, const std::vector<std::string>& names) {
    std::vector<std::vector<std::size_t>> table(autos.size(), std::vector<std::size_t>(autos.size()));
    for (std::size_t a = 0; a < autos.size(); ++a)
        for (std::size_t b = 0; b < autos.size(); ++b) {
            table[a][b] = index_of(autos, autos[a].compose(autos[b]).image);
            if (table[a][b] == autos.size()) fail("internal: automorphisms not closed under composition");
        }
    return FiniteGroup(names, table);
}

struct ModP {
    Code v = 0, p = 2;
    bool is_zero() const { return v == 0; }
    ModP operator+(const ModP& o) const { return {(v + o.v) % p, p}; }
    ModP operator-(const ModP& o) const { return {(v + p - o.v) % p, p}; }
    ModP operator*(const ModP& o) const { return {Code(std::uint64_t(v) * o.v % p), p}; }
    ModP inverse() const {
        Code r = 1, b = v;
        for (Code e = p - 2; e; e >>= 1, b = Code(std::uint64_t(b) * b % p))
            if (e & 1) r = Code(std::uint64_t(r) * b % p);
        return {r, p};
    }
    ModP operator/(const ModP& o) const { return *this * o.inverse(); }
};

}  // namespace

GaloisGroup galois_group(const ConstFieldPtr& K, unsigned base_degree) {
    if (base_degree == 0 || K->k() % base_degree) fail("base field is not a subfield of " + std::to_string(K->q()));
    GaloisGroup gg;
    gg.base_degree = base_degree;
    // roots of the minimal polynomial of the generator over F: its F-conjugates
    Code g = K->generator(), c = g;
    std::vector<std::string> names;
    do {
        gg.automorphisms.push_back(make_automorphism(K, c));
        std::size_t j = gg.automorphisms.size() - 1;
        names.push_back(j == 0 ? "id" : j == 1 ? "phi" : "phi^" + std::to_string(j));
        for (unsigned i = 0; i < base_degree; ++i) c = K->frobenius(c);
    } while (c != g);
    gg.group = composition_group(gg.automorphisms, names);
    return gg;
}

Subfield invariants(const FieldAction& act) {
    const ConstField& K = *act.field();
    const unsigned k = K.k();
    const Code p = K.p();
    linalg::Matrix<ModP> A;
    std::vector<Code> powers{1};
    for (unsigned i = 1; i < k; ++i) powers.push_back(K.mul(powers.back(), K.generator()));
    for (std::size_t s = 0; s < act.group().size(); ++s) {
        std::vector<std::vector<Code>> cols;
        for (unsigned i = 0; i < k; ++i) cols.push_back(K.digits(act.sigma(s).apply(powers[i])));
        for (unsigned r = 0; r < k; ++r) {
            std::vector<ModP> row;
            for (unsigned i = 0; i < k; ++i) row.push_back({(cols[i][r] + p - (r == i ? 1 : 0)) % p, p});
            A.push_back(row);
        }
    }
    Subfield sf;
    for (const auto& v : linalg::nullspace(A, k, ModP{0, p}, ModP{1, p})) {
        std::vector<Code> d;
        for (const auto& x : v) d.push_back(x.v);
        sf.basis.push_back(K.from_digits(d));
    }
    sf.degree = unsigned(sf.basis.size());
    sf.field = ConstField::get(p, sf.degree);
    sf.embedding = embed_table(*sf.field, K);
    Code image = sf.embedding[sf.field->generator()];
    for (std::size_t s = 0; s < act.group().size(); ++s)
        if (act.sigma(s).apply(image) != image) fail("internal: embedded fixed field is not fixed");
    return sf;
}

bool is_faithful(const FieldAction& act) {
    std::set<Code> images;
    for (std::size_t g = 0; g < act.group().size(); ++g) images.insert(act.sigma(g).image);
    return images.size() == act.group().size();
}

GaloisReport check_galois_data(const FieldAction& act) {
    if (!is_faithful(act)) fail("action is not faithful");
    const ConstField& K = *act.field();
    GaloisReport rep;
    rep.fixed = invariants(act);
    rep.galois = galois_group(act.field(), rep.fixed.degree);

    std::set<Code> orbit;
    for (std::size_t s = 0; s < act.group().size(); ++s) orbit.insert(act.sigma(s).apply(K.generator()));
    upoly::UPoly minpoly{1};
    for (Code r : orbit) minpoly = upoly::mul(K, minpoly, upoly::UPoly{K.sub(0, r), 1});
    bool coefficients_fixed = true;
    for (Code c : minpoly)
        for (std::size_t s = 0; s < act.group().size(); ++s)
            if (act.sigma(s).apply(c) != c) coefficients_fixed = false;
    rep.separable_algebraic = coefficients_fixed && orbit.size() == std::size_t(upoly::degree(minpoly));
    rep.normal = upoly::roots(K, minpoly).size() == std::size_t(upoly::degree(minpoly));

    rep.isomorphic = rep.galois.automorphisms.size() == act.group().size();
    for (std::size_t g = 0; g < act.group().size() && rep.isomorphic; ++g) {
        std::size_t j = index_of(rep.galois.automorphisms, act.sigma(g).image);
        if (j == rep.galois.automorphisms.size()) rep.isomorphic = false;
        rep.iso.push_back(j);
    }
    if (rep.isomorphic) {
        std::set<std::size_t> distinct(rep.iso.begin(), rep.iso.end());
        rep.isomorphic = distinct.size() == rep.iso.size();
        for (std::size_t a = 0; a < act.group().size(); ++a)
            for (std::size_t b = 0; b < act.group().size(); ++b)
                if (rep.iso[act.group().mul(a, b)] != rep.galois.group.mul(rep.iso[a], rep.iso[b]))
                    rep.isomorphic = false;
    }
    rep.text = "fixed field GF(" + std::to_string(rep.fixed.field->q()) + "); generator has " +
               std::to_string(orbit.size()) + " conjugates; |Aut(K/K^G)| = " +
               std::to_string(rep.galois.automorphisms.size());
    if (rep.isomorphic) {
        rep.text += "; iso:";
        for (std::size_t g = 0; g < rep.iso.size(); ++g)
            rep.text += " " + act.group().name(g) + "->" + rep.galois.group.name(rep.iso[g]);
    }
    return rep;
}

// --- finite sets -------------------------------------------------------------------------

std::vector<Scalar> code_finite_set(const std::vector<Scalar>& S) {
    if (S.empty()) fail("code of an empty set");
    std::vector<Scalar> elems = S;
    for (const auto& s : elems) require_same_field(s.field(), elems[0].field(), "finite set code");
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    const Field& L = elems[0].field();
    std::vector<Scalar> e{Scalar::one(L)};
    for (const auto& s : elems) {
        e.push_back(Scalar::zero(L));
        for (std::size_t k = e.size() - 1; k > 0; --k) e[k] = e[k] + s * e[k - 1];
    }
    return {e.begin() + 1, e.end()};
}

Scalar relative_frobenius(const Scalar& x, const Field& K) {
    const Field& L = x.field();
    const ConstField& E = L->constants();
    const ConstField& C = K->constants();
    if (C.p() != E.p() || E.k() % C.k()) fail(K->spec() + " is not a constant subfield of " + L->spec());
    if (K->transcendentals() != L->transcendentals()) fail("fields have different transcendentals");
    std::vector<Code> table(E.q());
    for (Code c = 0; c < E.q(); ++c) table[c] = E.pow(c, C.q());
    return Scalar::fraction(L, rp::map_constants(x.num(), table), rp::map_constants(x.den(), table));
}

std::vector<std::vector<std::size_t>> galois_orbits(const std::vector<std::vector<Scalar>>& S, const Field& K) {
    auto find = [&](const std::vector<Scalar>& v) {
        for (std::size_t i = 0; i < S.size(); ++i)
            if (S[i] == v) return i;
        return S.size();
    };
    std::vector<bool> seen(S.size(), false);
    std::vector<std::vector<std::size_t>> orbits;
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> orbit;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            orbit.push_back(j);
            std::vector<Scalar> img;
            for (const auto& c : S[j]) img.push_back(relative_frobenius(c, K));
            j = find(img);
            if (j == S.size()) fail("set is not Galois-stable over " + K->spec());
        }
        if (j != i) fail("set contains repeated points");
        orbits.push_back(orbit);
    }
    return orbits;
}

bool finite_set_k_irreducible(const std::vector<std::vector<Scalar>>& S, const Field& K) {
    if (S.empty()) fail("K-irreducibility of an empty set");
    return galois_orbits(S, K).size() == 1;
}

// --- strong PAC probe ------------------------------------------------------------------

std::string to_string(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::pass_in_f: return "pass";
        case ProbeVerdict::pass_vacuous: return "pass (hypothesis not met)";
        default: return "FAIL";
    }
}

bool ProbeReport::no_counterexample() const {
    return std::none_of(entries.begin(), entries.end(), [](const ProbeEntry& e) { return e.verdict == ProbeVerdict::fail; });
}

ProbeReport alg_strongly_pac_probe(const Field& F, const Field& K, const std::vector<MultiPoly>& thetas) {
    if (!F->is_finite() || !K->is_finite()) unsupported("strong PAC probe needs finite fields");
    const ConstField& CF = F->constants();
    const ConstField& CK = K->constants();
    if (CF.p() != CK.p() || CK.k() % CF.k()) fail(F->spec() + " is not a subfield of " + K->spec());
    ProbeReport rep;
    for (const auto& theta : thetas) {
        require_same_field(theta.field(), F, "probe polynomial");
        if (theta.ring()->nvars() != 1) unsupported("probe polynomials must be univariate");
        ProbeEntry e{theta};
        if (theta.is_zero()) fail("theta = 0 has infinitely many solutions");
        upoly::UPoly u(theta.total_degree() + 1, 0);
        for (const auto& [m, c] : theta.terms()) u[m[0]] = c.constant_code();
        if (upoly::degree(u) == 0) {
            e.witness = "no solutions";
            rep.entries.push_back(e);
            continue;
        }
        unsigned N = CK.k();
        for (const auto& f : upoly::factor(CF, u)) N = std::lcm(N, CF.k() * unsigned(upoly::degree(f.poly)));
        e.splitting_degree = N;
        auto L = ConstField::get(CF.p(), N);
        auto table = embed_table(CF, *L);
        upoly::UPoly uL;
        for (Code c : u) uL.push_back(table[c]);
        auto roots = upoly::roots(*L, uL);
        std::vector<bool> seen(roots.size(), false);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (seen[i]) continue;
            std::size_t size = 0;
            for (Code r = roots[i];;) {
                auto it = std::find(roots.begin(), roots.end(), r);
                if (seen[it - roots.begin()]) break;
                seen[it - roots.begin()] = true;
                ++size;
                r = L->pow(r, CK.q());
            }
            e.orbit_sizes.push_back(size);
        }
        Field LF = make_field(CF.p(), N);
        if (e.orbit_sizes.size() != 1) {
            e.verdict = ProbeVerdict::pass_vacuous;
            e.witness = std::to_string(e.orbit_sizes.size()) + " orbits over " + K->spec();
        } else {
            auto in_f = std::find_if(roots.begin(), roots.end(), [&](Code r) { return L->pow(r, CF.q()) == r; });
            if (in_f != roots.end()) {
                e.verdict = ProbeVerdict::pass_in_f;
                e.witness = "solution " + Scalar::from_code(LF, *in_f).to_string() + " in GF(" +
                            std::to_string(CF.p()) + "^" + std::to_string(N) + ") lies in " + F->spec();
            } else {
                e.verdict = ProbeVerdict::fail;
                e.witness = "single orbit of size " + std::to_string(roots.size()) + " over " + K->spec() +
                            ", no solution in " + F->spec();
            }
        }
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace pacf
