#include <algorithm>
#include <random>
#include <sstream>

#include "bridge.hpp"
#include "pacf/error.hpp"
#include "pacf/factor.hpp"
#include "pacf/variety.hpp"

namespace pacf {

namespace {

std::string join(const std::vector<MultiPoly>& ps, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? sep : "") + ps[i].to_string();
    return s;
}

std::vector<MultiPoly> distinct_factors(const MultiPoly& f) {
    std::vector<MultiPoly> out;
    for (const auto& pf : factor_polynomial(f)) out.push_back(pf.poly);
    return out;
}

struct SubVariety {
    AffineVariety V;
    std::vector<std::size_t> kept;
};

bool any_eliminated(const GraphPresentation& gp) {
    return std::any_of(gp.eliminated.begin(), gp.eliminated.end(), [](bool b) { return b; });
}

SubVariety restrict_to_kept(const AffineVariety& V, const GraphPresentation& gp) {
    std::vector<std::string> names;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < V.nvars(); ++i)
        if (!gp.eliminated[i]) {
            names.push_back(V.ring()->vars()[i]);
            kept.push_back(i);
        }
    Ring sub = make_ring(V.field(), names);
    std::vector<MultiPoly> images(V.nvars(), MultiPoly::zero(sub));
    for (std::size_t j = 0; j < kept.size(); ++j) images[kept[j]] = MultiPoly::var(sub, j);
    std::vector<MultiPoly> gens;
    for (const auto& g : gp.residual) gens.push_back(g.substitute(sub, images));
    return {AffineVariety(sub, gens), kept};
}

// --- zero-dimensional ideals ---------------------------------------------------

struct ZeroDimInfo {
    std::vector<MultiPoly> radical;  // grevlex basis
    std::size_t points = 0;          // over the algebraic closure
};

std::size_t count_standard_monomials(const std::vector<MultiPoly>& basis, std::size_t n) {
    std::vector<Mono> lms;
    for (const auto& g : basis) lms.push_back(g.leading(MonomialOrder::grevlex()).first);
    std::vector<unsigned> box(n, 0);
    for (const auto& m : lms) {
        std::size_t nz = 0, idx = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (m[i]) ++nz, idx = i;
        if (nz == 1 && (box[idx] == 0 || m[idx] < box[idx])) box[idx] = m[idx];
    }
    std::size_t total = 1;
    for (unsigned b : box) {
        if (b == 0) fail("internal: ideal is not zero-dimensional");
        total *= b;
        if (total > 1000000) exhausted("too many standard monomials");
    }
    std::size_t count = 0;
    Mono cur(n, 0);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t r = k;
        for (std::size_t i = 0; i < n; ++i) cur[i] = unsigned(r % box[i]), r /= box[i];
        bool standard = std::none_of(lms.begin(), lms.end(), [&](const Mono& m) {
            for (std::size_t i = 0; i < n; ++i)
                if (m[i] > cur[i]) return false;
            return true;
        });
        if (standard) ++count;
    }
    return count;
}

ZeroDimInfo zero_dim_info(const AffineVariety& V) {
    const Ring& R = V.ring();
    const std::size_t n = R->nvars();
    std::vector<MultiPoly> gens = V.gens();
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> drop(n, true);
        drop[i] = false;
        Ideal E = eliminate(V.ideal(), drop);
        auto it = std::find_if(E.gens().begin(), E.gens().end(), [](const MultiPoly& g) { return !g.is_zero(); });
        if (it == E.gens().end()) fail("internal: missing eliminant of a zero-dimensional ideal");
        MultiPoly sqfree = MultiPoly::constant(R, 1);
        for (const auto& f : distinct_factors(*it)) {
            if (f.partial(i).is_zero())
                unsupported("zero-dimensional variety with inseparable coordinate " + R->vars()[i] + ": " +
                            f.to_string());
            sqfree *= f;
        }
        gens.push_back(sqfree);
    }
    ZeroDimInfo info;
    info.radical = groebner_basis(gens, MonomialOrder::grevlex());
    info.points = count_standard_monomials(info.radical, n);
    return info;
}

MultiPoly minimal_polynomial(const Ring& R, const std::vector<MultiPoly>& radical, const MultiPoly& ell,
                             const Ring& U) {
    std::string u = fresh_name(R, "_u");
    Ring Ru = extend_ring(R, {u});
    std::vector<MultiPoly> gens;
    for (const auto& g : radical) gens.push_back(g.embed(Ru));
    gens.push_back(MultiPoly::var(Ru, u) - ell.embed(Ru));
    std::vector<bool> drop(Ru->nvars(), true);
    drop.back() = false;
    Ideal E = eliminate(Ideal(Ru, gens), drop);
    std::vector<MultiPoly> images(Ru->nvars(), MultiPoly::zero(U));
    images.back() = MultiPoly::var(U, 0);
    for (const auto& g : E.gens())
        if (!g.is_zero()) return g.substitute(U, images);
    fail("internal: missing minimal polynomial");
}

std::vector<std::vector<Scalar>> separating_candidates(const Field& K, std::size_t n) {
    std::vector<Scalar> elems;
    for (const auto& e : field_elements(K, 1, 100000))
        if (!e.is_zero()) elems.push_back(e);
    if (elems.size() > 64) elems.resize(64);
    std::vector<std::vector<Scalar>> out;
    for (const auto& a : elems) {
        std::vector<Scalar> c{Scalar::one(K)};
        for (std::size_t i = 1; i < n; ++i) c.push_back(c.back() * a);
        out.push_back(c);
    }
    std::mt19937 rng(12345);
    std::vector<Scalar> pool = elems;
    pool.push_back(Scalar::zero(K));
    for (int k = 0; k < 64 && n > 1; ++k) {
        std::vector<Scalar> c{Scalar::one(K)};
        for (std::size_t i = 1; i < n; ++i) c.push_back(pool[rng() % pool.size()]);
        out.push_back(c);
    }
    return out;
}

Verdict zero_dim_irreducibility(const AffineVariety& V) {
    ZeroDimInfo info = zero_dim_info(V);
    const Ring& R = V.ring();
    Ring U = make_ring(V.field(), {"u"});
    for (const auto& c : separating_candidates(V.field(), R->nvars())) {
        MultiPoly ell = MultiPoly::zero(R);
        for (std::size_t i = 0; i < c.size(); ++i) ell += MultiPoly::var(R, i) * c[i];
        auto fs = distinct_factors(minimal_polynomial(R, info.radical, ell, U));
        if (fs.size() > 1)
            return {false, "linear form " + ell.to_string() + " has reducible minimal polynomial: " + join(fs, " * ")};
        if (fs.size() == 1 && fs[0].total_degree() == info.points)
            return {true, "linear form " + ell.to_string() + " separates the " + std::to_string(info.points) +
                              " points and has irreducible minimal polynomial " + fs[0].to_string()};
    }
    unsupported("no separating linear form found for " + V.to_string());
}

// --- constant-field specializations ----------------------------------------------

RPoly specialize(const ConstField& F, const ConstField& big, const RPoly& f, int m, const std::vector<Code>& c) {
    RPoly g = mfactor::extend(F, big, f);
    std::vector<rp::Term> ts;
    for (const auto& t : rp::terms(g)) {
        Code coef = t.coef;
        for (int j = 0; j < m; ++j) coef = big.mul(coef, big.pow(c[j], t.exps[j]));
        ts.push_back({rp::Exponents(t.exps.begin() + m, t.exps.end()), coef});
    }
    return rp::from_terms(big, f.level - m, ts);
}

RPoly inflate_transcendentals(const ConstField& F, const RPoly& f, int m, unsigned e) {
    std::vector<rp::Term> ts = rp::terms(f);
    for (auto& t : ts)
        for (int j = 0; j < m; ++j) t.exps[j] *= e;
    return rp::from_terms(F, f.level, ts);
}

// For f in K[x^p], the polynomial h with h^p = f over K^(1/p), read back over
// K via t^(1/p) -> t (an isomorphism of K^(1/p) with K).
std::optional<RPoly> frobenius_descent(const ConstField& F, const RPoly& f, int m) {
    std::vector<rp::Term> ts = rp::terms(f);
    for (auto& t : ts) {
        for (int v = m; v < f.level; ++v) {
            if (t.exps[v] % F.p()) return std::nullopt;
            t.exps[v] /= unsigned(F.p());
        }
        t.coef = F.pth_root(t.coef);
    }
    return rp::from_terms(F, f.level, ts);
}

bool involves_ring_vars(const RPoly& f, int m) {
    for (int v = m; v < f.level; ++v)
        if (rp::degree_in(f, v)) return true;
    return false;
}

}  // namespace

// --- hypersurfaces -----------------------------------------------------------------

Verdict hypersurface_absolutely_irreducible(const MultiPoly& f, unsigned max_s) {
    if (f.is_constant()) fail("hypersurface needs a nonconstant polynomial");
    auto fs = distinct_factors(f);
    if (fs.size() != 1) return {false, "factors over the base field: " + join(fs, " * ")};
    const MultiPoly& g = fs[0];
    const Field& K = f.field();
    const ConstField& F = K->constants();
    const unsigned d = g.total_degree();
    const unsigned bound = max_s ? max_s : d;
    const int m = K->m();
    RPoly rg = detail::to_rpoly(g);

    if (unsigned s = mfactor::splitting_degree(K->constants_ptr(), rg, bound))
        return {false, g.to_string() + " factors over the constant extension of degree " + std::to_string(s)};
    if (K->is_finite())
        return {true, g.to_string() + " stays irreducible over GF(" + std::to_string(F.q()) + "^s) for s <= " +
                          std::to_string(bound)};

    if (auto h = frobenius_descent(F, rg, m)) {
        Verdict v = hypersurface_absolutely_irreducible(detail::from_rpoly(g.ring(), *h), max_s);
        v.certificate = g.to_string() + " is a p-th power over the closure; " + v.certificate;
        return v;
    }

    for (unsigned e = 2; e <= std::max(2u, d); ++e) {
        std::size_t count = 0;
        for (const auto& pf : mfactor::factor(F, inflate_transcendentals(F, rg, m, e)))
            if (involves_ring_vars(pf.poly, m)) ++count;
        if (count > 1)
            return {false, g.to_string() + " factors after adjoining " + std::to_string(e) +
                               "-th roots of the transcendentals"};
    }

    for (unsigned r = 1; r <= 3; ++r) {
        auto big = ConstField::get(F.p(), F.k() * r);
        std::vector<Code> c(m, 0);
        for (int tries = 0; tries < 400; ++tries) {
            RPoly sp = specialize(F, *big, rg, m, c);
            if (rp::total_degree(sp) == d && mfactor::is_irreducible(*big, sp) &&
                mfactor::splitting_degree(big, sp, d) == 0) {
                std::string at;
                for (int j = 0; j < m; ++j)
                    at += (j ? ", " : "") + K->transcendentals()[j] + " = " + std::to_string(c[j]);
                return {true, "specialization " + at + " over GF(" + std::to_string(big->q()) +
                                  ") is absolutely irreducible of the same degree"};
            }
            int j = 0;
            while (j < m && ++c[j] == big->q()) c[j++] = 0;
            if (j == m) break;
        }
    }
    unsupported("absolute irreducibility of " + g.to_string() + " over " + K->spec() + " undecided");
}

// --- varieties ------------------------------------------------------------------------

Verdict irreducibility(const AffineVariety& V) {
    if (auto c = V.cached_irreducible()) return {*c, "known by construction"};
    if (V.is_empty()) fail("irreducibility of the empty variety");
    const auto& G = V.ideal().basis();
    Verdict v;
    if (G.empty()) {
        v = {true, "affine space"};
    } else if (G.size() == 1) {
        auto fs = distinct_factors(G[0]);
        v = fs.size() == 1 ? Verdict{true, "defining polynomial " + fs[0].to_string() + " is irreducible"}
                           : Verdict{false, "factor found: " + join(fs, " * ")};
    } else if (auto gp = graph_presentation(V); any_eliminated(gp)) {
        auto sub = restrict_to_kept(V, gp);
        v = sub.V.gens().empty() ? Verdict{true, "graph of a polynomial map on affine space"}
                                 : irreducibility(sub.V);
        v.certificate = "isomorphic to " + sub.V.to_string() + ": " + v.certificate;
    } else if (V.dimension() == 0) {
        v = zero_dim_irreducibility(V);
    } else {
        unsupported("irreducibility of " + V.to_string() + " (not a hypersurface, zero-dimensional, or a graph)");
    }
    V.cache_irreducible(v.value);
    return v;
}

bool is_irreducible(const AffineVariety& V) { return irreducibility(V).value; }

Verdict absolute_irreducibility(const AffineVariety& V, unsigned max_s) {
    if (auto c = V.cached_absolutely_irreducible()) return {*c, "cached"};
    Verdict k = irreducibility(V);
    if (!k.value) {
        V.cache_absolutely_irreducible(false);
        return {false, "not irreducible over the base field: " + k.certificate};
    }
    const auto& G = V.ideal().basis();
    Verdict v;
    if (G.empty()) {
        v = {true, "affine space"};
    } else if (G.size() == 1) {
        v = hypersurface_absolutely_irreducible(G[0], max_s);
    } else if (auto gp = graph_presentation(V); any_eliminated(gp)) {
        auto sub = restrict_to_kept(V, gp);
        v = sub.V.gens().empty() ? Verdict{true, "graph of a polynomial map on affine space"}
                                 : absolute_irreducibility(sub.V, max_s);
        v.certificate = "isomorphic to " + sub.V.to_string() + ": " + v.certificate;
    } else if (V.dimension() == 0) {
        ZeroDimInfo info = zero_dim_info(V);
        v = {info.points == 1, std::to_string(info.points) + " point(s) over the algebraic closure"};
    } else {
        unsupported("absolute irreducibility of " + V.to_string());
    }
    V.cache_absolutely_irreducible(v.value);
    return v;
}

bool is_absolutely_irreducible(const AffineVariety& V) { return absolute_irreducibility(V).value; }

}  // namespace pacf
