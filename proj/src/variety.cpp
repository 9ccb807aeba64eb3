#include "pacf/variety.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bridge.hpp"
#include "pacf/error.hpp"
#include "pacf/factor.hpp"

namespace pacf {

AffineVariety::AffineVariety(Ring r, std::vector<MultiPoly> gens) : ideal_(std::move(r), std::move(gens)) {}

AffineVariety::AffineVariety(Ideal I) : ideal_(std::move(I)) {}

bool AffineVariety::is_empty() const { return contains_one(ideal_); }

std::optional<int> AffineVariety::dimension() const { return ideal_dimension(ideal_); }

bool AffineVariety::contains(const std::vector<Scalar>& point) const {
    if (point.size() != nvars()) fail("point has wrong number of coordinates");
    for (const auto& g : gens())
        if (!g.eval(point).is_zero()) return false;
    return true;
}

void AffineVariety::mark_irreducible() const { cache_irreducible(true); }

std::optional<bool> AffineVariety::cached_irreducible() const {
    std::lock_guard lock(flags_->mu);
    return flags_->irreducible;
}

void AffineVariety::cache_irreducible(bool v) const {
    std::lock_guard lock(flags_->mu);
    flags_->irreducible = v;
}

std::optional<bool> AffineVariety::cached_absolutely_irreducible() const {
    std::lock_guard lock(flags_->mu);
    return flags_->absolutely_irreducible;
}

void AffineVariety::cache_absolutely_irreducible(bool v) const {
    std::lock_guard lock(flags_->mu);
    flags_->absolutely_irreducible = v;
    if (v) flags_->irreducible = true;
}

std::string AffineVariety::to_string() const {
    std::ostringstream os;
    os << "V(";
    for (std::size_t i = 0; i < gens().size(); ++i) os << (i ? ", " : "") << gens()[i].to_string();
    os << ") in A^" << nvars() << "(";
    for (std::size_t i = 0; i < nvars(); ++i) os << (i ? "," : "") << ring()->vars()[i];
    os << ") over " << field()->spec();
    return os.str();
}

// --- factorization ----------------------------------------------------------

std::vector<PolyFactorK> factor_polynomial(const MultiPoly& f) {
    if (f.is_zero()) fail("cannot factor the zero polynomial");
    const auto& F = f.field()->constants();
    std::vector<PolyFactorK> out;
    for (const auto& pf : mfactor::factor(F, detail::to_rpoly(f))) {
        MultiPoly g = detail::from_rpoly(f.ring(), pf.poly);
        if (g.is_constant()) continue;
        out.push_back({g.monic(MonomialOrder::grevlex()), pf.multiplicity});
    }
    return out;
}

// --- locus --------------------------------------------------------------------

AffineVariety locus(const LocusInput& in) {
    if (!in.aux) fail("locus needs an auxiliary ring");
    const auto& K = in.aux->field();
    const std::size_t n = in.tuple.size();
    std::vector<std::string> names = in.names;
    if (names.empty())
        for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    if (names.size() != n) fail("locus: number of names differs from tuple length");
    Ring out = make_ring(K, names);

    Ideal P(in.aux, in.relations);
    if (contains_one(P)) fail("locus: the ambient algebra is the zero ring");
    for (const auto& e : in.tuple) {
        require_same_ring(e.num.ring(), in.aux, "locus");
        if (radical_member(e.den, P)) fail("locus: ambient algebra not a domain (denominator hits a zero-divisor)");
    }

    std::vector<std::string> extra;
    for (std::size_t i = 0; i < n; ++i) extra.push_back(fresh_name(in.aux, "_o" + std::to_string(i)));
    extra.push_back(fresh_name(in.aux, "_w"));
    Ring R = extend_ring(in.aux, extra);
    std::vector<MultiPoly> gens;
    for (const auto& r : in.relations) gens.push_back(r.embed(R));
    MultiPoly dens = MultiPoly::constant(R, 1);
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly num = in.tuple[i].num.embed(R), den = in.tuple[i].den.embed(R);
        gens.push_back(den * MultiPoly::var(R, extra[i]) - num);
        dens *= den;
    }
    gens.push_back(MultiPoly::var(R, extra.back()) * dens - MultiPoly::constant(R, 1));

    std::vector<bool> drop(R->nvars(), true);
    for (std::size_t i = 0; i < n; ++i) drop[in.aux->nvars() + i] = false;
    Ideal J = eliminate(Ideal(R, gens), drop);

    std::vector<MultiPoly> images(R->nvars(), MultiPoly::zero(out));
    for (std::size_t i = 0; i < n; ++i) images[in.aux->nvars() + i] = MultiPoly::var(out, i);
    std::vector<MultiPoly> kernel;
    for (const auto& g : J.gens()) {
        MultiPoly h = g.substitute(out, images);
        if (!h.is_zero()) kernel.push_back(h);
    }
    if (!kernel.empty()) kernel = groebner_basis(kernel, MonomialOrder::grevlex());
    AffineVariety V(out, kernel);
    V.mark_irreducible();
    return V;
}

// --- graph presentation ------------------------------------------------------------

GraphPresentation graph_presentation(const AffineVariety& V) {
    const Ring& R = V.ring();
    const std::size_t n = R->nvars();
    GraphPresentation gp;
    gp.eliminated.assign(n, false);
    gp.images.resize(n);
    std::vector<std::size_t> order;
    std::vector<MultiPoly> G = groebner_basis(V.gens(), MonomialOrder::grevlex());

    for (;;) {
        std::optional<std::pair<std::size_t, std::size_t>> pick;
        for (std::size_t k = 0; k < G.size() && !pick; ++k)
            for (std::size_t i = 0; i < n && !pick; ++i) {
                if (gp.eliminated[i] || G[k].degree_in(i) != 1) continue;
                bool linear = true;
                for (const auto& [m, c] : G[k].terms())
                    if (m[i] && std::accumulate(m.begin(), m.end(), 0u) != 1) linear = false;
                if (linear) pick = {{k, i}};
            }
        if (!pick) break;
        auto [k, i] = *pick;
        MultiPoly x = MultiPoly::var(R, i);
        Scalar c = Scalar::zero(V.field());
        MultiPoly rest = MultiPoly::zero(R);
        for (const auto& [m, coef] : G[k].terms()) {
            if (m[i] == 1) c = coef;
            else rest += MultiPoly::monomial(R, m, coef);
        }
        MultiPoly image = rest * (-c.inverse());
        std::vector<MultiPoly> subs;
        for (std::size_t j = 0; j < n; ++j) subs.push_back(j == i ? image : MultiPoly::var(R, j));
        std::vector<MultiPoly> next;
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (j == k) continue;
            MultiPoly h = G[j].substitute(R, subs);
            if (!h.is_zero()) next.push_back(h);
        }
        gp.eliminated[i] = true;
        gp.images[i] = image;
        order.push_back(i);
        G = next.empty() ? next : groebner_basis(next, MonomialOrder::grevlex());
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::vector<MultiPoly> subs;
        for (std::size_t j = 0; j < n; ++j)
            subs.push_back(gp.eliminated[j] && j != *it ? gp.images[j] : MultiPoly::var(R, j));
        gp.images[*it] = gp.images[*it].substitute(R, subs);
    }
    for (std::size_t j = 0; j < n; ++j)
        if (!gp.eliminated[j]) gp.images[j] = MultiPoly::var(R, j);
    gp.residual = G;
    return gp;
}

}  // namespace pacf
