#include "pacf/error.hpp"
#include "pacf/variety.hpp"

namespace pacf {

Ideal image_closure(const RationalMapData& m) {
    const Ring& Rs = m.source.ring();
    const Ring& Rt = m.target.ring();
    const std::size_t n = Rt->nvars();
    if (m.coords.size() != n) fail("rational map needs one coordinate per target variable");
    if (!Rs->field()->same_as(*Rt->field())) fail("rational map between varieties over different fields");
    for (const auto& c : m.coords) {
        require_same_ring(c.num.ring(), Rs, "rational map");
        require_same_ring(c.den.ring(), Rs, "rational map");
        if (radical_member(c.den, m.source.ideal()))
            fail("rational map coordinate has a denominator vanishing on the source");
    }

    std::vector<std::string> extra;
    for (std::size_t i = 0; i < n; ++i) extra.push_back(fresh_name(Rs, "_y" + std::to_string(i)));
    extra.push_back(fresh_name(Rs, "_w"));
    Ring R = extend_ring(Rs, extra);
    std::vector<MultiPoly> gens;
    for (const auto& g : m.source.gens()) gens.push_back(g.embed(R));
    MultiPoly dens = MultiPoly::constant(R, 1);
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly den = m.coords[i].den.embed(R);
        gens.push_back(den * MultiPoly::var(R, extra[i]) - m.coords[i].num.embed(R));
        dens *= den;
    }
    gens.push_back(MultiPoly::var(R, extra.back()) * dens - MultiPoly::constant(R, 1));

    std::vector<bool> drop(R->nvars(), true);
    for (std::size_t i = 0; i < n; ++i) drop[Rs->nvars() + i] = false;
    Ideal J = eliminate(Ideal(R, gens), drop);

    std::vector<MultiPoly> images(R->nvars(), MultiPoly::zero(Rt));
    for (std::size_t i = 0; i < n; ++i) images[Rs->nvars() + i] = MultiPoly::var(Rt, i);
    std::vector<MultiPoly> out;
    for (const auto& g : J.gens()) {
        MultiPoly h = g.substitute(Rt, images);
        if (!h.is_zero()) out.push_back(h);
    }
    return Ideal(Rt, out);
}

namespace {

bool contained_in_radical(const std::vector<MultiPoly>& gens, const Ideal& I) {
    for (const auto& g : gens)
        if (!radical_member(g, I)) return false;
    return true;
}

std::string gens_string(const Ideal& I) {
    std::string s = "<";
    for (std::size_t i = 0; i < I.gens().size(); ++i) s += (i ? ", " : "") + I.gens()[i].to_string();
    return s + ">";
}

}  // namespace

bool maps_into(const RationalMapData& m) {
    return contained_in_radical(m.target.gens(), image_closure(m));
}

Verdict dominance(const RationalMapData& m) {
    Ideal J = image_closure(m);
    if (!contained_in_radical(m.target.gens(), J)) fail("rational map does not land in the target variety");
    bool dominant = contained_in_radical(J.gens(), m.target.ideal());
    return {dominant, "elimination ideal " + gens_string(J) +
                          (dominant ? " vanishes on the target" : " cuts out a proper subvariety of the target")};
}

bool is_dominant(const RationalMapData& m) { return dominance(m).value; }

}  // namespace pacf
