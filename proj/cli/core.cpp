#include "common.hpp"

#include <algorithm>

namespace pacf::cli {

namespace {

const char* independence_name(PIndependence p) {
    switch (p) {
        case PIndependence::independent: return "independent";
        case PIndependence::dependent: return "dependent";
        case PIndependence::exceeds_imperfection: return "exceeds-imperfection";
    }
    return "dependent";
}

Outcome field_info(const Node& top) {
    Field K = field_from(top);
    Outcome o;
    o.report["field"] = K->spec();
    o.report["characteristic"] = K->p();
    o.report["constant_degree"] = K->constants().k();
    o.report["imperfection_degree"] = K->transcendentals().size();
    Json els = Json::array();
    for (const auto& x : scalars(K, top.strings("elements"))) {
        Json e;
        e["value"] = x.to_string();
        e["frobenius"] = frobenius(x).to_string();
        auto r = pth_root(x);
        e["pth_root"] = r ? Json(r->to_string()) : Json();
        e["lambda0"] = lambda0(x).to_string();
        if (!K->is_finite()) e["p_coordinates"] = strings_of(p_coordinates(x));
        els.push_back(e);
    }
    if (!els.empty()) o.report["elements"] = els;
    if (top.find("independent"))
        o.report["independence"] = independence_name(p_independence(scalars(K, top.strings("independent")), K));
    if (const Node* lb = top.block_of("lambda")) {
        auto bs = scalars(K, lb->strings("basis"));
        Scalar c = scalar(K, lb->str("c"));
        auto fam = lambda_family(bs, c);
        Json l;
        l["case"] = int(fam.which);
        l["values"] = strings_of(fam.values);
        if (fam.which == LambdaCase::solved) {
            auto ms = p_monomials(bs, K);
            Scalar sum = Scalar::zero(K);
            for (std::size_t j = 0; j < ms.size(); ++j) sum = sum + frobenius(fam.values[j]) * ms[j];
            l["round_trip"] = sum == c;
        }
        o.report["lambda"] = l;
    }
    return o;
}

Ideal ideal_from(const Node& top) {
    const Node* b = top.block_of("ideal");
    const Node& src = b ? *b : top;
    Field K = field_from(top, b);
    Ring R = make_ring(K, src.strings("vars"));
    std::vector<MultiPoly> gens;
    for (const auto& g : src.strings("gens")) gens.push_back(parse_poly(R, g));
    return Ideal(R, gens);
}

MonomialOrder order_from(const Node& top) {
    const std::string o = top.str_or("order", "grevlex");
    if (o == "grevlex") return MonomialOrder::grevlex();
    if (o == "lex") return MonomialOrder::lex();
    fail("unknown monomial order " + o + " (grevlex or lex)");
}

Outcome poly_gb(const Node& top) {
    Ideal I = ideal_from(top);
    Outcome o;
    o.report["order"] = top.str_or("order", "grevlex");
    o.report["basis"] = strings_of(groebner_basis(I, order_from(top)));
    return o;
}

Outcome poly_elim(const Node& top) {
    Ideal I = ideal_from(top);
    Outcome o;
    o.report["eliminated"] = top.strings("eliminate");
    o.report["generators"] = strings_of(eliminate(I, top.strings("eliminate")).gens());
    return o;
}

Outcome poly_dim(const Node& top) {
    Ideal I = ideal_from(top);
    Outcome o;
    auto d = ideal_dimension(I);
    o.report["dimension"] = d ? Json(*d) : Json("empty");
    return o;
}

Outcome poly_member(const Node& top) {
    Ideal I = ideal_from(top);
    MultiPoly f = parse_poly(I.ring(), top.str("member"));
    const bool radical = top.flag_or("radical", false);
    const bool in = radical ? radical_member(f, I) : ideal_member(f, I);
    Outcome o;
    o.report["polynomial"] = f.to_string();
    o.report[radical ? "in_radical" : "in_ideal"] = in;
    o.code = verdict_code(in);
    return o;
}

Outcome verdict_outcome(const Verdict& v) {
    Outcome o;
    o.report = verdict_json(v);
    o.code = verdict_code(v.value);
    return o;
}

Outcome variety_irr(const Node& top) { return verdict_outcome(irreducibility(variety_block(top))); }

Outcome variety_absirr(const Node& top) {
    return verdict_outcome(absolute_irreducibility(variety_block(top), unsigned(top.integer_or("max_s", 0))));
}

Outcome variety_dominant(const Node& top) {
    RationalMapData m{variety_block(top, "W"), variety_block(top, "V"), {}};
    for (const auto& c : top.strings("map")) m.coords.push_back(parse_rational(m.source.ring(), c));
    return verdict_outcome(dominance(m));
}

std::vector<MultiPoly> polys(const Ring& R, const std::vector<std::string>& texts) {
    std::vector<MultiPoly> out;
    for (const auto& t : texts) out.push_back(parse_poly(R, t));
    return out;
}

Outcome variety_points(const Node& top) {
    AffineVariety V = variety_block(top);
    PointSearch opts;
    opts.bound = unsigned(top.integer_or("bound", 1));
    opts.avoid = polys(V.ring(), top.strings("avoid"));
    opts.limit = std::size_t(top.integer_or("limit", 0));
    auto pts = enumerate_points(V, opts);
    Outcome o;
    o.report["vars"] = V.ring()->vars();
    o.report["bound"] = opts.bound;
    if (!opts.avoid.empty()) o.report["avoid"] = strings_of(opts.avoid);
    o.report["count"] = pts.size();
    Json ps = Json::array();
    for (const auto& p : pts) ps.push_back(strings_of(p));
    o.report["points"] = ps;
    o.code = verdict_code(!pts.empty());
    return o;
}

Outcome variety_locus(const Node& top) {
    const Node& b = block(top, "locus");
    Field K = field_from(top, &b);
    LocusInput in;
    in.aux = make_ring(K, b.strings("aux"));
    in.relations = polys(in.aux, b.strings("relations"));
    for (const auto& t : b.strings("tuple")) in.tuple.push_back(parse_rational(in.aux, t));
    in.names = b.strings("names");
    AffineVariety V = locus(in);
    Outcome o;
    o.report["vars"] = V.ring()->vars();
    o.report["generators"] = strings_of(V.gens());
    return o;
}

int tri_code(TriState t) { return t == TriState::yes ? 0 : t == TriState::no ? 1 : 2; }

PPowerOptions ppower_options(const Node& top) {
    PPowerOptions opts;
    opts.degree_bound = unsigned(top.integer_or("degree_bound", opts.degree_bound));
    opts.point_bound = unsigned(top.integer_or("point_bound", opts.point_bound));
    return opts;
}

Outcome variety_ppower(const Node& top) {
    AffineVariety V = variety_block(top);
    auto f = FunctionFieldElem::from_expr(V, parse_rational(V.ring(), top.str("element")));
    auto r = ppower_test(f, ppower_options(top));
    Outcome o;
    o.report["element"] = f.to_string();
    o.report["pth_power"] = to_string(r.is_power);
    if (r.root) o.report["root"] = r.root->to_string();
    o.report["certificate"] = r.certificate;
    o.code = tri_code(r.is_power);
    return o;
}

Outcome variety_pindep(const Node& top) {
    AffineVariety V = variety_block(top);
    std::vector<FunctionFieldElem> fs;
    for (const auto& e : top.strings("elements")) fs.push_back(FunctionFieldElem::from_expr(V, parse_rational(V.ring(), e)));
    auto r = pindep_function_field(fs, ppower_options(top));
    Outcome o;
    o.report["independent"] = to_string(r.independent);
    o.report["certificate"] = r.certificate;
    o.code = tri_code(r.independent);
    return o;
}

Outcome diff_prolong(const Node& top) {
    AffineVariety V = variety_block(top);
    auto tau = prolongation(V, derivation_from(top, V.field()));
    Outcome o;
    o.report["vars"] = tau.tau.ring()->vars();
    o.report["generators"] = strings_of(tau.tau.gens());
    return o;
}

Outcome diff_nabla(const Node& top) {
    AffineVariety V = variety_block(top);
    DerivationContext D = derivation_from(top, V.field());
    auto point = scalars(V.field(), top.strings("point"));
    require(V.contains(point), "the point does not lie on the variety");
    auto tau = prolongation(V, D);
    auto img = nabla_point(tau, D, point);
    const bool in = tau.tau.contains(img);
    Outcome o;
    o.report["vars"] = tau.tau.ring()->vars();
    o.report["image"] = strings_of(img);
    o.report["in_prolongation"] = in;
    o.code = verdict_code(in);
    return o;
}

Outcome diff_extends(const Node& top) {
    AffineVariety V = variety_block(top, "V");
    return verdict_outcome(derivation_extends(V, variety_block(top, "W"), derivation_from(top, V.field())));
}

Outcome diff_equalizer(const Node& top) {
    AffineVariety V = variety_block(top, "V");
    auto E = equalizer(V, variety_block(top, "W"), derivation_from(top, V.field()));
    Outcome o;
    o.report["vars"] = E.E.ring()->vars();
    o.report["generators"] = strings_of(E.E.gens());
    return o;
}

Outcome diff_kerprol(const Node& top) {
    AffineVariety V = variety_block(top, "V");
    AffineVariety W = variety_block(top, "W");
    DerivationContext D = derivation_from(top, V.field());
    Outcome o = verdict_outcome(kerprol_check(V, W, D));
    Verdict oracle = extension_oracle(V, W, D);
    o.report["oracle"] = verdict_json(oracle);
    return o;
}

FieldAutomorphism automorphism_from(const ConstFieldPtr& F, const std::string& text) {
    if (text == "identity") return frobenius_automorphism(F, 0);
    if (text == "frobenius") return frobenius_automorphism(F, 1);
    if (text.rfind("frobenius^", 0) == 0) return frobenius_automorphism(F, unsigned(std::stoul(text.substr(10))));
    try {
        return make_automorphism(F, Code(std::stoull(text)));
    } catch (const std::logic_error&) {
        fail("generator_image must be identity, frobenius, frobenius^j or a field code");
    }
}

std::size_t cyclic_order(const std::string& g) {
    if (g == "trivial") return 1;
    if (g.rfind("cyclic(", 0) == 0 && g.back() == ')') return std::stoul(g.substr(7, g.size() - 8));
    fail("group must be cyclic(n) or trivial");
}

}  // namespace

ActionData action_from(const Node& top) {
    const Node& b = block(top, "action");
    Field K = field_from(top, &b);
    const std::size_t n = cyclic_order(b.str_or("group", "trivial"));
    auto gen = automorphism_from(K->constants_ptr(), b.str_or("generator_image", n == 1 ? "identity" : "frobenius"));
    return {K, FieldAction::cyclic(n, gen)};
}

namespace {

Json subfield_json(const Field& K, const Subfield& s) {
    Json j;
    j["degree"] = s.degree;
    Json basis = Json::array();
    for (Code c : s.basis) basis.push_back(Scalar::from_code(K, c).to_string());
    j["basis"] = basis;
    return j;
}

Outcome action_galois(const Node& top) {
    Field K = top.block_of("action") ? field_from(top, top.block_of("action")) : field_from(top);
    const unsigned base = unsigned(top.integer_or("base_degree", 1));
    auto G = galois_group(K->constants_ptr(), base);
    Outcome o;
    o.report["field"] = K->spec();
    o.report["base_degree"] = base;
    o.report["order"] = G.group.size();
    Json autos = Json::array();
    for (const auto& a : G.automorphisms) autos.push_back("frobenius^" + std::to_string(a.frobenius_power()));
    o.report["automorphisms"] = autos;
    std::size_t max_order = 0;
    for (std::size_t g = 0; g < G.group.size(); ++g) max_order = std::max(max_order, G.group.order(g));
    o.report["cyclic"] = max_order == G.group.size();
    return o;
}

Outcome action_invariants(const Node& top) {
    auto a = action_from(top);
    Outcome o;
    o.report["invariants"] = subfield_json(a.K, invariants(a.act));
    return o;
}

Outcome action_faithful(const Node& top) {
    auto a = action_from(top);
    const bool f = is_faithful(a.act);
    Outcome o;
    o.report["faithful"] = f;
    o.code = verdict_code(f);
    return o;
}

Outcome action_check210(const Node& top) {
    auto a = action_from(top);
    auto r = check_galois_data(a.act);
    Outcome o;
    o.report["fixed_field"] = subfield_json(a.K, r.fixed);
    o.report["separable_algebraic"] = r.separable_algebraic;
    o.report["normal"] = r.normal;
    o.report["isomorphic"] = r.isomorphic;
    o.report["details"] = r.text;
    o.code = verdict_code(r.all_pass());
    return o;
}

Outcome action_kirred(const Node& top) {
    Field L = field_from(top);
    Field K = make_field(top.str("base"));
    const Node& set = top.at("set");
    if (!set.is_list()) fail("set must be a list of tuples");
    std::vector<std::vector<Scalar>> S;
    for (const auto& t : set.items) S.push_back(scalars(L, t.as_strings()));
    const bool irr = finite_set_k_irreducible(S, K);
    Outcome o;
    o.report["irreducible"] = irr;
    Json orbits = Json::array();
    for (const auto& orb : galois_orbits(S, K)) orbits.push_back(orb);
    o.report["orbits"] = orbits;
    Json codes = Json::array();
    if (!S.empty() && S.front().size() == 1) {
        std::vector<Scalar> flat;
        for (const auto& t : S) flat.push_back(t[0]);
        codes = strings_of(code_finite_set(flat));
        o.report["code"] = codes;
    }
    o.code = verdict_code(irr);
    return o;
}

Outcome action_probe(const Node& top) {
    const Node& b = block(top, "probe");
    Field F = make_field(b.str("base"));
    Field K = make_field(b.str("field"));
    Ring R = make_ring(F, {b.str_or("var", "x")});
    auto r = alg_strongly_pac_probe(F, K, polys(R, b.strings("thetas")));
    Outcome o;
    Json es = Json::array();
    for (const auto& e : r.entries) {
        Json j;
        j["theta"] = e.theta.to_string();
        j["verdict"] = to_string(e.verdict);
        j["orbit_sizes"] = e.orbit_sizes;
        j["splitting_degree"] = e.splitting_degree;
        j["witness"] = e.witness;
        es.push_back(j);
    }
    o.report["entries"] = es;
    o.report["result"] = r.no_counterexample() ? "no counterexample in family" : "counterexample found";
    o.code = verdict_code(r.no_counterexample());
    return o;
}

}  // namespace

void add_core_commands(CommandTable& t) {
    t["field"] = field_info;
    t["poly gb"] = poly_gb;
    t["poly elim"] = poly_elim;
    t["poly dim"] = poly_dim;
    t["poly member"] = poly_member;
    t["variety irr"] = variety_irr;
    t["variety absirr"] = variety_absirr;
    t["variety dominant"] = variety_dominant;
    t["variety points"] = variety_points;
    t["variety locus"] = variety_locus;
    t["variety ppower"] = variety_ppower;
    t["variety pindep"] = variety_pindep;
    t["diff prolong"] = diff_prolong;
    t["diff nabla"] = diff_nabla;
    t["diff extends"] = diff_extends;
    t["diff equalizer"] = diff_equalizer;
    t["diff kerprol"] = diff_kerprol;
    t["action galois"] = action_galois;
    t["action invariants"] = action_invariants;
    t["action faithful"] = action_faithful;
    t["action check210"] = action_check210;
    t["action kirred"] = action_kirred;
    t["action probe"] = action_probe;
}

}  // namespace pacf::cli
