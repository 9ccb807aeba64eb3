#include "common.hpp"

#include <memory>

namespace pacf::cli {

namespace {

struct FormulaInput {
    Field K;
    std::unique_ptr<ActionData> action;
    Structure S;
    ParseContext ctx;
    FormulaPtr f;
    const Node* src = nullptr;
};

FormulaInput formula_from(const Node& top) {
    FormulaInput in;
    const Node& b = block(top, "formula");
    in.src = &b;
    in.K = field_from(top, &b);
    in.S.field = in.K;
    in.S.derivation = derivation_from(top, in.K);
    in.ctx.field = in.K;
    in.ctx.vars = b.strings("vars");
    in.ctx.language = parse_language(b.str_or("language", "all"));
    if (top.block_of("action")) {
        in.action = std::make_unique<ActionData>(action_from(top));
        in.S.action = &in.action->act;
        for (std::size_t g = 0; g < in.action->act.group().size(); ++g)
            in.ctx.group_elements.push_back(in.action->act.group().name(g));
    }
    in.f = parse_formula(b.str("text"), in.ctx);
    return in;
}

Assignment assignment_from(const Node& m, const Field& K) {
    if (!m.is_map()) fail("witness must be a map {x: ..}");
    Assignment a;
    for (const auto& [name, v] : m.entries) {
        if (!v.is_text()) fail("witness value of " + name + " must be a single value");
        a[name] = scalar(K, v.text);
    }
    return a;
}

Assignment witness_from(const FormulaInput& in, const Node& top, bool required) {
    const Node* w = in.src->find("witness");
    if (!w) w = top.find("witness");
    if (!w) {
        if (required) fail("missing entry 'witness'");
        return {};
    }
    return assignment_from(*w, in.K);
}

bool formula_in_language(const FormulaPtr& f, Language l) {
    if (f->kind == FormulaKind::atom) return term_in_language(f->lhs, l) && term_in_language(f->rhs, l);
    for (const auto& a : f->args)
        if (!formula_in_language(a, l)) return false;
    return true;
}

Json assignment_json(const Assignment& a) {
    Json j = Json::object();
    for (const auto& [k, v] : a) j[k] = v.to_string();
    return j;
}

Outcome formula_parse(const Node& top) {
    auto in = formula_from(top);
    Outcome o;
    o.report["formula"] = to_string(in.f);
    Json langs = Json::array();
    for (Language l : {Language::ring, Language::lambda, Language::lambda0_d, Language::group})
        if (formula_in_language(in.f, l)) langs.push_back(to_string(l));
    o.report["languages"] = langs;
    return o;
}

Outcome formula_eval(const Node& top) {
    auto in = formula_from(top);
    const bool v = eval_formula(in.f, in.S, witness_from(in, top, true));
    Outcome o;
    o.report["formula"] = to_string(in.f);
    o.report["value"] = v;
    o.code = verdict_code(v);
    return o;
}

Json unravel_json(const UnravelResult& u) {
    Json j;
    j["vars"] = u.vars;
    j["tuple"] = strings_of(u.tuple);
    Json cs = Json::array();
    for (const auto& c : u.coordinates) {
        Json e;
        e["name"] = c.name;
        e["definition"] = c.definition ? to_string(c.definition) : "";
        e["value"] = c.value.to_string();
        cs.push_back(e);
    }
    j["coordinates"] = cs;
    j["value_tuple"] = strings_of(u.value_tuple());
    j["conditions"] = strings_of(u.conditions);
    return j;
}

Outcome formula_unravel(const Node& top) {
    auto in = formula_from(top);
    auto u = unravel_lambda_terms(in.f, in.ctx.vars, in.S, witness_from(in, top, true));
    Outcome o;
    o.report["formula"] = to_string(in.f);
    const Json body = unravel_json(u);
    for (const auto& [k, v] : body.items()) o.report[k] = v;
    return o;
}

L0Case case_from(const std::string& s) {
    if (s == "pth_power" || s == "pth-power") return L0Case::pth_power;
    if (s == "zero_argument" || s == "zero-argument" || s == "zero") return L0Case::zero_argument;
    if (s == "non_pth_power" || s == "non-pth-power") return L0Case::non_pth_power;
    fail("unknown case " + s + " (pth_power, zero_argument, non_pth_power)");
}

Outcome formula_correct(const Node& top) {
    auto in = formula_from(top);
    CaseSource src;
    const auto cases = in.src->find("cases") ? in.src->strings("cases") : top.strings("cases");
    if (cases.empty()) {
        src.witness = witness_from(in, top, true);
    } else {
        for (const auto& c : cases) src.explicit_cases.push_back(case_from(c));
    }
    auto r = correct_lambda0_D(in.f, in.ctx.vars, in.S, src);
    Outcome o;
    o.report["input"] = to_string(in.f);
    o.report["formula"] = to_string(r.formula);
    o.report["vars"] = r.vars;
    Json fixed = Json::array();
    for (const auto& t : r.fixed_terms) fixed.push_back(to_string(t));
    o.report["not_pth_powers"] = fixed;
    Json trace = Json::array();
    for (const auto& e : r.trace) {
        Json j;
        j["argument"] = to_string(e.argument);
        j["case"] = to_string(e.kind);
        j["note"] = e.note;
        trace.push_back(j);
    }
    o.report["trace"] = trace;
    if (src.witness) o.report["witness"] = assignment_json(r.witness);
    return o;
}

int report_code(const CheckReport& r) {
    if (r.status == ReportStatus::resource_exhausted) return 2;
    return verdict_code(r.ok());
}

Outcome from_report(const CheckReport& r) {
    Outcome o;
    o.report = report_json(r);
    o.code = report_code(r);
    return o;
}

std::vector<RationalExpr> rationals(const Ring& R, const std::vector<std::string>& texts) {
    std::vector<RationalExpr> out;
    for (const auto& t : texts) out.push_back(parse_rational(R, t));
    return out;
}

DPacInstance dpac_from(const Node& top) {
    DPacInstance inst;
    inst.V = variety_block(top, "V");
    inst.W = variety_block(top, "W");
    inst.D = derivation_from(top, inst.V.field());
    inst.f = rationals(inst.V.ring(), top.strings("f"));
    inst.bound = unsigned(top.integer_or("bound", 1));
    return inst;
}

Outcome axiom_validate_dpac(const Node& top) { return from_report(validate_dpac_instance(dpac_from(top))); }

Outcome axiom_search_dpac(const Node& top) {
    auto inst = dpac_from(top);
    auto r = search_dpac_witness(inst);
    Outcome o = from_report(r);
    if (r.status == ReportStatus::witness_found) o.report["reverified"] = reverify_dpac_witness(inst, r.point);
    return o;
}

Outcome axiom_pac_open(const Node& top) {
    AffineVariety V = variety_block(top);
    std::vector<MultiPoly> avoid;
    for (const auto& a : top.strings("avoid")) avoid.push_back(parse_poly(V.ring(), a));
    return from_report(pac_witness_task(V, avoid, unsigned(top.integer_or("bound", 1))));
}

Outcome axiom_scf_reduce(const Node& top) {
    auto in = formula_from(top);
    std::vector<std::vector<TermPtr>> rows;
    if (const Node* rs = top.find("rows")) {
        if (!rs->is_list()) fail("rows must be a list of tuples");
        for (const auto& row : rs->items) {
            std::vector<TermPtr> r;
            for (const auto& t : row.as_strings()) r.push_back(parse_term(t, in.ctx));
            rows.push_back(r);
        }
    }
    auto r = scf_reduce(in.f, in.ctx.vars, in.S, witness_from(in, top, true), rows,
                        unsigned(top.integer_or("audit_bound", 1)), std::size_t(top.integer_or("audit_limit", 200)));
    Outcome o;
    o.report["formula"] = to_string(in.f);
    o.report["vars"] = r.V.ring()->vars();
    o.report["tuple"] = strings_of(r.unravel.tuple);
    o.report["variety"] = strings_of(r.V.gens());
    Json m = Json::array();
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        Json row;
        row["origin"] = r.row_origin[i];
        Json es = Json::array();
        for (const auto& e : r.rows[i]) es.push_back(e.to_string());
        row["entries"] = es;
        m.push_back(row);
    }
    o.report["rows"] = m;
    Json a;
    a["sampled"] = r.audit.sampled;
    a["independent"] = r.audit.independent;
    a["confirmed"] = r.audit.confirmed;
    Json fails = Json::array();
    for (const auto& p : r.audit.failures) fails.push_back(strings_of(p));
    a["failures"] = fails;
    o.report["audit"] = a;
    o.code = verdict_code(r.audit.passed());
    return o;
}

BAlgebra balgebra_from(const Node& top, const Field& K) {
    const Node* b = top.block_of("balgebra");
    if (!b) return BAlgebra::truncated(K, 2);
    if (b->find("truncated")) return BAlgebra::truncated(K, unsigned(b->integer_or("truncated", 2)));
    const Node& m = b->at("mult");
    BAlgebra B;
    B.k = K;
    if (!m.is_list()) fail("mult must be a nested list");
    for (const auto& row : m.items) {
        if (!row.is_list()) fail("mult must be a nested list");
        std::vector<std::vector<Scalar>> r;
        for (const auto& cell : row.items) r.push_back(scalars(K, cell.as_strings()));
        B.mult.push_back(r);
    }
    return B;
}

MultiPoly hasse(const MultiPoly& p, std::size_t var, unsigned k) {
    PolyBuilder b(p.ring());
    const Field& K = p.field();
    for (const auto& [m, c] : p.terms()) {
        if (m[var] < k) continue;
        Mono n = m;
        n[var] -= k;
        unsigned long long binom = 1;
        for (unsigned i = 0; i < k; ++i) binom = binom * (m[var] - i) / (i + 1);
        b.add(n, c * Scalar::from_int(K, (long long)(binom % K->p())));
    }
    return b.take();
}

std::function<MultiPoly(const MultiPoly&)> map_from(const Node& n, const Ring& R, const DerivationContext& D) {
    if (n.is_text()) {
        if (n.text == "identity") return [](const MultiPoly& p) { return p; };
        if (n.text == "zero") return [](const MultiPoly& p) { return MultiPoly::zero(p.ring()); };
        fail("operator map must be identity, zero, {derivation: ..}, {hasse: ..} or {table: ..}");
    }
    if (!n.is_map() || n.entries.size() != 1) fail("operator map must be a single-entry map");
    const auto& [kind, body] = n.entries.front();
    if (kind == "derivation") {
        std::vector<MultiPoly> images(R->nvars(), MultiPoly::zero(R));
        for (const auto& [var, v] : body.entries) {
            auto i = R->index_of(var);
            if (!i) fail("derivation image for unknown variable " + var);
            images[*i] = parse_poly(R, v.text);
        }
        return derivation_map(D, images);
    }
    if (kind == "hasse") {
        auto i = R->index_of(body.str("var"));
        if (!i) fail("hasse map on unknown variable " + body.str("var"));
        const unsigned k = unsigned(body.integer_or("order", 1));
        const std::size_t v = *i;
        return [v, k](const MultiPoly& p) { return hasse(p, v, k); };
    }
    if (kind == "table") {
        std::vector<std::pair<Mono, MultiPoly>> table;
        for (const auto& [mono, v] : body.entries) {
            MultiPoly m = parse_poly(R, mono);
            if (m.terms().size() != 1) fail("table keys must be monomials: " + mono);
            table.emplace_back(m.terms().begin()->first, parse_poly(R, v.text));
        }
        return table_map(R, table);
    }
    fail("unknown operator map kind " + kind);
}

Outcome axiom_bop_check(const Node& top) {
    const Node& b = block(top, "operator");
    Field K = field_from(top, &b);
    BOperatorData d;
    d.R = make_ring(K, b.strings("vars"));
    d.T = d.R;
    for (const auto& r : b.strings("relations")) d.relations.push_back(parse_poly(d.R, r));
    d.t_relations = d.relations;
    d.degree = unsigned(b.integer_or("degree", 2));
    DerivationContext D = derivation_from(top, K);
    const Node& maps = b.at("maps");
    if (!maps.is_list()) fail("maps must be a list");
    for (const auto& m : maps.items) d.maps.push_back(map_from(m, d.R, D));
    BAlgebra B = balgebra_from(top, K);
    B.validate();
    auto r = b_operator_check(d, B);
    Outcome o;
    o.report["dimension"] = B.dim();
    o.report["is_operator"] = r.is_operator;
    o.report["certificate"] = r.certificate;
    o.code = verdict_code(r.is_operator);
    return o;
}

AffineVariety variety_over(const Node& b, const Field& K) {
    Ring R = make_ring(K, b.strings("vars"));
    std::vector<MultiPoly> gens;
    for (const auto& g : b.strings("gens")) gens.push_back(parse_poly(R, g));
    return AffineVariety(R, gens);
}

Outcome axiom_validate_gbdcf(const Node& top) {
    auto a = action_from(top);
    GbDcfInstance inst;
    inst.K = a.K;
    inst.action = &a.act;
    inst.B = balgebra_from(top, a.K);
    inst.images = derivation_from(top, a.K).images();
    Field KG = invariant_field(a.K, a.act);
    inst.V = variety_over(block(top, "variety", "V"), KG);
    inst.W = variety_over(block(top, "variety", "W"), KG);
    inst.f = rationals(inst.V.ring(), top.strings("f"));
    inst.bound = unsigned(top.integer_or("bound", 1));
    inst.search = top.flag_or("search", true);
    Outcome o = from_report(validate_gbdcf_instance(inst));
    o.report["invariant_field"] = KG->spec();
    return o;
}

}  // namespace

void add_logic_commands(CommandTable& t) {
    t["formula parse"] = formula_parse;
    t["formula eval"] = formula_eval;
    t["formula unravel"] = formula_unravel;
    t["formula correct"] = formula_correct;
    t["axiom validate-dpac"] = axiom_validate_dpac;
    t["axiom search-dpac"] = axiom_search_dpac;
    t["axiom pac-open"] = axiom_pac_open;
    t["axiom scf-reduce"] = axiom_scf_reduce;
    t["axiom bop-check"] = axiom_bop_check;
    t["axiom validate-gbdcf"] = axiom_validate_gbdcf;
}

}  // namespace pacf::cli
