#include "pacf/axiom.hpp"

#include <algorithm>

#include "pacf/error.hpp"

namespace pacf {

std::string to_string(ReportStatus s) {
    switch (s) {
        case ReportStatus::valid_instance: return "valid-instance";
        case ReportStatus::invalid: return "invalid";
        case ReportStatus::witness_found: return "witness-found";
        case ReportStatus::exhausted: return "exhausted";
        case ReportStatus::resource_exhausted: return "resource-exhausted";
    }
    return "?";
}

std::string CheckReport::to_string() const {
    std::string s;
    for (const auto& b : bullets)
        s += std::string(b.pass ? "[pass] " : "[FAIL] ") + b.id + ": " + b.title + "\n       " + b.certificate + "\n";
    s += "status: " + pacf::to_string(status);
    if (status == ReportStatus::invalid) s += " at " + failed_bullet;
    if (status == ReportStatus::witness_found) {
        s += " ";
        for (std::size_t i = 0; i < point.size(); ++i) {
            if (i) s += ", ";
            s += (i < vars.size() ? vars[i] : "x" + std::to_string(i + 1)) + " = " + point[i].to_string();
        }
    }
    if (status == ReportStatus::exhausted) s += " (height bound " + std::to_string(bound) + ")";
    if (!message.empty()) s += "\n" + message;
    return s + "\n";
}

namespace {

/// Records a bullet; returns false when it failed (report marked invalid).
bool record(CheckReport& r, const char* id, const std::string& title, const std::function<Verdict()>& check) {
    Verdict v;
    try {
        v = check();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(id) + ": " + e.what());
    }
    r.bullets.push_back({id, title, v.value, v.certificate});
    if (!v.value) {
        r.status = ReportStatus::invalid;
        r.failed_bullet = id;
    }
    return v.value;
}

RationalMapData projection_map(const AffineVariety& W, const AffineVariety& V) {
    RationalMapData m{W, V, {}};
    for (std::size_t i = 0; i < V.nvars(); ++i) m.coords.push_back(rational(MultiPoly::var(W.ring(), i)));
    return m;
}

Verdict admissibility(const AffineVariety& W, const std::vector<RationalExpr>& f) {
    std::string cert;
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto fi = FunctionFieldElem(W, f[i].num.embed(W.ring()), f[i].den.embed(W.ring()));
        auto r = ppower_test(fi);
        const std::string name = "f" + std::to_string(i + 1) + " = " + to_string(f[i]);
        if (r.is_power == TriState::yes) return {false, name + " is a p-th power in K(W): " + r.certificate};
        if (r.is_power == TriState::undecided) unsupported("cannot decide whether " + name + " is a p-th power");
        if (!cert.empty()) cert += "; ";
        cert += name + " is not a p-th power";
    }
    if (f.empty()) cert = "no functions given";
    return {true, cert};
}

void require_doubled_names(const AffineVariety& V, const AffineVariety& W) {
    require(W.nvars() == 2 * V.nvars(), "W must live in twice the variables of V");
    for (std::size_t i = 0; i < V.nvars(); ++i)
        require(W.ring()->vars()[i] == V.ring()->vars()[i], "the first variables of W must be those of V");
}

/// f_i(x) defined and not p-th powers, and (x, D(x)) on W.
bool witness_conditions(const AffineVariety& W, const std::vector<RationalExpr>& f, const DerivationContext& D,
                        const std::vector<Scalar>& x) {
    for (const auto& fi : f) {
        auto v = eval(fi, x);
        if (!v || pth_root(*v)) return false;
    }
    std::vector<Scalar> full = x;
    for (const auto& xi : x) full.push_back(D.apply(xi));
    return W.contains(full);
}

CheckReport search(const AffineVariety& V, const AffineVariety& W, const std::vector<RationalExpr>& f,
                   const DerivationContext& D, unsigned bound, CheckReport rep) {
    rep.bound = bound;
    rep.vars = V.ring()->vars();
    PointSearch opts;
    opts.bound = bound;
    std::size_t count = 0;
    std::optional<std::vector<Scalar>> pt;
    try {
        pt = find_point(V, opts, [&](const std::vector<Scalar>& x) {
            ++count;
            return witness_conditions(W, f, D, x);
        });
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::resource_exhausted) throw;
        rep.status = ReportStatus::resource_exhausted;
        rep.message = e.what();
        rep.candidates = count;
        return rep;
    }
    rep.candidates = count;
    if (pt) {
        rep.status = ReportStatus::witness_found;
        rep.point = *pt;
    } else {
        rep.status = ReportStatus::exhausted;
    }
    return rep;
}

}  // namespace

CheckReport validate_dpac_instance(const DPacInstance& inst) {
    const auto& V = inst.V;
    const auto& W = inst.W;
    require_same_field(V.field(), inst.D.field(), "D-PAC instance");
    require_same_field(W.field(), inst.D.field(), "D-PAC instance");
    require_doubled_names(V, W);
    for (const auto& fi : inst.f) require_same_ring(fi.num.ring(), V.ring(), "D-PAC functions");
    if (V.is_empty()) fail("V is empty");

    CheckReport r;
    if (!record(r, kBulletAbsIrr, "W is absolutely irreducible", [&] { return absolute_irreducibility(W); }))
        return r;
    if (!record(r, kBulletContained, "W is contained in the prolongation of V",
                [&] { return derivation_extends(V, W, inst.D); }))
        return r;
    if (!record(r, kBulletDominant, "the projection W -> V is dominant",
                [&] { return dominance(projection_map(W, V)); }))
        return r;
    if (!record(r, kBulletEqualizer, "E projects dominantly on W", [&] { return kerprol_check(V, W, inst.D); }))
        return r;
    if (!record(r, kBulletAdmissible, "the functions composed with the projection are admissible",
                [&] { return admissibility(W, inst.f); }))
        return r;
    r.status = ReportStatus::valid_instance;
    return r;
}

CheckReport search_dpac_witness(const DPacInstance& inst) {
    CheckReport v = validate_dpac_instance(inst);
    if (!v.ok()) fail("witness search needs a valid instance; it fails at " + v.failed_bullet);
    auto r = search(inst.V, inst.W, inst.f, inst.D, inst.bound, v);
    if (r.status == ReportStatus::witness_found && !reverify_dpac_witness(inst, r.point))
        fail("internal: witness failed re-verification");
    return r;
}

bool reverify_dpac_witness(const DPacInstance& inst, const std::vector<Scalar>& x) {
    if (x.size() != inst.V.nvars()) return false;
    for (const auto& g : inst.V.gens())
        if (!g.eval(x).is_zero()) return false;
    for (const auto& fi : inst.f) {
        const Scalar d = fi.den.eval(x);
        if (d.is_zero()) return false;
        const Scalar v = fi.num.eval(x) / d;
        if (!lambda0(v).is_zero() || v.is_zero()) return false;
    }
    std::vector<Scalar> full = x;
    for (const auto& xi : x) full.push_back(inst.D.apply(xi));
    for (const auto& g : inst.W.gens())
        if (!g.eval(full).is_zero()) return false;
    return true;
}

// --- PAC via open subsets -------------------------------------------------------------------

CheckReport pac_witness_task(const AffineVariety& V, const std::vector<MultiPoly>& avoid, unsigned bound) {
    for (const auto& a : avoid) require_same_ring(a.ring(), V.ring(), "avoidance polynomial");
    if (V.is_empty()) fail("V is empty");
    auto irr = absolute_irreducibility(V);
    if (!irr.value) fail("V is not absolutely irreducible: " + irr.certificate);
    CheckReport r;
    r.bullets.push_back({kBulletAbsIrr, "V is absolutely irreducible", true, irr.certificate});
    if (!avoid.empty()) {
        const bool nonempty =
            std::any_of(avoid.begin(), avoid.end(), [&](const MultiPoly& a) { return !radical_member(a, V.ideal()); });
        if (!nonempty) fail("the open subset is empty: every avoidance polynomial vanishes on V");
        r.bullets.push_back({"open-nonempty", "U is nonempty", true, "some avoidance polynomial is not in the radical"});
    }
    r.bound = bound;
    r.vars = V.ring()->vars();
    PointSearch opts;
    opts.bound = bound;
    opts.avoid = avoid;
    std::size_t count = 0;
    std::optional<std::vector<Scalar>> pt;
    try {
        pt = find_point(V, opts, [&](const std::vector<Scalar>&) {
            ++count;
            return true;
        });
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::resource_exhausted) throw;
        r.status = ReportStatus::resource_exhausted;
        r.message = e.what();
        return r;
    }
    r.candidates = count;
    if (pt) {
        r.status = ReportStatus::witness_found;
        r.point = *pt;
    } else {
        r.status = ReportStatus::exhausted;
    }
    return r;
}

// --- SCF reduction ----------------------------------------------------------------------------

namespace {

bool row_independent(const std::vector<FunctionFieldElem>& row, const std::vector<Scalar>& pt, const Field& K) {
    std::vector<Scalar> vals;
    for (const auto& f : row) {
        auto v = f.eval(pt);
        if (!v) return false;
        vals.push_back(*v);
    }
    return p_independence(vals, K) == PIndependence::independent;
}

}  // namespace

ScfReduction scf_reduce(const FormulaPtr& f, const std::vector<std::string>& vars, const Structure& s,
                        const Assignment& witness, const std::vector<std::vector<TermPtr>>& independence_rows,
                        unsigned audit_bound, std::size_t audit_limit) {
    ScfReduction out;
    out.unravel = unravel_lambda_terms(f, vars, s, witness);
    const auto& u = out.unravel;
    out.V = u.variety();
    for (std::size_t k = 0; k < u.sites.size(); ++k) {
        const auto& site = u.sites[k];
        std::vector<MultiPoly> row = site.basis;
        if (site.which == LambdaCase::dependent_basis)
            unsupported("lambda family " + std::to_string(k + 1) +
                        " has a p-dependent basis at the witness; the reduction only produces independence rows");
        if (site.which == LambdaCase::independent_with_c) row.push_back(site.argument);
        std::vector<FunctionFieldElem> frow;
        for (const auto& p : row) frow.push_back(FunctionFieldElem::from_poly(out.V, p));
        out.rows.push_back(std::move(frow));
        out.row_origin.push_back("lambda " + std::to_string(k + 1));
    }
    for (std::size_t k = 0; k < independence_rows.size(); ++k) {
        std::vector<FunctionFieldElem> frow;
        for (const auto& t : independence_rows[k])
            frow.push_back(FunctionFieldElem::from_poly(out.V, term_polynomial(t, u.ring)));
        out.rows.push_back(std::move(frow));
        out.row_origin.push_back("given " + std::to_string(k + 1));
    }

    // Points of V with independent rows are determined by their original
    // coordinates: the lambda coordinates solve the family relations uniquely
    // and each w inverts its atom.
    const Field& K = s.field;
    const auto pool = field_elements(K, audit_bound);
    const std::size_t nx = u.base_count;
    std::vector<std::size_t> idx(nx, 0);
    auto index_of = [&](const std::string& n) { return *u.ring->index_of(n); };
    for (std::size_t sampled = 0; sampled < audit_limit && !pool.empty();) {
        std::vector<Scalar> pt(u.vars.size(), Scalar::zero(K));
        for (std::size_t i = 0; i < nx; ++i) pt[i] = pool[idx[i]];
        bool complete = true;
        for (const auto& site : u.sites) {
            std::vector<Scalar> bs;
            for (const auto& b : site.basis) bs.push_back(b.eval(pt));
            auto fam = lambda_family(bs, site.argument.eval(pt));
            for (std::size_t j = 0; j < site.coordinates.size(); ++j) pt[index_of(site.coordinates[j])] = fam.values[j];
        }
        for (std::size_t i = nx; i < u.vars.size(); ++i) {
            if (u.vars[i].rfind('w', 0) != 0) continue;
            for (const auto& c : u.conditions) {
                if (!c.involves(i)) continue;
                const Scalar d = c.partial(i).eval(pt);
                if (d.is_zero()) complete = false;
                else pt[i] = d.inverse();
            }
        }
        if (complete && out.V.contains(pt)) {
            ++sampled;
            ++out.audit.sampled;
            const bool indep = std::all_of(out.rows.begin(), out.rows.end(),
                                           [&](const auto& row) { return row_independent(row, pt, K); });
            if (indep) {
                ++out.audit.independent;
                Assignment a;
                for (std::size_t i = 0; i < nx; ++i) a[u.vars[i]] = pt[i];
                if (eval_formula(f, s, a))
                    ++out.audit.confirmed;
                else
                    out.audit.failures.push_back(pt);
            }
        }
        std::size_t pos = 0;
        while (pos < nx && ++idx[pos] == pool.size()) idx[pos++] = 0;
        if (pos == nx) break;
    }
    return out;
}

// --- B-operators ------------------------------------------------------------------------------

BAlgebra BAlgebra::truncated(const Field& k, unsigned n) {
    require(n >= 1, "k[eta]/(eta^n) needs n >= 1");
    BAlgebra B;
    B.k = k;
    B.mult.assign(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(k))));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; i + j < n; ++j) B.mult[i][j][i + j] = Scalar::one(k);
    return B;
}

namespace {

using BElem = std::vector<Scalar>;

BElem bmul(const BAlgebra& B, const BElem& a, const BElem& b) {
    const std::size_t n = B.dim();
    BElem c(n, Scalar::zero(B.k));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j].is_zero()) continue;
            for (std::size_t l = 0; l < n; ++l) c[l] += a[i] * b[j] * B.mult[i][j][l];
        }
    }
    return c;
}

BElem unit_vector(const BAlgebra& B, std::size_t i) {
    BElem e(B.dim(), Scalar::zero(B.k));
    e[i] = Scalar::one(B.k);
    return e;
}

bool is_zero_elem(const BElem& a) {
    return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace

void BAlgebra::validate() const {
    const std::size_t n = dim();
    require(n >= 1, "B-algebra has an empty basis");
    for (const auto& row : mult) {
        require(row.size() == n, "B-algebra structure constants have the wrong shape");
        for (const auto& v : row) require(v.size() == n, "B-algebra structure constants have the wrong shape");
    }
    for (std::size_t i = 0; i < n; ++i) {
        require(mult[0][i] == unit_vector(*this, i) && mult[i][0] == unit_vector(*this, i), "b_0 is not the unit");
        for (std::size_t j = 0; j < n; ++j) {
            require(mult[i][j] == mult[j][i], "B-algebra is not commutative");
            if (i && j) require(mult[i][j][0].is_zero(), "the augmentation kernel is not an ideal");
            for (std::size_t l = 0; l < n; ++l) {
                auto left = bmul(*this, mult[i][j], unit_vector(*this, l));
                auto right = bmul(*this, unit_vector(*this, i), mult[j][l]);
                require(left == right, "B-algebra is not associative");
            }
        }
    }
    for (std::size_t i = 1; i < n; ++i) {
        BElem x = unit_vector(*this, i);
        for (std::size_t k = 0; k < n; ++k) x = bmul(*this, x, unit_vector(*this, i));
        require(is_zero_elem(x), "the augmentation kernel is not nilpotent");
    }
}

bool BAlgebra::frobenius_kills_augmentation() const {
    const Code p = k->p();
    for (std::size_t i = 1; i < dim(); ++i) {
        BElem x = unit_vector(*this, 0);
        for (Code e = 0; e < p; ++e) x = bmul(*this, x, unit_vector(*this, i));
        if (!is_zero_elem(x)) return false;
    }
    return true;
}

std::optional<unsigned> BAlgebra::truncated_order() const {
    if (mult == truncated(k, unsigned(dim())).mult) return unsigned(dim());
    return std::nullopt;
}

std::function<MultiPoly(const MultiPoly&)> derivation_map(const DerivationContext& D, std::vector<MultiPoly> images) {
    return [D, images = std::move(images)](const MultiPoly& P) {
        const Ring& T = images.empty() ? P.ring() : images[0].ring();
        MultiPoly r = D.apply_coefficients(P).embed(T);
        for (std::size_t j = 0; j < P.ring()->nvars() && j < images.size(); ++j)
            if (P.involves(j)) r += P.partial(j).embed(T) * images[j];
        return r;
    };
}

std::function<MultiPoly(const MultiPoly&)> table_map(const Ring& target, std::vector<std::pair<Mono, MultiPoly>> table) {
    return [target, table = std::move(table)](const MultiPoly& P) {
        MultiPoly r = MultiPoly::zero(target);
        for (const auto& [m, c] : P.terms())
            for (const auto& [tm, img] : table)
                if (tm == m) r += img * c;
        return r;
    };
}

namespace {

void monomials_up_to(std::size_t n, unsigned degree, Mono& cur, std::size_t i, std::vector<Mono>& out) {
    if (i == n) {
        out.push_back(cur);
        return;
    }
    unsigned used = 0;
    for (std::size_t j = 0; j < i; ++j) used += cur[j];
    for (unsigned e = 0; used + e <= degree; ++e) {
        cur[i] = e;
        monomials_up_to(n, degree, cur, i + 1, out);
    }
    cur[i] = 0;
}

}  // namespace

BOperatorReport b_operator_check(const BOperatorData& data, const BAlgebra& B) {
    B.validate();
    const std::size_t n = B.dim();
    if (data.maps.size() != n)
        fail("dimension mismatch: " + std::to_string(data.maps.size()) + " maps for a basis of size " +
             std::to_string(n));
    const Ring& R = data.R;
    const Ring& T = data.T;
    std::vector<MultiPoly> gb;
    if (!data.t_relations.empty()) gb = groebner_basis(Ideal(T, data.t_relations));
    auto reduce = [&](const MultiPoly& p) {
        return gb.empty() ? p : normal_form(p, gb, MonomialOrder::grevlex());
    };
    auto phi = [&](const MultiPoly& r) {
        std::vector<MultiPoly> v;
        for (const auto& m : data.maps) v.push_back(reduce(m(r)));
        return v;
    };
    auto tensor_mul = [&](const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b) {
        std::vector<MultiPoly> c(n, MultiPoly::zero(T));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l)
                    if (!B.mult[i][j][l].is_zero()) c[l] += a[i] * b[j] * B.mult[i][j][l];
        for (auto& x : c) x = reduce(x);
        return c;
    };
    auto show = [&](const MultiPoly& p) { return p.to_string(); };

    auto one = phi(MultiPoly::constant(R, 1));
    for (std::size_t i = 0; i < n; ++i) {
        const MultiPoly want = i == 0 ? reduce(MultiPoly::constant(T, 1)) : MultiPoly::zero(T);
        if (one[i] != want) return {false, "the unit is not preserved: d_" + std::to_string(i) + "(1) = " + show(one[i])};
    }

    std::vector<MultiPoly> elems;
    std::vector<Mono> monos;
    Mono cur(R->nvars(), 0);
    monomials_up_to(R->nvars(), data.degree, cur, 0, monos);
    for (const auto& m : monos) elems.push_back(MultiPoly::monomial(R, m, Scalar::one(R->field())));
    const Field& K = R->field();
    for (int j = 0; j < K->m(); ++j) elems.push_back(MultiPoly::constant(R, Scalar::transcendental(K, j)));
    if (K->constants().k() > 1) elems.push_back(MultiPoly::constant(R, Scalar::generator(K)));

    std::size_t pairs = 0;
    for (std::size_t a = 0; a < elems.size(); ++a) {
        const auto pa = phi(elems[a]);
        for (std::size_t b = a; b < elems.size(); ++b) {
            ++pairs;
            const auto lhs = phi(elems[a] * elems[b]);
            const auto rhs = tensor_mul(pa, phi(elems[b]));
            for (std::size_t l = 0; l < n; ++l)
                if (lhs[l] != rhs[l])
                    return {false, "multiplicativity fails on r = " + show(elems[a]) + ", s = " + show(elems[b]) +
                                       " at b_" + std::to_string(l) + ": " + show(lhs[l]) + " vs " + show(rhs[l])};
        }
    }
    for (const auto& rel : data.relations) {
        const auto v = phi(rel);
        for (std::size_t l = 0; l < n; ++l)
            if (!v[l].is_zero())
                return {false, "relation " + show(rel) + " is not sent to 0: component b_" + std::to_string(l) +
                                   " is " + show(v[l])};
    }
    return {true, "unit preserved, multiplicative on " + std::to_string(pairs) + " pairs, " +
                      std::to_string(data.relations.size()) + " relations sent to 0"};
}

// --- G-B-DCF ----------------------------------------------------------------------------------

namespace {

void require_action_on(const Field& K, const FieldAction& act) {
    const auto& C = K->constants();
    if (act.field()->p() != C.p() || act.field()->modulus() != C.modulus())
        fail("the action is not on the constant field of " + K->spec());
}

std::vector<Code> embedding_table(const FieldAction& act) { return invariants(act).embedding; }

}  // namespace

Field invariant_field(const Field& K, const FieldAction& act) {
    require_action_on(K, act);
    const Subfield sf = invariants(act);
    return make_field(K->p(), sf.field->modulus(), K->transcendentals());
}

Scalar embed_invariant(const Scalar& x, const Field& K, const FieldAction& act) {
    require_action_on(K, act);
    const auto table = embedding_table(act);
    require(x.field()->constants().q() == table.size(), "element is not in the invariant field");
    return Scalar::fraction(K, rp::map_constants(x.num(), table), rp::map_constants(x.den(), table));
}

namespace {

Scalar restrict_invariant(const Scalar& x, const Field& KG, const FieldAction& act) {
    const Field& K = x.field();
    for (std::size_t g = 0; g < act.group().size(); ++g) {
        std::vector<Code> table(act.field()->q());
        for (Code c = 0; c < table.size(); ++c) table[c] = act.sigma(g).apply(c);
        const Scalar y = Scalar::fraction(K, rp::map_constants(x.num(), table), rp::map_constants(x.den(), table));
        if (y != x) fail("derivation image " + x.to_string() + " is not G-invariant");
    }
    const auto table = embedding_table(act);
    std::vector<Code> back(act.field()->q(), 0);
    for (Code c = 0; c < table.size(); ++c) back[table[c]] = c;
    return Scalar::fraction(KG, rp::map_constants(x.num(), back), rp::map_constants(x.den(), back));
}

}  // namespace

CheckReport validate_gbdcf_instance(const GbDcfInstance& inst) {
    require(inst.action != nullptr, "G-B-DCF instance needs a group action");
    const FieldAction& act = *inst.action;
    inst.B.validate();
    const Field KG = invariant_field(inst.K, act);
    require_same_field(inst.V.field(), KG, "G-B-DCF V over the invariant field");
    require_same_field(inst.W.field(), KG, "G-B-DCF W over the invariant field");
    require_doubled_names(inst.V, inst.W);
    if (inst.V.is_empty()) fail("V is empty");

    CheckReport r;
    if (!record(r, kBulletFaithful, "the action of G on K is faithful", [&] {
            const bool f = is_faithful(act);
            return Verdict{f, f ? "only the identity acts trivially" : "a non-identity element acts trivially"};
        }))
        return r;
    if (!record(r, kBulletIrreducible, "V and W are irreducible over the invariant field", [&] {
            auto v = irreducibility(inst.V);
            if (!v.value) return Verdict{false, "V: " + v.certificate};
            auto w = irreducibility(inst.W);
            if (!w.value) return Verdict{false, "W: " + w.certificate};
            return Verdict{true, "V: " + v.certificate + "; W: " + w.certificate};
        }))
        return r;

    const auto order = inst.B.truncated_order();
    if (!order || *order != 2)
        unsupported("unsupported B-algebra class: the geometric bullets need k[eta]/(eta^2)");
    std::vector<Scalar> images;
    for (const auto& im : inst.images) images.push_back(restrict_invariant(im, KG, act));
    const DerivationContext D(KG, images);

    if (!record(r, kBulletContained, "W is contained in the prolongation of V",
                [&] { return derivation_extends(inst.V, inst.W, D); }))
        return r;
    if (!record(r, kBulletDominant, "W projects generically on V",
                [&] { return dominance(projection_map(inst.W, inst.V)); }))
        return r;
    if (!record(r, kBulletEqualizer, "E projects generically on W", [&] { return kerprol_check(inst.V, inst.W, D); }))
        return r;
    if (!inst.f.empty() && !record(r, kBulletAdmissible, "the functions composed with the projection are admissible",
                                   [&] { return admissibility(inst.W, inst.f); }))
        return r;
    r.status = ReportStatus::valid_instance;
    if (!inst.search) return r;
    return search(inst.V, inst.W, inst.f, D, inst.bound, r);
}

}  // namespace pacf
