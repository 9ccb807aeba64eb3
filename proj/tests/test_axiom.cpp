#include <gtest/gtest.h>

#include <random>

#include "pacf/axiom.hpp"
#include "pacf/error.hpp"

using namespace pacf;

namespace pacf {
void PrintTo(const MultiPoly& p, std::ostream* os) { *os << p.to_string(); }
void PrintTo(const Scalar& s, std::ostream* os) { *os << s.to_string(); }
}  // namespace pacf

namespace {

AffineVariety variety(const Field& K, const std::vector<std::string>& vars, const std::vector<std::string>& gens) {
    Ring R = make_ring(K, vars);
    std::vector<MultiPoly> ps;
    for (const auto& g : gens) ps.push_back(parse_poly(R, g));
    return AffineVariety(R, ps);
}

Scalar sc(const Field& K, const std::string& s) {
    Ring R = make_ring(K, {});
    auto e = parse_rational(R, s);
    return e.num.constant_term() / e.den.constant_term();
}

DPacInstance line_instance(const std::string& field, const std::string& w, std::vector<std::string> f = {"x"}) {
    Field K = make_field(field);
    DPacInstance inst;
    inst.D = K->is_finite() ? DerivationContext(K) : DerivationContext::standard(K);
    inst.V = variety(K, {"x"}, {});
    inst.W = variety(K, {"x", "u"}, {w});
    for (const auto& s : f) inst.f.push_back(parse_rational(inst.V.ring(), s));
    return inst;
}

std::vector<std::string> bullet_ids(const CheckReport& r) {
    std::vector<std::string> out;
    for (const auto& b : r.bullets) out.push_back(b.id);
    return out;
}

}  // namespace

TEST(DPac, ValidLineInstanceAndWitness) {
    auto inst = line_instance("Fp(3; t)", "u - 1");
    auto r = validate_dpac_instance(inst);
    EXPECT_EQ(r.status, ReportStatus::valid_instance) << r.to_string();
    ASSERT_EQ(r.bullets.size(), 5u);
    for (const auto& b : r.bullets) EXPECT_TRUE(b.pass) << b.id;
    EXPECT_EQ(bullet_ids(r), (std::vector<std::string>{kBulletAbsIrr, kBulletContained, kBulletDominant,
                                                        kBulletEqualizer, kBulletAdmissible}));
    inst.bound = 1;
    auto s = search_dpac_witness(inst);
    ASSERT_EQ(s.status, ReportStatus::witness_found) << s.to_string();
    EXPECT_EQ(s.point, (std::vector<Scalar>{sc(inst.V.field(), "t")}));
    EXPECT_TRUE(reverify_dpac_witness(inst, s.point));
    EXPECT_FALSE(reverify_dpac_witness(inst, {sc(inst.V.field(), "t^3")}));
    EXPECT_FALSE(reverify_dpac_witness(inst, {sc(inst.V.field(), "2*t")}));
}

TEST(DPac, KerprolCounterexampleRejectedAtEqualizer) {
    auto inst = line_instance("Fp(2; t)", "u^2 - x");
    auto r = validate_dpac_instance(inst);
    EXPECT_EQ(r.status, ReportStatus::invalid);
    EXPECT_EQ(r.failed_bullet, kBulletEqualizer);
    EXPECT_EQ(r.bullets.size(), 4u);
    EXPECT_TRUE(r.bullets[0].pass && r.bullets[1].pass && r.bullets[2].pass);
    EXPECT_THROW(search_dpac_witness(inst), Error);
}

TEST(DPac, ContainmentFailure) {
    Field K = make_field("Fp(3; t)");
    DPacInstance inst;
    inst.D = DerivationContext::standard(K);
    inst.V = variety(K, {"x"}, {"x^3 - t"});
    inst.W = variety(K, {"x", "u"}, {"x^3 - t", "u"});
    auto r = validate_dpac_instance(inst);
    EXPECT_EQ(r.status, ReportStatus::invalid);
    EXPECT_EQ(r.failed_bullet, kBulletContained);
    EXPECT_EQ(r.bullets.size(), 2u);

    inst.V = variety(K, {"x"}, {});
    inst.W = variety(K, {"x", "u"}, {"x^2 - t", "u"});
    auto r2 = validate_dpac_instance(inst);
    EXPECT_EQ(r2.status, ReportStatus::invalid);
    EXPECT_EQ(r2.failed_bullet, kBulletAbsIrr);
    EXPECT_EQ(r2.bullets.size(), 1u);
}

TEST(DPac, AdmissibilityAndDegenerateFields) {
    auto sq = line_instance("Fp(3; t)", "u - 1", {"x^3"});
    auto r = validate_dpac_instance(sq);
    EXPECT_EQ(r.failed_bullet, kBulletAdmissible);

    auto fin = line_instance("GF(3,2)", "u - 1", {});
    auto v = validate_dpac_instance(fin);
    EXPECT_EQ(v.status, ReportStatus::valid_instance) << v.to_string();
    auto s = search_dpac_witness(fin);
    EXPECT_EQ(s.status, ReportStatus::exhausted);
    EXPECT_EQ(s.candidates, 9u);

    auto empty = line_instance("Fp(3; t)", "u - 1");
    empty.V = variety(empty.V.field(), {"x"}, {"1"});
    EXPECT_THROW(validate_dpac_instance(empty), Error);
}

TEST(PacOpen, CircleWitnessAndErrors) {
    Field K = make_field("Fp(7)");
    auto C = variety(K, {"x", "y"}, {"x^2 + y^2 - 1"});
    auto r = pac_witness_task(C, {parse_poly(C.ring(), "y")}, 1);
    ASSERT_EQ(r.status, ReportStatus::witness_found);
    EXPECT_EQ(r.point, (std::vector<Scalar>{Scalar::zero(K), Scalar::one(K)}));

    auto all = pac_witness_task(C, {parse_poly(C.ring(), "1")}, 1);
    ASSERT_EQ(all.status, ReportStatus::witness_found);
    EXPECT_EQ(all.point, enumerate_points(C, {}).front());

    auto split = variety(K, {"x", "y"}, {"x^2 + y^2"});
    EXPECT_THROW(pac_witness_task(split, {}, 1), Error);
    EXPECT_THROW(pac_witness_task(C, {parse_poly(C.ring(), "x^2 + y^2 - 1")}, 1), Error);

    auto noon = variety(K, {"x", "y"}, {"x^2 + y^2 - 1"});
    auto none = pac_witness_task(noon, {parse_poly(noon.ring(), "x*y*(x^2 - 2)*(y^2-2)")}, 1);
    EXPECT_TRUE(none.status == ReportStatus::witness_found || none.status == ReportStatus::exhausted);
    if (none.status == ReportStatus::witness_found) {
        EXPECT_TRUE(noon.contains(none.point));
    }
}

TEST(Scf, NoLambdaGivesEmptyMatrix) {
    Field K = make_field("Fp(2; t)");
    Structure S{K, DerivationContext::standard(K), nullptr};
    ParseContext c{K, {"x", "y"}, Language::lambda, {}};
    auto f = parse_formula("x^2 + y = t", c);
    auto r = scf_reduce(f, {"x", "y"}, S, {{"x", sc(K, "t")}, {"y", sc(K, "t^2+t")}});
    EXPECT_TRUE(r.rows.empty());
    ASSERT_EQ(r.V.gens().size(), 1u);
    EXPECT_EQ(r.V.gens()[0], parse_poly(r.V.ring(), "x^2 + y - t"));
    EXPECT_GT(r.audit.sampled, 0u);
    EXPECT_TRUE(r.audit.passed());
}

TEST(Scf, GivenIndependenceRowIsAudited) {
    Field K = make_field("Fp(2; t1, t2)");
    Structure S{K, std::nullopt, nullptr};
    ParseContext c{K, {"x", "y"}, Language::lambda, {}};
    auto f = parse_formula("lam(2,2; t1, t2; x) = y", c);
    const Scalar x = sc(K, "t1^2*t2 + t1*t2");
    auto wit = Assignment{{"x", x}, {"y", lambda_multi(2, 2, {sc(K, "t1"), sc(K, "t2")}, x)}};
    auto r = scf_reduce(f, {"x", "y"}, S, wit, {{parse_term("x", c)}});
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_EQ(r.row_origin[0], "lambda 1");
    EXPECT_EQ(r.rows[0].size(), 2u);
    EXPECT_EQ(r.row_origin[1], "given 1");
    EXPECT_EQ(r.rows[1].size(), 1u);
    EXPECT_GT(r.audit.independent, 0u);
    EXPECT_TRUE(r.audit.passed());
    EXPECT_TRUE(r.V.contains(r.unravel.tuple));
}

TEST(Scf, NestedLambdaLocus) {
    Field K = make_field("Fp(2; t)");
    Structure S{K, std::nullopt, nullptr};
    ParseContext c{K, {"x", "c"}, Language::lambda, {}};
    auto f = parse_formula("lam(2,1; t; lam(1,1; t; x) + x^2) + x = c", c);
    const Scalar a = sc(K, "t^3+t+1");
    const Scalar inner = lambda_multi(1, 1, {sc(K, "t")}, a);
    const Scalar outer = lambda_multi(2, 1, {sc(K, "t")}, inner + a * a);
    auto r = scf_reduce(f, {"x", "c"}, S, {{"x", a}, {"c", outer + a}});
    EXPECT_EQ(r.rows.size(), 2u);
    EXPECT_TRUE(r.V.contains(r.unravel.tuple));
    auto vt = r.unravel.value_tuple();
    EXPECT_EQ(vt[2], inner);
    EXPECT_EQ(vt[3], outer);
    EXPECT_GT(r.audit.independent, 0u);
    EXPECT_TRUE(r.audit.passed());
}

namespace {

BOperatorData derivation_data(const Field& K, const std::vector<std::string>& vars,
                              const std::vector<std::string>& images, const std::vector<std::string>& rels = {}) {
    BOperatorData d;
    d.R = make_ring(K, vars);
    d.T = d.R;
    for (const auto& r : rels) d.relations.push_back(parse_poly(d.R, r));
    d.t_relations = d.relations;
    std::vector<MultiPoly> im;
    for (const auto& s : images) im.push_back(parse_poly(d.R, s));
    d.maps = {[](const MultiPoly& p) { return p; }, derivation_map(DerivationContext::standard(K), im)};
    return d;
}

}  // namespace

TEST(BOperator, DerivationsAreOperators) {
    Field K = make_field("Fp(3; t)");
    auto B = BAlgebra::truncated(K, 2);
    EXPECT_TRUE(b_operator_check(derivation_data(K, {"x", "y"}, {"y", "x*y + t"}), B).is_operator);
    EXPECT_TRUE(b_operator_check(derivation_data(K, {"x"}, {"x/(2*t)"}, {"x^2 - t"}), B).is_operator);
    auto bad = b_operator_check(derivation_data(K, {"x"}, {"1"}, {"x^2 - t"}), B);
    EXPECT_FALSE(bad.is_operator);
    EXPECT_NE(bad.certificate.find("relation"), std::string::npos);
}

TEST(BOperator, NonLeibnizMapRejected) {
    Field K = make_field("Fp(3; t)");
    auto d = derivation_data(K, {"x", "y"}, {"1", "0"});
    auto D = d.maps[1];
    d.maps[1] = [D](const MultiPoly& p) { return D(p) + p.partial(0).partial(0); };
    auto r = b_operator_check(d, BAlgebra::truncated(K, 2));
    EXPECT_FALSE(r.is_operator);
    EXPECT_NE(r.certificate.find("multiplicativity"), std::string::npos);
    d.maps.pop_back();
    EXPECT_THROW(b_operator_check(d, BAlgebra::truncated(K, 2)), Error);
}

namespace {

unsigned long binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    unsigned long r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// Hasse derivative of order k with respect to x_0, zero on constants.
MultiPoly hasse(const MultiPoly& p, unsigned k) {
    PolyBuilder b(p.ring());
    const Field& K = p.field();
    for (const auto& [m, c] : p.terms()) {
        if (m[0] < k) continue;
        Mono n = m;
        n[0] -= k;
        b.add(n, c * Scalar::from_int(K, (long long)(binom(m[0], k) % K->p())));
    }
    return b.take();
}

}  // namespace

TEST(BOperator, TruncatedHigherDerivation) {
    Field K = make_field("Fp(3; t)");
    BOperatorData d;
    d.R = make_ring(K, {"x", "y"});
    d.T = d.R;
    d.degree = 3;
    d.maps = {[](const MultiPoly& p) { return p; }, [](const MultiPoly& p) { return hasse(p, 1); },
              [](const MultiPoly& p) { return hasse(p, 2); }};
    auto B = BAlgebra::truncated(K, 3);
    EXPECT_TRUE(b_operator_check(d, B).is_operator);
    d.maps[2] = [](const MultiPoly& p) { return hasse(p, 2) * Scalar::from_int(p.field(), 2); };
    EXPECT_FALSE(b_operator_check(d, B).is_operator);
}

TEST(BOperator, AgreesWithLeibnizOnRandomPairs) {
    Field K = make_field("Fp(3; t)");
    Ring R = make_ring(K, {"x", "y"});
    std::mt19937 rng(7);
    auto rnd = [&] {
        MultiPoly p = MultiPoly::zero(R);
        for (const char* m : {"1", "x", "y", "t", "t*x"}) p += parse_poly(R, m) * Scalar::from_int(K, rng() % 3);
        return p;
    };
    for (int trial = 0; trial < 6; ++trial) {
        auto d = derivation_data(K, {"x", "y"}, {"y + t", "x^2"});
        auto D = d.maps[1];
        const bool perturb = trial % 2 == 1;
        if (perturb) {
            const Scalar c = Scalar::from_int(K, 1 + trial % 2);
            d.maps[1] = [D, c](const MultiPoly& p) { return D(p) + p.partial(0).partial(0) * c; };
        }
        const bool op = b_operator_check(d, BAlgebra::truncated(K, 2)).is_operator;
        bool leibniz = true;
        for (int k = 0; k < 100; ++k) {
            auto r = rnd(), s = rnd();
            if (d.maps[1](r * s) != d.maps[1](r) * s + r * d.maps[1](s)) leibniz = false;
        }
        EXPECT_EQ(op, leibniz) << "trial " << trial;
        EXPECT_EQ(op, !perturb);
    }
}

TEST(BOperator, AlgebraValidation) {
    Field K = make_field("Fp(2)");
    auto B = BAlgebra::truncated(K, 3);
    EXPECT_NO_THROW(B.validate());
    EXPECT_FALSE(B.frobenius_kills_augmentation());
    EXPECT_TRUE(BAlgebra::truncated(make_field("Fp(3)"), 3).frobenius_kills_augmentation());
    EXPECT_EQ(B.truncated_order(), 3u);
    auto bad = B;
    bad.mult[1][1][0] = Scalar::one(K);
    EXPECT_THROW(bad.validate(), Error);
    auto noncomm = BAlgebra::truncated(K, 3);
    noncomm.mult[1][2][2] = Scalar::one(K);
    EXPECT_THROW(noncomm.validate(), Error);
}

TEST(GbDcf, QuadraticConstantsWithFrobenius) {
    Field K = make_field("GF(3,2; t)");
    auto act = FieldAction::cyclic(2, frobenius_automorphism(K->constants_ptr()));
    Field KG = invariant_field(K, act);
    EXPECT_EQ(KG->constants().k(), 1u);
    EXPECT_EQ(KG->transcendentals(), K->transcendentals());
    EXPECT_EQ(embed_invariant(sc(KG, "t^2+1"), K, act), sc(K, "t^2+1"));

    GbDcfInstance inst;
    inst.K = K;
    inst.action = &act;
    inst.B = BAlgebra::truncated(K, 2);
    inst.images = {Scalar::one(K)};
    inst.V = variety(KG, {"x"}, {});
    inst.W = variety(KG, {"x", "u"}, {"u - 1"});
    inst.f = {parse_rational(inst.V.ring(), "x")};
    auto r = validate_gbdcf_instance(inst);
    ASSERT_EQ(r.status, ReportStatus::witness_found) << r.to_string();
    EXPECT_EQ(r.point, (std::vector<Scalar>{sc(KG, "t")}));

    inst.images = {Scalar::generator(K)};
    EXPECT_THROW(validate_gbdcf_instance(inst), Error);
    inst.images = {Scalar::one(K)};
    inst.B = BAlgebra::truncated(K, 3);
    try {
        validate_gbdcf_instance(inst);
        ADD_FAILURE() << "expected unsupported";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::unsupported);
    }
}

TEST(GbDcf, NonFaithfulAction) {
    Field K = make_field("GF(3,2; t)");
    auto act = FieldAction::cyclic(2, frobenius_automorphism(K->constants_ptr(), 2));
    Field KG = invariant_field(K, act);
    GbDcfInstance inst{K, &act, BAlgebra::truncated(K, 2), {Scalar::one(K)}, variety(KG, {"x"}, {}),
                       variety(KG, {"x", "u"}, {"u - 1"}), {}, 1, true};
    auto r = validate_gbdcf_instance(inst);
    EXPECT_EQ(r.status, ReportStatus::invalid);
    EXPECT_EQ(r.failed_bullet, kBulletFaithful);
    EXPECT_EQ(r.bullets.size(), 1u);
}

TEST(GbDcf, TrivialGroupCollapsesToDPac) {
    Field K = make_field("Fp(3; t)");
    auto act = FieldAction(FiniteGroup::trivial(), K->constants_ptr(), {frobenius_automorphism(K->constants_ptr(), 0)});
    for (const char* w : {"u - 1", "u - x", "u^3 - x"}) {
        auto d = line_instance("Fp(3; t)", w, {});
        GbDcfInstance g{K, &act, BAlgebra::truncated(K, 2), {Scalar::one(K)}, d.V, d.W, {}, 1, false};
        auto rd = validate_dpac_instance(d);
        auto rg = validate_gbdcf_instance(g);
        EXPECT_EQ(rd.status, rg.status) << w;
        for (const char* id : {kBulletContained, kBulletDominant, kBulletEqualizer}) {
            auto find = [&](const CheckReport& r) -> std::optional<bool> {
                for (const auto& b : r.bullets)
                    if (b.id == id) return b.pass;
                return std::nullopt;
            };
            EXPECT_EQ(find(rd), find(rg)) << w << " " << id;
        }
    }
}
