#include <gtest/gtest.h>

#include "pacf/differential.hpp"
#include "pacf/error.hpp"

using namespace pacf;

namespace pacf {
void PrintTo(const MultiPoly& p, std::ostream* os) { *os << p.to_string(); }
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

}  // namespace

TEST(Derive, Scalars) {
    Field K = make_field("Fp(3; t)");
    auto D = DerivationContext::standard(K);
    EXPECT_EQ(D.apply(sc(K, "t^2")), sc(K, "2*t"));
    EXPECT_EQ(D.apply(sc(K, "1/t")), sc(K, "-1/t^2"));
    EXPECT_TRUE(D.apply(sc(K, "t^3")).is_zero());
    Ring R = make_ring(K, {"x"});
    EXPECT_EQ(D.apply_coefficients(parse_poly(R, "x^2-t")), parse_poly(R, "-1"));
}

TEST(Derive, LeibnizAndQuotient) {
    Field K = make_field("Fp(5; t, s)");
    DerivationContext D(K, {sc(K, "s"), sc(K, "t^2+1")});
    auto a = sc(K, "(t^2+s)/(s*t+1)"), b = sc(K, "t^3-s^2/t");
    EXPECT_EQ(D.apply(a * b), D.apply(a) * b + a * D.apply(b));
    EXPECT_EQ(D.apply(a + b), D.apply(a) + D.apply(b));
    EXPECT_EQ(D.apply(a / b), (D.apply(a) * b - a * D.apply(b)) / (b * b));
}

TEST(Derive, PerfectBaseIsZero) {
    Field K = make_field("GF(3,2)");
    DerivationContext D(K);
    EXPECT_TRUE(D.is_zero());
    EXPECT_TRUE(D.apply(Scalar::generator(K)).is_zero());
}

TEST(Prolongation, Examples) {
    Field K = make_field("Fp(3; t)");
    auto D = DerivationContext::standard(K);
    auto b = prolongation(variety(K, {"x"}, {"x^2-t"}), D, {"u"});
    Ring T = b.tau.ring();
    ASSERT_EQ(b.tau.gens().size(), 2u);
    EXPECT_EQ(b.tau.gens()[0], parse_poly(T, "x^2-t"));
    EXPECT_EQ(b.tau.gens()[1], parse_poly(T, "2*x*u-1"));
    EXPECT_TRUE(b.provenance[1].linear);

    auto line = prolongation(variety(K, {"x"}, {}), D);
    EXPECT_TRUE(line.tau.gens().empty());
    EXPECT_EQ(line.tau.ring()->vars(), (std::vector<std::string>{"x", "dx"}));

    auto cube = prolongation(variety(K, {"x"}, {"x^3-t"}), D, {"u"});
    EXPECT_EQ(cube.tau.gens().back(), parse_poly(cube.tau.ring(), "-1"));
    EXPECT_TRUE(cube.tau.is_empty());
}

TEST(Prolongation, LinearInDerivativeVariables) {
    Field K = make_field("Fp(5; t)");
    auto D = DerivationContext::standard(K);
    auto b = prolongation(variety(K, {"x", "y"}, {"x^3*y-t*y^2+1", "x*y-t"}), D);
    for (std::size_t k = 0; k < b.tau.gens().size(); ++k)
        for (std::size_t i = 2; i < 4; ++i)
            EXPECT_LE(b.tau.gens()[k].degree_in(i), b.provenance[k].linear ? 1u : 0u);
}

TEST(Nabla, Points) {
    Field K = make_field("Fp(3; t)");
    auto D = DerivationContext::standard(K);
    auto b = prolongation(variety(K, {"x"}, {}), D, {"u"});
    EXPECT_EQ(nabla_point(b, D, {sc(K, "t")}), (std::vector<Scalar>{sc(K, "t"), sc(K, "1")}));
    EXPECT_EQ(nabla_point(b, D, {sc(K, "2")}), (std::vector<Scalar>{sc(K, "2"), sc(K, "0")}));
    auto hyper = variety(K, {"x", "y"}, {"x*y-t"});
    auto hb = prolongation(hyper, D);
    auto pt = nabla_point(hb, D, {sc(K, "t^2+1"), sc(K, "t/(t^2+1)")});
    EXPECT_TRUE(hb.tau.contains(pt));
    EXPECT_THROW(nabla_point(hb, D, {sc(K, "1"), sc(K, "1")}), Error);
}

TEST(Nabla, Generic) {
    Field K = make_field("Fp(3; t)");
    auto D = DerivationContext::standard(K);
    auto V = variety(K, {"x"}, {"x^2-t"});
    auto da = nabla_generic(V, D);
    ASSERT_TRUE(da);
    auto expect = FunctionFieldElem::from_expr(V, parse_rational(V.ring(), "1/(2*x)"));
    EXPECT_EQ((*da)[0], expect);
    EXPECT_FALSE(nabla_generic(variety(K, {"x"}, {"x^3-t"}), D));
}

TEST(Extends, Examples) {
    Field K = make_field("Fp(3; t)");
    auto D = DerivationContext::standard(K);
    auto V = variety(K, {"x"}, {"x^2-t"});
    EXPECT_TRUE(derivation_extends(V, variety(K, {"x", "u"}, {"x^2-t", "2*x*u-1"}), D).value);
    EXPECT_FALSE(derivation_extends(V, variety(K, {"x", "u"}, {"x^2-t", "u"}), D).value);
    auto line = variety(K, {"x"}, {});
    EXPECT_TRUE(derivation_extends(line, variety(K, {"x", "u"}, {"u^2-x*u+t"}), D).value);
    EXPECT_THROW(derivation_extends(line, variety(K, {"y", "u"}, {}), D), Error);
}

TEST(Equalizer, Examples) {
    Field K = make_field("Fp(3; t)");
    auto D = DerivationContext::standard(K);
    auto line = variety(K, {"x"}, {});
    auto eq = equalizer(line, variety(K, {"x", "u"}, {"u-1"}), D);
    Ring T = eq.E.ring();
    EXPECT_EQ(T->vars(), (std::vector<std::string>{"x", "u", "dx", "du"}));
    for (const auto& g : {"u-1", "du", "dx-u"}) EXPECT_TRUE(ideal_member(parse_poly(T, g), eq.E.ideal())) << g;
    EXPECT_EQ(eq.E.dimension(), 1);

    Field K2 = make_field("Fp(2; t)");
    auto D2 = DerivationContext::standard(K2);
    auto eq2 = equalizer(variety(K2, {"x"}, {}), variety(K2, {"x", "u"}, {"u^2-x"}), D2);
    EXPECT_TRUE(radical_member(parse_poly(eq2.E.ring(), "u"), eq2.E.ideal()));
    EXPECT_TRUE(radical_member(parse_poly(eq2.E.ring(), "dx"), eq2.E.ideal()));

    EXPECT_THROW(equalizer(variety(K, {"x"}, {"x^2-t"}), variety(K, {"x", "u"}, {"x^2-t", "u"}), D), Error);
}

TEST(Kerprol, ExamplesAgreeWithOracle) {
    Field K3 = make_field("Fp(3; t)");
    Field K2 = make_field("Fp(2; t)");
    auto D3 = DerivationContext::standard(K3);
    auto D2 = DerivationContext::standard(K2);
    struct Case {
        AffineVariety V, W;
        DerivationContext D;
        bool expect;
    };
    std::vector<Case> cases = {
        {variety(K3, {"x"}, {}), variety(K3, {"x", "u"}, {"u-1"}), D3, true},
        {variety(K2, {"x"}, {}), variety(K2, {"x", "u"}, {"u^2-x"}), D2, false},
        {variety(K3, {"x"}, {"x^2-t"}), variety(K3, {"x", "u"}, {"x^2-t", "2*x*u-1"}), D3, true},
        {variety(K3, {"x"}, {}), variety(K3, {"x", "u"}, {}), D3, true},
        {variety(K3, {"x"}, {}), variety(K3, {"x", "u"}, {"u-x^2"}), D3, true},
        {variety(K2, {"x"}, {}), variety(K2, {"x", "u"}, {"x^2+t*u^2+u"}), D2, true},
        {variety(K3, {"x", "y"}, {"x*y-t"}), variety(K3, {"x", "y", "u", "v"}, {"x*y-t", "v-x", "y*u+x*v-1"}), D3,
         true},
    };
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto& c = cases[i];
        EXPECT_EQ(kerprol_check(c.V, c.W, c.D).value, c.expect) << "case " << i;
        EXPECT_EQ(extension_oracle(c.V, c.W, c.D).value, c.expect) << "case " << i;
    }
}

TEST(Oracle, NoExtensionToCubeRoot) {
    Field K = make_field("Fp(3; t)");
    auto D = DerivationContext::standard(K);
    auto V = variety(K, {"x"}, {"x^3-t"});
    EXPECT_FALSE(extension_oracle(V, variety(K, {"x", "u"}, {"x^3-t", "u"}), D).value);
    EXPECT_FALSE(extension_oracle(V, variety(K, {"x", "u"}, {"x^3-t", "u-x"}), D).value);
}
