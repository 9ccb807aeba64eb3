#include <gtest/gtest.h>

#include "pacf/error.hpp"
#include "pacf/field.hpp"
#include "pacf/linalg.hpp"

#include <random>

using namespace pacf;

namespace {

Scalar T(const Field& f, int i = 0) { return Scalar::transcendental(f, i); }
Scalar C(const Field& f, long long v) { return Scalar::from_int(f, v); }

}  // namespace

TEST(MakeField, F4WithStandardModulus) {
    auto f = make_field("GF(2,2,x^2+x+1)");
    EXPECT_EQ(f->constants().q(), 4u);
    EXPECT_EQ(f->p(), 2u);
    EXPECT_TRUE(f->is_finite());
    auto g = Scalar::generator(f);
    EXPECT_EQ(g * g, g + Scalar::one(f));
}

TEST(MakeField, RationalFunctionFieldImperfection) {
    auto f = make_field("Fp(2; t)");
    EXPECT_EQ(f->imperfection_exponent(), 1);
    EXPECT_EQ(f->m(), 1);
    EXPECT_EQ(make_field("Fp(5)")->constants().q(), 5u);
}

TEST(MakeField, RejectsBadInput) {
    EXPECT_THROW(make_field("GF(2,2,x^2+1)"), Error);
    EXPECT_THROW(make_field("GF(4,1)"), Error);
    EXPECT_THROW(make_field("Fp(3; t, t)"), Error);
    EXPECT_THROW(make_field("GF(2,0)"), Error);
}

TEST(MakeField, SpecRoundTrip) {
    for (std::string s : {"GF(2,2)", "Fp(3; t)", "Fp(2; t,s)", "GF(3,2; t)", "Fp(7)"}) {
        auto f = make_field(s);
        EXPECT_TRUE(make_field(f->spec())->same_as(*f)) << s;
    }
}

TEST(Scalar, CanonicalFractions) {
    auto f = make_field("Fp(3; t)");
    auto t = T(f);
    auto a = (t * t - C(f, 1)) / (t - C(f, 1));
    EXPECT_EQ(a, t + C(f, 1));
    auto b = C(f, 2) / (C(f, 2) * t);
    EXPECT_EQ(b, t.inverse());
    EXPECT_EQ(b.to_string(), "1/t");
    EXPECT_EQ(((t + C(f, 1)) / (t * t + C(f, 2))).to_string(), "1/(t+2)");
}

TEST(Scalar, FieldAxiomsSampled) {
    auto f = make_field("Fp(5; t,s)");
    auto t = T(f, 0), s = T(f, 1);
    std::vector<Scalar> xs = {t, s, t * s + C(f, 3), (t - s) / (t + C(f, 2)), C(f, 4), s.pow(3) / t};
    for (const auto& a : xs)
        for (const auto& b : xs) {
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ((a + b) - b, a);
            if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
            for (const auto& c : xs) EXPECT_EQ(a * (b + c), a * b + a * c);
        }
}

TEST(Scalar, ConstantExtensionElements) {
    auto f = make_field("GF(3,2; t)");
    auto g = Scalar::generator(f);
    EXPECT_FALSE(g.constant_code() < 3);
    EXPECT_EQ(g.pow(8), Scalar::one(f));
    auto x = (g * T(f) + C(f, 1)) / (T(f) - g);
    EXPECT_EQ(x * (T(f) - g), g * T(f) + C(f, 1));
}

TEST(Frobenius, Examples) {
    auto f4 = make_field("GF(2,2)");
    auto g = Scalar::generator(f4);
    EXPECT_EQ(frobenius(g), g * g);
    auto f = make_field("Fp(2; t)");
    EXPECT_EQ(frobenius(T(f) + C(f, 1)), T(f) * T(f) + C(f, 1));
    EXPECT_TRUE(frobenius(Scalar::zero(f)).is_zero());
}

TEST(PthRoot, Examples) {
    auto f9 = make_field("GF(3,2)");
    for (Code c = 0; c < 9; ++c) {
        auto x = Scalar::from_code(f9, c);
        auto r = pth_root(x);
        ASSERT_TRUE(r.has_value());
        EXPECT_EQ(frobenius(*r), x);
    }
    auto f = make_field("Fp(2; t)");
    auto t = T(f);
    auto r = pth_root(t * t + C(f, 1));
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, t + C(f, 1));
    EXPECT_FALSE(pth_root(t).has_value());
    auto q = pth_root((t * t + C(f, 1)) / (t.pow(4)));
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(frobenius(*q), (t * t + C(f, 1)) / (t.pow(4)));
}

TEST(Lambda0, Examples) {
    auto f = make_field("Fp(2; t)");
    auto t = T(f);
    EXPECT_EQ(lambda0(t * t), t);
    EXPECT_TRUE(lambda0(t).is_zero());
    EXPECT_TRUE(lambda0(Scalar::zero(f)).is_zero());
}

TEST(PCoordinates, Reconstruct) {
    auto f = make_field("Fp(3; t,s)");
    auto t = T(f, 0), s = T(f, 1);
    std::vector<Scalar> xs = {t, s, t * s + C(f, 1), (t.pow(4) + s) / (t * s + C(f, 2)), C(f, 2)};
    auto basis = p_monomials({t, s}, f);
    for (const auto& x : xs) {
        auto co = p_coordinates(x);
        ASSERT_EQ(co.size(), 9u);
        Scalar acc = Scalar::zero(f);
        for (std::size_t j = 0; j < 9; ++j) acc += frobenius(co[j]) * basis[j];
        EXPECT_EQ(acc, x) << x.to_string();
    }
}

TEST(PIndependence, Examples) {
    auto f = make_field("Fp(2; t,s)");
    auto t = T(f, 0), s = T(f, 1);
    EXPECT_TRUE(is_p_independent({t, s}, f));
    EXPECT_FALSE(is_p_independent({t, t * t}, f));
    EXPECT_TRUE(is_p_independent({}, f));
    EXPECT_EQ(p_independence({t, s, t + s}, f), PIndependence::exceeds_imperfection);
    EXPECT_TRUE(is_p_independent({t + s * s}, f));
    EXPECT_FALSE(is_p_independent({t, t * s * s + C(f, 1)}, f));
}

TEST(PIndependence, MatchesRankOfPCoordinates) {
    std::mt19937 rng(11);
    for (const char* spec : {"Fp(2; t,s)", "Fp(3; t,s)"}) {
        auto f = make_field(spec);
        auto element = [&] {
            Scalar x = C(f, long(rng() % f->p()));
            for (int k = 0; k < 3; ++k) {
                Scalar m = C(f, long(rng() % f->p()));
                for (int e = int(rng() % 4); e > 0; --e) m = m * T(f, int(rng() % 2));
                x = x + m;
            }
            return x;
        };
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<Scalar> xs;
            for (int k = 1 + int(rng() % 2); k > 0; --k) xs.push_back(element());
            linalg::Matrix<Scalar> rows;
            for (const auto& m : p_monomials(xs, f)) rows.push_back(p_coordinates(m));
            const bool by_rank = linalg::rank(rows) == rows.size();
            EXPECT_EQ(is_p_independent(xs, f), by_rank) << xs[0].to_string();
        }
    }
}

TEST(PMonomials, Enumeration) {
    auto f = make_field("Fp(2; t,s)");
    auto t = T(f, 0), s = T(f, 1);
    auto ms = p_monomials({t, s}, f);
    ASSERT_EQ(ms.size(), 4u);
    EXPECT_TRUE(ms[0].is_one());
    EXPECT_EQ(ms[1], s);
    EXPECT_EQ(ms[2], t);
    EXPECT_EQ(ms[3], t * s);
}

TEST(LambdaMulti, ThreeCases) {
    auto f2 = make_field("Fp(2; t,s)");
    auto t = T(f2, 0), s = T(f2, 1);
    auto fam1 = lambda_family({t, t * t}, s);
    EXPECT_EQ(fam1.which, LambdaCase::dependent_basis);
    for (unsigned i = 1; i <= 4; ++i) EXPECT_TRUE(lambda_multi(i, 2, {t, t * t}, s).is_zero());
    auto fam2 = lambda_family({t}, s);
    EXPECT_EQ(fam2.which, LambdaCase::independent_with_c);
    EXPECT_TRUE(lambda_multi(1, 1, {t}, s).is_zero());
    EXPECT_TRUE(lambda_multi(2, 1, {t}, s).is_zero());

    auto f = make_field("Fp(2; t)");
    auto u = T(f);
    auto c = u.pow(3) + u.pow(2);
    auto fam3 = lambda_family({u}, c);
    EXPECT_EQ(fam3.which, LambdaCase::solved);
    EXPECT_EQ(lambda_multi(1, 1, {u}, c), u);
    EXPECT_EQ(lambda_multi(2, 1, {u}, c), u);
    EXPECT_EQ(frobenius(fam3.values[0]) + frobenius(fam3.values[1]) * u, c);
    EXPECT_THROW(lambda_multi(3, 1, {u}, c), Error);
    EXPECT_THROW(lambda_multi(0, 1, {u}, c), Error);
}

TEST(LambdaMulti, DefiningFormulaSampled) {
    auto f = make_field("Fp(3; t,s)");
    auto t = T(f, 0), s = T(f, 1);
    std::vector<std::vector<Scalar>> bases = {{t}, {s + t * t}, {t, s}, {t * s, s + C(f, 1)}};
    std::vector<Scalar> cs = {t * s, (t + s) / (s * s + C(f, 1)), s.pow(5), C(f, 2)};
    for (const auto& b : bases) {
        auto ms = p_monomials(b, f);
        for (const auto& c : cs) {
            auto fam = lambda_family(b, c);
            if (fam.which != LambdaCase::solved) continue;
            Scalar acc = Scalar::zero(f);
            for (std::size_t j = 0; j < ms.size(); ++j) acc += frobenius(fam.values[j]) * ms[j];
            EXPECT_EQ(acc, c);
        }
    }
}

TEST(LambdaBasis, ChecksBasis) {
    auto f = make_field("Fp(2; t)");
    auto t = T(f);
    auto c = t.pow(3) + t.pow(2);
    EXPECT_EQ(lambda_basis(2, 1, c, {t}), t);
    EXPECT_THROW(lambda_basis(1, 1, c, {t * t}), Error);
}

TEST(Scalar, PartialAndSubstitute) {
    auto f = make_field("Fp(3; t)");
    auto t = T(f);
    auto x = (t * t + C(f, 1)) / t;
    EXPECT_EQ(x.partial(0), C(f, 1) - t.pow(-2));
    auto y = x.substitute(f, {t + C(f, 1)});
    EXPECT_EQ(y, ((t + C(f, 1)).pow(2) + C(f, 1)) / (t + C(f, 1)));
    auto f9 = make_field("GF(3,2)");
    EXPECT_THROW(x.substitute(f9, {Scalar::zero(f9)}), Error);
}

TEST(Scalar, EnumerationOrder) {
    auto f = make_field("Fp(3; t)");
    auto t = T(f);
    EXPECT_TRUE(C(f, 2) < t);
    EXPECT_TRUE(t < t + C(f, 1));
    EXPECT_TRUE(t + C(f, 2) < C(f, 2) * t);
    EXPECT_FALSE(t < t);
}
