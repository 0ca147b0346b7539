#include <gtest/gtest.h>

#include <random>

#include "implab/mapfamily.hpp"

using namespace implab;

namespace {

PolyMap2 bare_map() {
    PolyMap2 m = PolyMap2::default_family();
    m.alpha_extra.clear();
    m.beta_extra.clear();
    return m;
}

// Uniform point of the polydisc of radius r.
ComplexPoint random_point(std::mt19937_64& rng, double r) {
    std::uniform_real_distribution<double> u(-r, r);
    return {{u(rng), u(rng)}, {u(rng), u(rng)}};
}

}  // namespace

TEST(EvalF, OriginIsFixed) {
    const auto m = PolyMap2::default_family();
    EXPECT_EQ(eval_F(m, 0.0, {}), (ComplexPoint{}));
}

TEST(EvalF, DirectEvaluationWithoutExtras) {
    const auto p = eval_F(bare_map(), 0.0, {-0.1, 0.0});
    EXPECT_NEAR(p.x.real(), -0.0910, 1e-15);
    EXPECT_EQ(p.x.imag(), 0.0);
    EXPECT_EQ(p.y, Complex{});
}

TEST(EvalF, DefaultFamilyOnTheLine) {
    // x + x^2 (1 + x + x^2)
    const auto p = eval_F(PolyMap2::default_family(), 0.0, {-0.1, 0.0});
    EXPECT_NEAR(p.x.real(), -0.1 + 0.01 * 0.91, 1e-15);
}

TEST(EvalF, SplitFixedPointsPushTheOrigin) {
    const auto p = eval_F(PolyMap2::default_family(), 0.1, {});
    EXPECT_NEAR(std::abs(p.x - 0.01), 0.0, 1e-17);
    EXPECT_EQ(p.y, Complex{});
}

TEST(EvalF, ParabolicOrbitDecaysLikeOneOverN) {
    const auto r = iterate(PolyMap2::default_family(), 0.0, {-0.1, 0.0}, 10000, 10.0);
    ASSERT_FALSE(r.escaped_at_all());
    EXPECT_LT(std::abs(10000.0 * r.point.x + 1.0), 0.05);
}

TEST(EvalFInverse, FixedPoint) {
    const auto z = eval_F_inverse(PolyMap2::default_family(), 0.0, {});
    EXPECT_EQ(z, (ComplexPoint{}));
}

TEST(EvalFInverse, Roundtrip) {
    const auto m = PolyMap2::default_family();
    const ComplexPoint p{-0.05, 0.001};
    const auto z = eval_F_inverse(m, 0.01, eval_F(m, 0.01, p));
    EXPECT_LT(distance(z, p), 1e-12);
}

TEST(EvalFInverse, ThirdOrderExpansion) {
    // Inverse of x + x^2 (1 + (q+1) x + ...) is x - x^2 + (1 - q) x^3 + O(x^4).
    for (double q : {0.0, 0.5, -1.0}) {
        const auto m = PolyMap2::default_family().with_q(q);
        const double x = -0.02;
        const auto z = eval_F_inverse(m, 0.0, {x, 0.0});
        const double expect = x - x * x + (1.0 - q) * x * x * x;
        // remainder is O(x^4); a wrong cubic sign would miss by ~2 x^3
        EXPECT_NEAR(z.x.real(), expect, 10.0 * x * x * x * x) << "q = " << q;
        EXPECT_EQ(z.y, Complex{});
    }
}

TEST(EvalFInverse, RejectsPointsOutsideTheBall) {
    const auto m = PolyMap2::default_family();
    try {
        eval_F_inverse(m, 0.0, {0.6, 0.0});
        FAIL() << "expected OutsideInvertibleRegion";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutsideInvertibleRegion);
    }
}

TEST(EvalH, FixedPoint) { EXPECT_EQ(eval_H(PolyMap2::default_family(), 0.0, {}), (ComplexPoint{})); }

TEST(Iterate, ZeroStepsIsIdentity) {
    const ComplexPoint p{-0.1, 0.02};
    const auto r = iterate(PolyMap2::default_family(), 0.0, p, 0, 10.0);
    EXPECT_EQ(r.point, p);
    EXPECT_FALSE(r.escaped_at_all());
}

TEST(Iterate, AlreadyOutside) {
    const auto r = iterate(PolyMap2::default_family(), 0.0, {10.0, 0.0}, 50, 5.0);
    ASSERT_TRUE(r.escaped_at_all());
    EXPECT_EQ(*r.escaped, 0u);
}

TEST(Iterate, TraceHoldsTheOrbit) {
    const auto m = PolyMap2::default_family();
    const ComplexPoint p{-0.1, 0.01};
    const auto r = iterate(m, 0.0, p, 3, 10.0, true);
    ASSERT_EQ(r.trace.size(), 4u);
    EXPECT_EQ(r.trace[1], eval_F(m, 0.0, p));
    EXPECT_EQ(r.trace[3], r.point);
}

TEST(CharacteristicDirections, QuadraticPartOfTheFamily) {
    const HomogeneousPair pq{{1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}};
    const auto dirs = characteristic_directions(pq);
    bool horizontal = false, vertical = false;
    for (const auto& d : dirs) {
        if (d.at_infinity) {
            vertical = true;
            EXPECT_TRUE(d.degenerate);
        } else {
            EXPECT_EQ(d.u, Complex{});
            EXPECT_FALSE(d.degenerate);
            horizontal = true;
        }
    }
    EXPECT_TRUE(horizontal);
    EXPECT_TRUE(vertical);
}

TEST(CharacteristicDirections, DiagonalDirection) {
    // P = Q = x^2: r(u) = 1 - u.
    const HomogeneousPair pq{{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    const auto dirs = characteristic_directions(pq);
    bool found = false;
    for (const auto& d : dirs)
        if (!d.at_infinity && std::abs(d.u - 1.0) < 1e-12) {
            found = true;
            EXPECT_FALSE(d.degenerate);
        }
    EXPECT_TRUE(found);
}

TEST(CharacteristicDirections, ZeroPIsRejected) {
    const HomogeneousPair pq{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    EXPECT_THROW(characteristic_directions(pq), Error);
}

TEST(Director, HorizontalDirection) {
    const HomogeneousPair pq{{1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}};
    EXPECT_NEAR(std::abs(director(pq, 0.0) - 1.0), 0.0, 1e-15);
}

TEST(Director, DiagonalDirection) {
    const HomogeneousPair pq{{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    EXPECT_NEAR(std::abs(director(pq, 1.0) + 1.0), 0.0, 1e-15);
}

TEST(Director, DegenerateDirectionThrows) {
    // P = xy vanishes on [1:0].
    const HomogeneousPair pq{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    try {
        director(pq, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateDirection);
    }
}

TEST(Regularity, DefaultFamilyIsRegular) {
    const auto reg = check_regularity(PolyMap2::default_family(), 0.0);
    EXPECT_TRUE(reg.regular);
    EXPECT_EQ(reg.degree, 4);
}

TEST(Regularity, BareMapHasMismatchedDegrees) {
    const auto top = top_forms(bare_map(), 0.0);
    EXPECT_EQ(top.degree_x, 3);
    EXPECT_EQ(top.degree_y, 2);
    EXPECT_FALSE(check_regularity(bare_map(), 0.0).regular);
}

TEST(Regularity, SharedFactorAtDegreeTwo) {
    // (x + x^2, y + 2xy): top forms x^2 and 2xy share the factor x.
    PolyMap2 m = bare_map();
    m.q = -1.0;
    m.r = 0.0;
    const auto reg = check_regularity(m, 0.0);
    EXPECT_EQ(reg.degree, 2);
    EXPECT_FALSE(reg.regular);
}

TEST(Resultant, CommonRootVanishes) {
    // (u - 1)(u - 2) and (u - 1)(u + 3)
    EXPECT_NEAR(std::abs(sylvester_resultant({2.0, -3.0, 1.0}, {-3.0, 2.0, 1.0})), 0.0, 1e-12);
    // u - 1 and u + 1: resultant is (-1) - (1) up to sign
    EXPECT_NEAR(std::abs(sylvester_resultant({-1.0, 1.0}, {1.0, 1.0})), 2.0, 1e-12);
}

TEST(Validate, RejectsRhoAtMostOne) {
    PolyMap2 m = PolyMap2::default_family();
    m.rho = 1.0;
    EXPECT_THROW(m.validate(), Error);
    m.rho = 2.0;
    m.alpha_extra.push_back({1, 0, 1.0});
    EXPECT_THROW(m.validate(), Error);
}

TEST(MapProperty, TangentToTheIdentity) {
    const auto m = PolyMap2::default_family();
    // Difference quotients deviate from the identity by O(h).
    const double h = 1e-8;
    const ComplexPoint ex{h, 0.0}, ey{0.0, h};
    const auto fx = eval_F(m, 0.0, ex), fy = eval_F(m, 0.0, ey);
    EXPECT_LT(std::abs(fx.x / h - 1.0), 3.0 * h);
    EXPECT_LT(std::abs(fx.y / h), 3.0 * h);
    EXPECT_LT(std::abs(fy.x / h), 3.0 * h);
    EXPECT_LT(std::abs(fy.y / h - 1.0), 3.0 * h);
}

TEST(MapProperty, AxesAreInvariant) {
    const auto m = PolyMap2::default_family();
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        const auto p = random_point(rng, 0.4);
        EXPECT_EQ(eval_F(m, 0.0, {p.x, 0.0}).y, Complex{});
        EXPECT_EQ(eval_F(m, 0.0, {0.0, p.y}).x, Complex{});
    }
}

TEST(MapProperty, InverseRoundtripOnTheBall) {
    const auto m = PolyMap2::default_family();
    std::mt19937_64 rng(5);
    for (int k = 0; k < 500; ++k) {
        const auto p = random_point(rng, 0.1);
        const Complex eps = k % 2 ? Complex{0.02, 0.0} : Complex{};
        const auto z = eval_F_inverse(m, eps, eval_F(m, eps, p), 1e-14);
        EXPECT_LT(distance(z, p), 1e-12);
    }
}

TEST(MapProperty, ConjugateFamilyUndoesF) {
    const auto m = PolyMap2::default_family();
    std::mt19937_64 rng(7);
    for (int k = 0; k < 500; ++k) {
        const auto p = random_point(rng, 0.1);
        const Complex eps{0.01 * (k % 5), 0.0};
        const auto back = sigma(eval_H(m, eps, sigma(eval_F(m, eps, p))));
        EXPECT_LT(distance(back, p), 1e-9);
    }
}

TEST(MapProperty, HorizontalDirectorIsRhoMinusOne) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(1.01, 6.0);
    for (int k = 0; k < 50; ++k) {
        PolyMap2 m = PolyMap2::default_family();
        m.rho = u(rng);
        m.q = Complex{u(rng) - 3.0, u(rng) - 3.0};
        EXPECT_EQ(director(quadratic_part(m), 0.0), Complex(m.rho - 1.0));
    }
}
