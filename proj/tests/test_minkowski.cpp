#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hgfs/minkowski.hpp"
#include "oracles.hpp"

using namespace hgfs;

namespace {
const Vec4 e1 = Vec4::basis(0), e2 = Vec4::basis(1), e3 = Vec4::basis(2), e4 = Vec4::basis(3);
}

TEST(Minkowski, DotOfBasisVectors) {
    EXPECT_EQ(dot4(e1, e1), -1.0);
    EXPECT_EQ(dot4(e1, e2), 0.0);
    EXPECT_EQ(dot4(e3, e3), 1.0);
    EXPECT_EQ(dot4(Vec4(2, 1, 0, 0), Vec4(2, 1, 0, 0)), -3.0);
}

TEST(Minkowski, DotIsSymmetricAndBilinear) {
    oracle::Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        const Vec4 a = rng.vec4(), b = rng.vec4(), c = rng.vec4();
        const double s = rng.uniform(-3, 3);
        EXPECT_NEAR(dot4(a, b), dot4(b, a), 1e-15);
        EXPECT_NEAR(dot4(s * a + c, b), s * dot4(a, b) + dot4(c, b), 1e-13);
    }
}

TEST(Minkowski, ConstructorRejectsNonFinite) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_THROW(Vec4(nan, 0, 0, 0), std::domain_error);
    EXPECT_THROW(Vec4(0, 0, inf, 0), std::domain_error);
    EXPECT_THROW(Vec3(0, -inf, 0), std::domain_error);
}

TEST(Minkowski, TripleWedgeOfSpatialBasisIsMinusE1) {
    const Vec4 w = wedge3(e2, e3, e4);
    EXPECT_LT(max_abs_diff(w, -e1), 1e-15);
    EXPECT_NEAR(dot4(e1, w), oracle::det4(e1, e2, e3, e4), 1e-15);
}

TEST(Minkowski, TripleWedgeIsAlternating) {
    oracle::Rng rng(12);
    for (int k = 0; k < 100; ++k) {
        const Vec4 a = rng.vec4(), b = rng.vec4();
        EXPECT_LE(max_abs(wedge3(a, a, b)), 1e-14);
        EXPECT_LE(max_abs(wedge3(a, b, a)), 1e-14);
        EXPECT_LE(max_abs(wedge3(b, a, a)), 1e-14);
        EXPECT_LE(max_abs_diff(wedge3(a, b, e3), -wedge3(b, a, e3)), 1e-14);
    }
}

TEST(Minkowski, TripleWedgeIsOrthogonalToItsArguments) {
    oracle::Rng rng(13);
    for (int k = 0; k < 200; ++k) {
        const Vec4 a = rng.vec4(), b = rng.vec4(), c = rng.vec4();
        const Vec4 w = wedge3(a, b, c);
        EXPECT_NEAR(dot4(a, w), 0.0, 1e-14);
        EXPECT_NEAR(dot4(b, w), 0.0, 1e-14);
        EXPECT_NEAR(dot4(c, w), 0.0, 1e-14);
    }
}

TEST(Minkowski, DeterminantsMatchPermutationSum) {
    oracle::Rng rng(14);
    for (int k = 0; k < 200; ++k) {
        const Vec4 a = rng.vec4(), b = rng.vec4(), c = rng.vec4(), d = rng.vec4();
        EXPECT_NEAR(det4(a, b, c, d), oracle::det4(a, b, c, d), 1e-13);
        const Vec3 p = rng.vec3(), q = rng.vec3(), r = rng.vec3();
        EXPECT_NEAR(det3(p, q, r), oracle::det3(p, q, r), 1e-14);
    }
}

TEST(Minkowski, PairWedgeInR31) {
    const Vec3 f1 = Vec3::basis(0), f2 = Vec3::basis(1), f3 = Vec3::basis(2);
    EXPECT_LT(max_abs_diff(wedge2_r31(f2, f3), -f1), 1e-15);
    EXPECT_NEAR(dot_r31(f1, wedge2_r31(f2, f3)), oracle::det3(f1, f2, f3), 1e-15);
    oracle::Rng rng(15);
    for (int k = 0; k < 200; ++k) {
        const Vec3 a = rng.vec3(), b = rng.vec3(), x = rng.vec3();
        EXPECT_LE(max_abs(wedge2_r31(a, a)), 1e-15);
        EXPECT_NEAR(dot_r31(a, wedge2_r31(a, b)), 0.0, 1e-14);
        EXPECT_NEAR(dot_r31(x, wedge2_r31(a, b)), oracle::det3(x, a, b), 1e-13);
    }
}

TEST(Minkowski, EuclideanProducts) {
    const Vec3 f1 = Vec3::basis(0), f2 = Vec3::basis(1), f3 = Vec3::basis(2);
    EXPECT_LT(max_abs_diff(cross(f1, f2), f3), 1e-15);
    EXPECT_EQ(dot(f1, f1), 1.0);
    const Vec3 a(0.3, -1.2, 2.5);
    EXPECT_EQ(max_abs(cross(a, a)), 0.0);
    EXPECT_NEAR(norm(Vec3(3, 4, 12)), 13.0, 1e-15);
}

TEST(Minkowski, CausalCharacter) {
    EXPECT_EQ(causal_character(e1), Causal::timelike);
    EXPECT_EQ(causal_character(e2), Causal::spacelike);
    EXPECT_EQ(causal_character(Vec4(1, 1, 0, 0)), Causal::lightlike);
    EXPECT_EQ(causal_character(Vec4::zero()), Causal::lightlike);
    EXPECT_EQ(causal_character_r31(Vec3(1, 0, 0)), Causal::timelike);
    EXPECT_EQ(causal_character_r31(Vec3(0, 0, 2)), Causal::spacelike);
    EXPECT_EQ(causal_character_r31(Vec3(1, 0.6, 0.8)), Causal::lightlike);
    EXPECT_EQ(to_string(Causal::spacelike), "spacelike");
}

TEST(Minkowski, PseudoNorm) {
    EXPECT_NEAR(pseudo_norm(Vec4(2, 1, 0, 0)), std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(pseudo_norm_r31(Vec3(0, 3, 4)), 5.0, 1e-15);
}

TEST(Minkowski, PseudoOrthonormalQuadrupleHasLorentzGram) {
    oracle::Rng rng(16);
    for (int k = 0; k < 50; ++k) {
        // Boost e1 to a random hyperboloid point and complete with wedges.
        const Vec4 x = rng.h3_point();
        Vec4 n1 = rng.vec4();
        n1 = n1 + dot4(n1, x) * x;
        n1 = n1 / pseudo_norm(n1);
        Vec4 n2 = rng.vec4();
        n2 = n2 + dot4(n2, x) * x - dot4(n2, n1) * n1;
        n2 = n2 / pseudo_norm(n2);
        const Vec4 n3 = wedge3(x, n1, n2);
        const Vec4 f[4] = {x, n1, n2, n3};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const double expected = (i == j) ? (i == 0 ? -1.0 : 1.0) : 0.0;
                EXPECT_NEAR(dot4(f[i], f[j]), expected, 1e-10);
            }
    }
}
