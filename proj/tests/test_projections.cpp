#include <gtest/gtest.h>

#include <cmath>

#include "hgfs/examples.hpp"
#include "hgfs/projections.hpp"
#include "oracles.hpp"

using namespace hgfs;

namespace {

const Vec4 e1 = Vec4::basis(0), e2 = Vec4::basis(1), e3 = Vec4::basis(2), e4 = Vec4::basis(3);

template <class F>
ProjectionError::Kind kind_of(F&& f) {
    try {
        f();
    } catch (const ProjectionError& e) {
        return e.kind;
    }
    ADD_FAILURE() << "no ProjectionError raised";
    return ProjectionError::Kind::precondition_violated;
}

FramedSurface constant_frame(const Vec4& x, const Vec4& n1, const Vec4& n2) {
    FramedSurface fs;
    fs.x = ParametricMap4::finite_difference([x](double, double) { return x; });
    fs.nu1 = ParametricMap4::finite_difference([n1](double, double) { return n1; });
    fs.nu2 = ParametricMap4::finite_difference([n2](double, double) { return n2; });
    fs.domain = Domain{-1, 1, -1, 1, 3, 3};
    return fs;
}

// x~ = (sqrt(2 + u^2 + v^2), u, v), so x1^2 - x2^2 - x3^2 = 2.
ParametricMap3 hyperbolic_sheet() {
    return ParametricMap3::closed_form(
        [](double u, double v) { return Vec3(std::sqrt(2 + u * u + v * v), u, v); },
        [](double u, double v) { return Vec3(u / std::sqrt(2 + u * u + v * v), 1, 0); },
        [](double u, double v) { return Vec3(v / std::sqrt(2 + u * u + v * v), 0, 1); });
}

}  // namespace

TEST(Projections, ToPoincareExamples) {
    EXPECT_LT(max_abs(to_poincare(e1)), 1e-15);
    const Vec4 x(std::sqrt(2.0), 1, 0, 0);
    ASSERT_NEAR(dot4(x, x), -1.0, 1e-15);
    EXPECT_LT(max_abs_diff(to_poincare(x), Vec3(1 / (std::sqrt(2.0) + 1), 0, 0)), 1e-15);
    EXPECT_NEAR(to_poincare(x)[0], 0.41421, 1e-5);
    EXPECT_EQ(kind_of([] { to_poincare(Vec4(2, 0, 0, 0)); }), ProjectionError::Kind::off_h3);
    EXPECT_EQ(kind_of([] { to_poincare(Vec4(-1, 0, 0, 0)); }), ProjectionError::Kind::wrong_branch);
}

TEST(Projections, FromPoincareExamples) {
    EXPECT_LT(max_abs_diff(from_poincare(Vec3(0, 0, 0)), e1), 1e-15);
    const Vec4 x = from_poincare(Vec3(0.5, 0, 0));
    EXPECT_LT(max_abs_diff(x, Vec4(5.0 / 3, 4.0 / 3, 0, 0)), 1e-15);
    EXPECT_NEAR(dot4(x, x), -1.0, 1e-14);
    EXPECT_EQ(kind_of([] { from_poincare(Vec3(1, 0, 0)); }), ProjectionError::Kind::outside_ball);
    EXPECT_EQ(kind_of([] { from_poincare(Vec3(0.8, 0.8, 0)); }), ProjectionError::Kind::outside_ball);
}

TEST(Projections, PointRoundTrips) {
    oracle::Rng rng(41);
    double worst_h3 = 0.0, worst_ball = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const Vec4 x = rng.h3_point(2.0);
        worst_h3 = std::max(worst_h3, max_abs_diff(from_poincare(to_poincare(x)), x));
        const Vec3 p = rng.ball_point(0.9);
        worst_ball = std::max(worst_ball, max_abs_diff(to_poincare(from_poincare(p)), p));
        EXPECT_LT(norm(to_poincare(x)), 1.0);
    }
    EXPECT_LT(worst_h3, 1e-12);
    EXPECT_LT(worst_ball, 1e-14);
}

TEST(Projections, DiscTransportOfCrossCapIsFramed) {
    const FramedSurface fs = get_example("cross_cap").surface;
    const DiscFramedSurface d = transport_to_disc(fs);
    const Domain g{-0.9, 0.9, -0.9, 0.9, 21, 21};
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const DiscFrameCheck c = check_disc_frame(d, g.u_at(i), g.v_at(j));
            EXPECT_LT(c.radius, 1.0);
            EXPECT_LT(c.unit, 1e-12);
            EXPECT_LT(c.orthogonality, 1e-12);
            EXPECT_LT(c.off_span, 1e-8);
        }
}

TEST(Projections, DiscAlphaBetaAreScaledByPositiveFactor) {
    for (const char* name : {"cross_cap", "ruled_A", "corank_one"}) {
        const FramedSurface fs = get_example(name).surface;
        const DiscFramedSurface d = transport_to_disc(fs);
        oracle::Rng rng(42);
        for (int k = 0; k < 50; ++k) {
            const double u = rng.uniform(-0.8, 0.8), v = rng.uniform(-0.8, 0.8);
            const Invariants inv = invariants_at(fs, u, v);
            if (inv.alpha() * inv.alpha() + inv.beta() * inv.beta() <= 1e-6) continue;
            const FrameAt f = frame_at(fs, u, v);
            const auto num = disc_frame_numerators(f.x, f.nu1, f.nu2);
            const double s = std::pow(f.x[0] + 1.0, 3);
            const DiscFrameCheck c = check_disc_frame(d, u, v);
            const double scale = std::hypot(inv.alpha(), inv.beta());
            EXPECT_NEAR(c.alpha, inv.alpha() * norm(num[0]) / s, 1e-6 * scale) << name;
            EXPECT_NEAR(c.beta, inv.beta() * norm(num[1]) / s, 1e-6 * scale) << name;
        }
    }
}

TEST(Projections, DiscFrameAtVertex) {
    const auto num = disc_frame_numerators(e1, e2, e3);
    const Vec3 n1 = num[0] / norm(num[0]);
    const Vec3 n2 = num[1] / norm(num[1]);
    EXPECT_NEAR(std::abs(n1[0]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(n2[1]), 1.0, 1e-15);
    EXPECT_NEAR(dot(n1, n2), 0.0, 1e-15);
}

TEST(Projections, DiscRoundTripPreservesBaseAndNormalLine) {
    const FramedSurface fs = get_example("cross_cap").surface;
    const DiscFramedSurface d = transport_to_disc(fs);
    const FramedSurface back = transport_to_h3(d);
    const DiscFramedSurface again = transport_to_disc(back);
    oracle::Rng rng(43);
    for (int k = 0; k < 100; ++k) {
        const double u = rng.uniform(-0.8, 0.8), v = rng.uniform(-0.8, 0.8);
        EXPECT_LT(max_abs_diff(again.x(u, v), d.x(u, v)), 1e-10);
        EXPECT_LT(max_abs_diff(back.x(u, v), fs.x(u, v)), 1e-10);
        const FrameAt a = frame_at(fs, u, v);
        const FrameAt b = frame_at(back, u, v);
        EXPECT_NEAR(std::abs(dot4(a.nu3, b.nu3)), 1.0, 1e-8);
        // The frame plane is the same: both vectors of b lie in span(a.nu1, a.nu2).
        for (const Vec4& n : {b.nu1, b.nu2}) {
            const Vec4 in_plane = dot4(n, a.nu1) * a.nu1 + dot4(n, a.nu2) * a.nu2;
            EXPECT_LT(max_abs_diff(n, in_plane), 1e-8);
        }
    }
}

TEST(Projections, FlatDiscPatchTransportsToFramedSurface) {
    DiscFramedSurface d;
    d.x = ParametricMap3::closed_form([](double u, double v) { return Vec3(u, v, 0); },
                                      [](double, double) { return Vec3(1, 0, 0); },
                                      [](double, double) { return Vec3(0, 1, 0); });
    d.nu1 = ParametricMap3::finite_difference([](double, double) { return Vec3(0, 0, 1); });
    d.nu2 = ParametricMap3::finite_difference([](double, double) { return Vec3(1, 0, 0); });
    d.domain = Domain{-0.3, 0.3, -0.3, 0.3, 7, 7};
    const FramedSurface fs = transport_to_h3(d);
    for (int j = 0; j < d.domain.nv; ++j)
        for (int i = 0; i < d.domain.nu; ++i) {
            const double u = d.domain.u_at(i), v = d.domain.v_at(j);
            const FrameAt f = frame_at(fs, u, v);
            EXPECT_NEAR(dot4(f.x, f.nu1), 0.0, 1e-12);
            EXPECT_NEAR(dot4(f.x, f.nu2), 0.0, 1e-12);
            EXPECT_NEAR(dot4(f.nu1, f.nu1), 1.0, 1e-12);
        }
    const FramedResidualSummary r = verify_framed(fs, d.domain);
    EXPECT_LT(r.off_span, 1e-8);
    EXPECT_LT(r.gram, 1e-10);
}

TEST(Projections, AxisHelpers) {
    EXPECT_EQ(parse_axis("x2"), Axis::x2);
    EXPECT_EQ(parse_axis("drop_x3"), Axis::x3);
    EXPECT_EQ(parse_axis("4"), Axis::x4);
    EXPECT_THROW(parse_axis("x1"), std::invalid_argument);
    EXPECT_EQ(to_string(Axis::x3), "x3");
    const Vec4 x(1, 2, 3, 4);
    EXPECT_EQ(max_abs_diff(drop_axis(x, Axis::x2), Vec3(1, 3, 4)), 0.0);
    EXPECT_EQ(max_abs_diff(drop_axis(x, Axis::x4), Vec3(1, 2, 3)), 0.0);
    for (Axis a : {Axis::x2, Axis::x3, Axis::x4})
        EXPECT_EQ(max_abs_diff(insert_axis(drop_axis(x, a), x[static_cast<int>(a)], a), x), 0.0);
}

TEST(Projections, CrossCapProjectionResidual) {
    const FramedSurface fs = get_example("cross_cap").surface;
    const Domain g{-0.5, 0.5, -0.5, 0.5, 21, 21};
    for (Axis a : {Axis::x3, Axis::x4}) {
        const LightconeCandidate c = project_to_r31(fs, a, g);
        EXPECT_LT(lightcone_residual(c, g), 1e-8) << to_string(a);
        for (double u : {-0.4, 0.0, 0.3}) {
            EXPECT_EQ(c.x(u, 0.2)[0], fs.x(u, 0.2)[0]);
            EXPECT_NEAR(dot_r31(c.t(u, 0.2), c.t(u, 0.2)), 1.0, 1e-12);
        }
    }
}

TEST(Projections, NonSpacelikeProjectedNormalIsRejected) {
    const FramedSurface fs = get_example("cross_cap").surface;
    const Domain g{-0.5, 0.5, -0.5, 0.5, 21, 21};
    const std::vector<bool> mask = spacelike_mask(fs, Axis::x2, g);
    const auto spacelike = std::count(mask.begin(), mask.end(), true);
    EXPECT_LT(spacelike, static_cast<long>(mask.size()));
    EXPECT_EQ(kind_of([&] { project_to_r31(fs, Axis::x2, g); }),
              ProjectionError::Kind::nonspacelike_projected_normal);

    // The residual identity still holds where the precondition does.
    const std::vector<bool> ok4 = spacelike_mask(fs, Axis::x4, g);
    EXPECT_EQ(std::count(ok4.begin(), ok4.end(), true), static_cast<long>(ok4.size()));
}

TEST(Projections, NormalAlongDroppedAxisIsRejected) {
    const FramedSurface fs = constant_frame(e1, e2, e3);
    const FrameAt f = frame_at(fs, 0, 0);
    ASSERT_NEAR(std::abs(f.nu3[3]), 1.0, 1e-15);
    EXPECT_EQ(kind_of([&] { project_to_r31(fs, Axis::x4, fs.domain); }),
              ProjectionError::Kind::nonspacelike_projected_normal);
}

TEST(Projections, LightconeFrameFromSpacelikeVector) {
    oracle::Rng rng(44);
    for (int k = 0; k < 200; ++k) {
        Vec3 t = rng.vec3(2.0);
        if (dot_r31(t, t) < 0.2) continue;
        t = t / std::sqrt(dot_r31(t, t));
        const auto l = lightcone_frame_from_t(t);
        EXPECT_NEAR(dot_r31(l[0], l[0]), 0.0, 1e-12);
        EXPECT_NEAR(dot_r31(l[1], l[1]), 0.0, 1e-12);
        EXPECT_NEAR(dot_r31(l[0], l[1]), -2.0, 1e-12);
        EXPECT_NEAR(dot_r31(l[0], t), 0.0, 1e-12);
        EXPECT_NEAR(dot_r31(l[1], t), 0.0, 1e-12);
    }
}

TEST(Projections, LiftOfHyperbolicSheet) {
    const ParametricMap3 xt = hyperbolic_sheet();
    const Domain g{-1, 1, -1, 1, 11, 11};
    for (Axis a : {Axis::x2, Axis::x3, Axis::x4}) {
        const LiftedSurface l = lift_from_r31(xt, a, g);
        EXPECT_FALSE(l.from_lightcone_frame);
        const LiftCheck c = check_lift(l, g);
        EXPECT_LT(c.on_h3, 1e-12);
        EXPECT_LT(c.nu_unit, 1e-10);
        EXPECT_LT(c.nu_x, 1e-10);
        EXPECT_LT(c.nu_wedge, 1e-10);
        EXPECT_GT(l.x(0.3, 0.4)[static_cast<int>(a)], 0.0);
    }
}

TEST(Projections, LiftWithLightconeFrame) {
    const ParametricMap3 xt = hyperbolic_sheet();
    auto tangent = [xt](double u, double v) {
        const Vec3 t = xt.first(u, v).xu;
        return t / std::sqrt(dot_r31(t, t));
    };
    LightconePair pair;
    pair.plus = ParametricMap3::finite_difference(
        [tangent](double u, double v) { return lightcone_frame_from_t(tangent(u, v))[0]; });
    pair.minus = ParametricMap3::finite_difference(
        [tangent](double u, double v) { return lightcone_frame_from_t(tangent(u, v))[1]; });
    const Domain g{-1, 1, -1, 1, 11, 11};
    for (Axis a : {Axis::x2, Axis::x3, Axis::x4}) {
        const LiftedSurface l = lift_from_r31(xt, a, g, pair);
        EXPECT_TRUE(l.from_lightcone_frame);
        const LiftCheck c = check_lift(l, g);
        EXPECT_LT(c.on_h3, 1e-12);
        EXPECT_LT(c.nu_unit, 1e-10);
        EXPECT_LT(c.nu_x, 1e-10);
        EXPECT_LT(c.nu_wedge, 1e-10);
        const FramedSurface fs = framed_from_lift(l);
        const FramedResidualSummary r = verify_framed(fs, Domain{-0.8, 0.8, -0.8, 0.8, 5, 5});
        EXPECT_LT(r.gram, 1e-10);
        EXPECT_LT(r.off_span, 1e-8);
    }
}

TEST(Projections, LiftAtRadicandBoundaryIsRejected) {
    const ParametricMap3 xt = ParametricMap3::finite_difference(
        [](double u, double) { return Vec3(std::cosh(u), std::sinh(u), 0); });
    EXPECT_EQ(kind_of([&] { lift_from_r31(xt, Axis::x4, Domain{-1, 1, -1, 1, 5, 5}); }),
              ProjectionError::Kind::precondition_violated);
}

TEST(Projections, ProjectThenLiftIsIdentity) {
    oracle::Rng rng(45);
    for (int k = 0; k < 1000; ++k) {
        Vec4 x = rng.h3_point();
        if (x[3] < 0) x = Vec4(x[0], x[1], x[2], -x[3]);
        const Vec3 p = drop_axis(x, Axis::x4);
        const double r = std::sqrt(-1 + p[0] * p[0] - p[1] * p[1] - p[2] * p[2]);
        EXPECT_LT(max_abs_diff(insert_axis(p, r, Axis::x4), x), 1e-12);
    }
}
