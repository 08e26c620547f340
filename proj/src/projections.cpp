#include "hgfs/projections.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hgfs {

namespace {

Vec3 spatial(const Vec4& x) { return {x[1], x[2], x[3]}; }

std::string point_text(double u, double v) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << u << ", " << v << ")";
    return os.str();
}

Vec3 disc_value(const Vec4& x) { return spatial(x) / (x[0] + 1.0); }

Vec3 disc_derivative(const Vec4& x, const Vec4& dx) {
    const double s = x[0] + 1.0;
    return spatial(dx) / s - spatial(x) * (dx[0] / (s * s));
}

Vec4 ball_derivative(const Vec3& p, const Vec3& dp) {
    const double r2 = dot(p, p);
    const double d = 1.0 - r2;
    const double dr2 = 2.0 * dot(p, dp);
    const Vec3 sp = (2.0 / d) * dp + p * (2.0 * dr2 / (d * d));
    return {2.0 * dr2 / (d * d), sp[0], sp[1], sp[2]};
}

Vec3 normalized(const Vec3& a, const char* what) {
    const double n = norm(a);
    if (!(n > 0.0))
        throw ProjectionError(ProjectionError::Kind::normalization_degenerate,
                              std::string(what) + " has zero length");
    return a / n;
}

Vec4 pseudo_normalized(const Vec4& a, const char* what) {
    const double n2 = dot4(a, a);
    if (!(n2 > 0.0))
        throw ProjectionError(ProjectionError::Kind::normalization_degenerate,
                              std::string(what) + " is not spacelike");
    return a / std::sqrt(n2);
}

double lift_radicand(const Vec3& x) { return -1.0 + x[0] * x[0] - x[1] * x[1] - x[2] * x[2]; }

}  // namespace

Vec3 to_poincare(const Vec4& x, double tol) {
    if (std::abs(dot4(x, x) + 1.0) > tol)
        throw ProjectionError(ProjectionError::Kind::off_h3, "point is not on H^3");
    if (!(x[0] > 0.0))
        throw ProjectionError(ProjectionError::Kind::wrong_branch,
                              "point is on the lower sheet of the hyperboloid");
    return disc_value(x);
}

Vec4 from_poincare(const Vec3& p) {
    const double r2 = dot(p, p);
    if (!(r2 < 1.0))
        throw ProjectionError(ProjectionError::Kind::outside_ball,
                              "point is on or outside the unit sphere");
    const double d = 1.0 - r2;
    return {(1.0 + r2) / d, 2.0 * p[0] / d, 2.0 * p[1] / d, 2.0 * p[2] / d};
}

std::array<Vec3, 2> disc_frame_numerators(const Vec4& x, const Vec4& y, const Vec4& z) {
    auto one = [&x](const Vec4& w) {
        return Vec3{x[1] * w[0] - x[0] * w[1] - w[1], x[2] * w[0] - x[0] * w[2] - w[2],
                    x[3] * w[0] - x[0] * w[3] - w[3]};
    };
    return {one(y), one(z)};
}

DiscFrameCheck check_disc_frame(const DiscFramedSurface& d, double u, double v) {
    const Jet1<Vec3> j = d.x.first(u, v);
    const Vec3 n1 = d.nu1(u, v);
    const Vec3 n2 = d.nu2(u, v);
    const Vec3 w = cross(j.xu, j.xv);
    DiscFrameCheck c;
    c.radius = norm(j.x);
    c.unit = std::max(std::abs(norm(n1) - 1.0), std::abs(norm(n2) - 1.0));
    c.orthogonality = std::abs(dot(n1, n2));
    c.off_span = std::abs(dot(w, cross(n1, n2)));
    c.alpha = dot(w, n1);
    c.beta = dot(w, n2);
    return c;
}

DiscFramedSurface transport_to_disc(const FramedSurface& fs) {
    const ParametricMap4 x = fs.x;
    const ParametricMap4 n1 = fs.nu1;
    const ParametricMap4 n2 = fs.nu2;
    DiscFramedSurface d;
    d.x = ParametricMap3::closed_form(
        [x](double u, double v) { return disc_value(x(u, v)); },
        [x](double u, double v) {
            const Jet1x4 j = x.first(u, v);
            return disc_derivative(j.x, j.xu);
        },
        [x](double u, double v) {
            const Jet1x4 j = x.first(u, v);
            return disc_derivative(j.x, j.xv);
        },
        x.steps(), x.bounds());
    auto frame_vector = [x, n1, n2](int which) {
        return [x, n1, n2, which](double u, double v) {
            const auto pq = disc_frame_numerators(x(u, v), n1(u, v), n2(u, v));
            return normalized(pq[which], "disc frame vector");
        };
    };
    d.nu1 = ParametricMap3::finite_difference(frame_vector(0), x.steps(), x.bounds());
    d.nu2 = ParametricMap3::finite_difference(frame_vector(1), x.steps(), x.bounds());
    d.domain = fs.domain;
    d.name = fs.name;
    return d;
}

std::array<Vec4, 2> h3_frame_numerators(const Vec3& x, const Vec3& y, const Vec3& z) {
    const double a = x[0], b = x[1], c = x[2];
    auto one = [&](const Vec3& w) {
        return Vec4{2.0 * (a * w[0] + b * w[1] + c * w[2]),
                    (1 + a * a - b * b - c * c) * w[0] + 2 * a * b * w[1] + 2 * a * c * w[2],
                    2 * a * b * w[0] + (1 - a * a + b * b - c * c) * w[1] + 2 * b * c * w[2],
                    2 * a * c * w[0] + 2 * b * c * w[1] + (1 - a * a - b * b + c * c) * w[2]};
    };
    return {one(y), one(z)};
}

FramedSurface transport_to_h3(const DiscFramedSurface& d) {
    const ParametricMap3 x = d.x;
    const ParametricMap3 n1 = d.nu1;
    const ParametricMap3 n2 = d.nu2;
    FramedSurface fs;
    fs.x = ParametricMap4::closed_form(
        [x](double u, double v) { return from_poincare(x(u, v)); },
        [x](double u, double v) {
            const Jet1<Vec3> j = x.first(u, v);
            return ball_derivative(j.x, j.xu);
        },
        [x](double u, double v) {
            const Jet1<Vec3> j = x.first(u, v);
            return ball_derivative(j.x, j.xv);
        },
        x.steps(), x.bounds());
    auto frame_vector = [x, n1, n2](int which) {
        return [x, n1, n2, which](double u, double v) {
            const auto pq = h3_frame_numerators(x(u, v), n1(u, v), n2(u, v));
            return pseudo_normalized(pq[which], "H^3 frame vector");
        };
    };
    fs.nu1 = ParametricMap4::finite_difference(frame_vector(0), x.steps(), x.bounds());
    fs.nu2 = ParametricMap4::finite_difference(frame_vector(1), x.steps(), x.bounds());
    fs.domain = d.domain;
    fs.name = d.name;
    return fs;
}

std::string to_string(Axis a) {
    switch (a) {
        case Axis::x2: return "x2";
        case Axis::x3: return "x3";
        case Axis::x4: return "x4";
    }
    return "unknown";
}

Axis parse_axis(const std::string& s) {
    if (s == "x2" || s == "2" || s == "drop_x2") return Axis::x2;
    if (s == "x3" || s == "3" || s == "drop_x3") return Axis::x3;
    if (s == "x4" || s == "4" || s == "drop_x4") return Axis::x4;
    throw std::invalid_argument("axis must be one of x2, x3, x4");
}

Vec3 drop_axis(const Vec4& x, Axis a) {
    const std::size_t k = static_cast<std::size_t>(a);
    std::array<double, 3> out{};
    std::size_t n = 0;
    for (std::size_t i = 0; i < 4; ++i)
        if (i != k) out[n++] = x[i];
    return {out[0], out[1], out[2]};
}

Vec4 insert_axis(const Vec3& x, double value, Axis a) {
    const std::size_t k = static_cast<std::size_t>(a);
    std::array<double, 4> out{};
    std::size_t n = 0;
    for (std::size_t i = 0; i < 4; ++i) out[i] = (i == k) ? value : x[n++];
    return {out[0], out[1], out[2], out[3]};
}

std::vector<bool> spacelike_mask(const FramedSurface& fs, Axis axis, const Domain& grid,
                                 double tol) {
    grid.validate();
    std::vector<bool> mask(grid.size());
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) {
            const double u = grid.u_at(i), v = grid.v_at(j);
            const Vec4 n3 = wedge3(fs.x(u, v), fs.nu1(u, v), fs.nu2(u, v));
            mask[static_cast<std::size_t>(j) * grid.nu + i] =
                causal_character_r31(drop_axis(n3, axis), tol) == Causal::spacelike;
        }
    return mask;
}

LightconeCandidate project_to_r31(const FramedSurface& fs, Axis axis, const Domain& grid,
                                  double tol) {
    grid.validate();
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) {
            const double u = grid.u_at(i), v = grid.v_at(j);
            const Vec3 w = drop_axis(wedge3(fs.x(u, v), fs.nu1(u, v), fs.nu2(u, v)), axis);
            const Causal c = causal_character_r31(w, tol);
            if (c != Causal::spacelike)
                throw ProjectionError(ProjectionError::Kind::nonspacelike_projected_normal,
                                      "projected nu3 is " + to_string(c) + " at " +
                                          point_text(u, v));
        }
    const ParametricMap4 x = fs.x, n1 = fs.nu1, n2 = fs.nu2;
    LightconeCandidate c;
    c.x = ParametricMap3::closed_form(
        [x, axis](double u, double v) { return drop_axis(x(u, v), axis); },
        [x, axis](double u, double v) { return drop_axis(x.first(u, v).xu, axis); },
        [x, axis](double u, double v) { return drop_axis(x.first(u, v).xv, axis); },
        x.steps(), x.bounds());
    c.t = ParametricMap3::finite_difference(
        [x, n1, n2, axis](double u, double v) {
            const Vec3 w = drop_axis(wedge3(x(u, v), n1(u, v), n2(u, v)), axis);
            return w / pseudo_norm_r31(w);
        },
        x.steps(), x.bounds());
    c.domain = grid;
    c.axis = axis;
    return c;
}

double lightcone_residual(const LightconeCandidate& c, const Domain& grid) {
    double worst = 0.0;
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) {
            const double u = grid.u_at(i), v = grid.v_at(j);
            const Jet1<Vec3> jx = c.x.first(u, v);
            worst = std::max(worst, std::abs(dot_r31(wedge2_r31(jx.xu, jx.xv), c.t(u, v))));
        }
    return worst;
}

std::array<Vec3, 2> lightcone_frame_from_t(const Vec3& t) {
    if (causal_character_r31(t) != Causal::spacelike)
        throw ProjectionError(ProjectionError::Kind::precondition_violated,
                              "t must be spacelike");
    const Vec3 tu = t / pseudo_norm_r31(t);
    const Vec3 e0 = Vec3::basis(0);
    const Vec3 n0 = e0 - dot_r31(e0, tu) * tu;
    const Vec3 n = n0 / std::sqrt(-dot_r31(n0, n0));
    const Vec3 s0 = wedge2_r31(tu, n);
    const Vec3 s = s0 / pseudo_norm_r31(s0);
    return {n + s, n - s};
}

LiftedSurface lift_from_r31(const ParametricMap3& xt, Axis axis, const Domain& grid,
                            const std::optional<LightconePair>& frame, double tol) {
    grid.validate();
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i)
            worst = std::min(worst, lift_radicand(xt(grid.u_at(i), grid.v_at(j))));
    if (!(worst > tol)) {
        std::ostringstream os;
        os.precision(17);
        os << "x1^2 - x2^2 - x3^2 must exceed 1 on the grid; min of x1^2 - x2^2 - x3^2 - 1 is "
           << worst;
        throw ProjectionError(ProjectionError::Kind::precondition_violated, os.str());
    }
    auto lifted_height = [](const Vec3& p) { return std::sqrt(std::max(lift_radicand(p), 0.0)); };
    auto lifted_derivative = [axis, lifted_height](const Vec3& p, const Vec3& dp) {
        const double h = lifted_height(p);
        const double dh = (p[0] * dp[0] - p[1] * dp[1] - p[2] * dp[2]) / h;
        return insert_axis(dp, dh, axis);
    };
    LiftedSurface l;
    l.x = ParametricMap4::closed_form(
        [xt, axis, lifted_height](double u, double v) {
            const Vec3 p = xt(u, v);
            return insert_axis(p, lifted_height(p), axis);
        },
        [xt, lifted_derivative](double u, double v) {
            const Jet1<Vec3> j = xt.first(u, v);
            return lifted_derivative(j.x, j.xu);
        },
        [xt, lifted_derivative](double u, double v) {
            const Jet1<Vec3> j = xt.first(u, v);
            return lifted_derivative(j.x, j.xv);
        },
        xt.steps(), xt.bounds());
    if (frame) {
        const LightconePair lp = *frame;
        l.nu = ParametricMap4::finite_difference(
            [xt, lp, axis, lifted_height](double u, double v) {
                const Vec3 p = xt(u, v);
                const Vec3 y = lp.plus(u, v);
                const Vec3 z = lp.minus(u, v);
                const double h = lifted_height(p);
                const double m = dot_r31(p, wedge2_r31(y, z));
                const Vec3 head{-h * (y[1] * z[2] - y[2] * z[1]), -h * (y[0] * z[2] - y[2] * z[0]),
                                h * (y[0] * z[1] - y[1] * z[0])};
                return insert_axis(head, -m, axis) / std::sqrt(4.0 * h * h + m * m);
            },
            xt.steps(), xt.bounds());
        l.from_lightcone_frame = true;
    } else {
        const ParametricMap4 x = l.x;
        l.nu = ParametricMap4::finite_difference(
            [x](double u, double v) {
                const Jet1x4 j = x.first(u, v);
                const double nu2 = dot4(j.xu, j.xu);
                if (nu2 > 1e-12) return j.xu / std::sqrt(nu2);
                const double nv2 = dot4(j.xv, j.xv);
                if (nv2 > 1e-12) return j.xv / std::sqrt(nv2);
                throw ProjectionError(ProjectionError::Kind::normalization_degenerate,
                                      "lift has vanishing differential at " + point_text(u, v));
            },
            x.steps(), x.bounds());
    }
    l.domain = grid;
    l.axis = axis;
    return l;
}

LiftCheck check_lift(const LiftedSurface& l, const Domain& grid) {
    LiftCheck c;
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) {
            const double u = grid.u_at(i), v = grid.v_at(j);
            const Jet1x4 jx = l.x.first(u, v);
            const Vec4 n = l.nu(u, v);
            c.on_h3 = std::max(c.on_h3, std::abs(dot4(jx.x, jx.x) + 1.0));
            c.nu_unit = std::max(c.nu_unit, std::abs(dot4(n, n) - 1.0));
            c.nu_x = std::max(c.nu_x, std::abs(dot4(jx.x, n)));
            c.nu_wedge = std::max(c.nu_wedge, std::abs(dot4(wedge3(jx.x, jx.xu, jx.xv), n)));
        }
    return c;
}

FramedSurface framed_from_lift(const LiftedSurface& l, double tol) {
    return framed_surface_from_normal(l.x, l.nu, l.domain, tol);
}

}  // namespace hgfs
