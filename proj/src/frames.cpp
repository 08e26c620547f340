#include "hgfs/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"

namespace hgfs {

namespace {

ParametricMap4 scaled_map(const ParametricMap4& m, double s) {
    return ParametricMap4::closed_form(
        [m, s](double u, double v) { return s * m(u, v); },
        [m, s](double u, double v) { return s * m.first(u, v).xu; },
        [m, s](double u, double v) { return s * m.first(u, v).xv; }, m.steps(), m.bounds());
}

std::array<double, 2> point_on_line(const LineSpec& line, double t) {
    return line.dir == Direction::v ? std::array<double, 2>{line.fixed, t}
                                    : std::array<double, 2>{t, line.fixed};
}

FrameState axpy(const FrameState& s, double h, const FrameState& d) {
    return {s.x + h * d.x, s.nu1 + h * d.nu1, s.nu2 + h * d.nu2, s.nu3 + h * d.nu3};
}

double state_gram(const FrameState& s) { return gram_residual(s.x, s.nu1, s.nu2, s.nu3); }

}  // namespace

double gram_residual(const Vec4& x, const Vec4& nu1, const Vec4& nu2, const Vec4& nu3) {
    const std::array<const Vec4*, 4> e{&x, &nu1, &nu2, &nu3};
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i; j < 4; ++j) {
            const double target = (i != j) ? 0.0 : (i == 0 ? -1.0 : 1.0);
            worst = std::max(worst, std::abs(dot4(*e[i], *e[j]) - target));
        }
    }
    return worst;
}

std::array<double, 12> Invariants::as_array() const {
    return {a1, a2, b1, b2, c1, c2, e1, e2, f1, f2, g1, g2};
}

Invariants Invariants::from_array(const std::array<double, 12>& a) {
    Invariants r;
    r.a1 = a[0], r.a2 = a[1], r.b1 = a[2], r.b2 = a[3], r.c1 = a[4], r.c2 = a[5];
    r.e1 = a[6], r.e2 = a[7], r.f1 = a[8], r.f2 = a[9], r.g1 = a[10], r.g2 = a[11];
    return r;
}

Invariants combine(double s, const Invariants& p, double t, const Invariants& q) {
    const auto pa = p.as_array();
    const auto qa = q.as_array();
    std::array<double, 12> r{};
    for (std::size_t i = 0; i < 12; ++i) r[i] = s * pa[i] + t * qa[i];
    return Invariants::from_array(r);
}

double max_abs_diff(const Invariants& p, const Invariants& q) {
    const auto pa = p.as_array();
    const auto qa = q.as_array();
    double m = 0.0;
    for (std::size_t i = 0; i < 12; ++i) m = std::max(m, std::abs(pa[i] - qa[i]));
    return m;
}

FrameAt frame_at(const FramedSurface& fs, double u, double v) {
    const Jet1x4 x = fs.x.first(u, v);
    const Jet1x4 n1 = fs.nu1.first(u, v);
    const Jet1x4 n2 = fs.nu2.first(u, v);
    FrameAt f;
    f.u = u;
    f.v = v;
    f.x = x.x, f.xu = x.xu, f.xv = x.xv;
    f.nu1 = n1.x, f.nu1u = n1.xu, f.nu1v = n1.xv;
    f.nu2 = n2.x, f.nu2u = n2.xu, f.nu2v = n2.xv;
    f.nu3 = wedge3(f.x, f.nu1, f.nu2);
    return f;
}

Invariants basic_invariants(const FrameAt& f, double frame_tol) {
    const double g = gram_residual(f.x, f.nu1, f.nu2, f.nu3);
    if (!(g <= frame_tol))
        throw DegenerateFrameError("frame is not pseudo-orthonormal at (" + std::to_string(f.u) +
                                   ", " + std::to_string(f.v) + "): residual " +
                                   std::to_string(g));
    Invariants r;
    r.a1 = dot4(f.xu, f.nu1);
    r.b1 = dot4(f.xu, f.nu2);
    r.c1 = dot4(f.xu, f.nu3);
    r.e1 = dot4(f.nu1u, f.nu2);
    r.f1 = dot4(f.nu1u, f.nu3);
    r.g1 = dot4(f.nu2u, f.nu3);
    r.a2 = dot4(f.xv, f.nu1);
    r.b2 = dot4(f.xv, f.nu2);
    r.c2 = dot4(f.xv, f.nu3);
    r.e2 = dot4(f.nu1v, f.nu2);
    r.f2 = dot4(f.nu1v, f.nu3);
    r.g2 = dot4(f.nu2v, f.nu3);
    return r;
}

Invariants invariants_at(const FramedSurface& fs, double u, double v, double frame_tol) {
    return basic_invariants(frame_at(fs, u, v), frame_tol);
}

InvariantField invariant_field(const FramedSurface& fs, double frame_tol) {
    return [fs, frame_tol](double u, double v) { return invariants_at(fs, u, v, frame_tol); };
}

std::vector<GridSample> invariant_grid(const InvariantField& field, const Domain& grid) {
    grid.validate();
    std::vector<GridSample> out(grid.size());
    detail::parallel_for(out.size(), [&](std::size_t k) {
        const int i = static_cast<int>(k % static_cast<std::size_t>(grid.nu));
        const int j = static_cast<int>(k / static_cast<std::size_t>(grid.nu));
        const double u = grid.u_at(i);
        const double v = grid.v_at(j);
        out[k] = {u, v, field(u, v)};
    });
    return out;
}

std::vector<GridSample> invariant_grid(const FramedSurface& fs, const Domain& grid) {
    return invariant_grid(invariant_field(fs), grid);
}

FramedResidualSummary verify_framed(const FramedSurface& fs, const Domain& grid, double tol) {
    grid.validate();
    struct Local {
        double gram, xc, off, ab, cons;
    };
    std::vector<Local> loc(grid.size());
    detail::parallel_for(loc.size(), [&](std::size_t k) {
        const int i = static_cast<int>(k % static_cast<std::size_t>(grid.nu));
        const int j = static_cast<int>(k / static_cast<std::size_t>(grid.nu));
        const FrameAt f = frame_at(fs, grid.u_at(i), grid.v_at(j));
        const Vec4 w = wedge3(f.x, f.xu, f.xv);
        const Invariants inv = basic_invariants(f, std::numeric_limits<double>::infinity());
        loc[k].gram = gram_residual(f.x, f.nu1, f.nu2, f.nu3);
        loc[k].xc = std::abs(dot4(w, f.x));
        loc[k].off = std::abs(dot4(w, f.nu3));
        loc[k].ab = std::max(std::abs(dot4(w, f.nu1) - inv.alpha()),
                             std::abs(dot4(w, f.nu2) - inv.beta()));
        loc[k].cons = std::abs(inv.constraint());
    });
    FramedResidualSummary s;
    double worst = -1.0;
    for (std::size_t k = 0; k < loc.size(); ++k) {
        const Local& l = loc[k];
        s.gram = std::max(s.gram, l.gram);
        s.x_component = std::max(s.x_component, l.xc);
        s.off_span = std::max(s.off_span, l.off);
        s.alpha_beta = std::max(s.alpha_beta, l.ab);
        s.constraint = std::max(s.constraint, l.cons);
        const double m = std::max({l.gram, l.xc, l.off, l.ab, l.cons});
        if (m > worst) {
            worst = m;
            s.worst_u = grid.u_at(static_cast<int>(k % static_cast<std::size_t>(grid.nu)));
            s.worst_v = grid.v_at(static_cast<int>(k / static_cast<std::size_t>(grid.nu)));
        }
    }
    s.ok = worst <= tol;
    return s;
}

double IntegrabilityResiduals::max() const {
    return *std::max_element(max_abs.begin(), max_abs.end());
}

std::array<double, 6> integrability_at(const Invariants& k, const Invariants& du,
                                       const Invariants& dv) {
    return {
        (dv.a1 - k.b1 * k.e2 - k.c1 * k.f2) - (du.a2 - k.b2 * k.e1 - k.c2 * k.f1),
        (dv.b1 + k.a1 * k.e2 - k.c1 * k.g2) - (du.b2 + k.a2 * k.e1 - k.c2 * k.g1),
        (dv.c1 + k.a1 * k.f2 + k.b1 * k.g2) - (du.c2 + k.a2 * k.f1 + k.b2 * k.g1),
        (dv.e1 - k.f1 * k.g2) - (du.e2 - k.f2 * k.g1),
        (dv.f1 + k.e1 * k.g2 + k.a1 * k.c2) - (du.f2 + k.e2 * k.g1 + k.a2 * k.c1),
        (dv.g1 - k.e1 * k.f2 + k.b1 * k.c2) - (du.g2 - k.e2 * k.f1 + k.b2 * k.c1),
    };
}

IntegrabilityResiduals integrability_residuals(const InvariantField& field, const Domain& grid,
                                               double h) {
    grid.validate();
    if (!(h > 0.0)) throw std::invalid_argument("difference step must be positive");
    IntegrabilityResiduals r;
    r.per_sample.resize(grid.size());
    detail::parallel_for(grid.size(), [&](std::size_t k) {
        const double u = grid.u_at(static_cast<int>(k % static_cast<std::size_t>(grid.nu)));
        const double v = grid.v_at(static_cast<int>(k / static_cast<std::size_t>(grid.nu)));
        const double s = 1.0 / (2.0 * h);
        const Invariants du = combine(s, field(u + h, v), -s, field(u - h, v));
        const Invariants dv = combine(s, field(u, v + h), -s, field(u, v - h));
        r.per_sample[k] = integrability_at(field(u, v), du, dv);
    });
    for (const auto& row : r.per_sample)
        for (std::size_t i = 0; i < 6; ++i) r.max_abs[i] = std::max(r.max_abs[i], std::abs(row[i]));
    return r;
}

IntegrabilityResiduals integrability_residuals(const FramedSurface& fs, const Domain& grid,
                                               double h) {
    return integrability_residuals(invariant_field(fs), grid, h);
}

Invariants reflect(const Invariants& k, Reflection r) {
    Invariants o = k;
    switch (r) {
        case Reflection::negate_nu1:
            o.a1 = -k.a1, o.c1 = -k.c1, o.e1 = -k.e1, o.g1 = -k.g1;
            o.a2 = -k.a2, o.c2 = -k.c2, o.e2 = -k.e2, o.g2 = -k.g2;
            break;
        case Reflection::negate_both:
            o.a1 = -k.a1, o.b1 = -k.b1, o.f1 = -k.f1, o.g1 = -k.g1;
            o.a2 = -k.a2, o.b2 = -k.b2, o.f2 = -k.f2, o.g2 = -k.g2;
            break;
        case Reflection::swap:
            o.a1 = k.b1, o.b1 = k.a1, o.c1 = -k.c1, o.e1 = -k.e1, o.f1 = -k.g1, o.g1 = -k.f1;
            o.a2 = k.b2, o.b2 = k.a2, o.c2 = -k.c2, o.e2 = -k.e2, o.f2 = -k.g2, o.g2 = -k.f2;
            break;
    }
    return o;
}

FramedSurface reflect_frame(const FramedSurface& fs, Reflection r) {
    FramedSurface o = fs;
    switch (r) {
        case Reflection::negate_nu1: o.nu1 = scaled_map(fs.nu1, -1.0); break;
        case Reflection::negate_both:
            o.nu1 = scaled_map(fs.nu1, -1.0);
            o.nu2 = scaled_map(fs.nu2, -1.0);
            break;
        case Reflection::swap:
            o.nu1 = fs.nu2;
            o.nu2 = fs.nu1;
            break;
    }
    return o;
}

FramedSurface rotate_frame(const FramedSurface& fs, const ScalarField& theta) {
    if (!theta.value) throw std::invalid_argument("rotation angle field is empty");
    const ParametricMap4 n1 = fs.nu1;
    const ParametricMap4 n2 = fs.nu2;
    // Value and one partial of the rotated pair; `which` picks u (0) or v (1).
    auto rotated = [n1, n2, theta](double u, double v, int which, bool first) {
        const double t = theta(u, v);
        const double c = std::cos(t), s = std::sin(t);
        const Jet1x4 a = n1.first(u, v);
        const Jet1x4 b = n2.first(u, v);
        const double dt = which == 0 ? theta.partial_u(u, v) : theta.partial_v(u, v);
        const Vec4& ad = which == 0 ? a.xu : a.xv;
        const Vec4& bd = which == 0 ? b.xu : b.xv;
        const Vec4 r1 = c * a.x - s * b.x;
        const Vec4 r2 = s * a.x + c * b.x;
        return first ? c * ad - s * bd - dt * r2 : s * ad + c * bd + dt * r1;
    };
    FramedSurface o = fs;
    o.nu1 = ParametricMap4::closed_form(
        [n1, n2, theta](double u, double v) {
            const double t = theta(u, v);
            return std::cos(t) * n1(u, v) - std::sin(t) * n2(u, v);
        },
        [rotated](double u, double v) { return rotated(u, v, 0, true); },
        [rotated](double u, double v) { return rotated(u, v, 1, true); }, fs.nu1.steps(),
        fs.nu1.bounds());
    o.nu2 = ParametricMap4::closed_form(
        [n1, n2, theta](double u, double v) {
            const double t = theta(u, v);
            return std::sin(t) * n1(u, v) + std::cos(t) * n2(u, v);
        },
        [rotated](double u, double v) { return rotated(u, v, 0, false); },
        [rotated](double u, double v) { return rotated(u, v, 1, false); }, fs.nu2.steps(),
        fs.nu2.bounds());
    return o;
}

Invariants rotated_invariants(const Invariants& k, double theta, double theta_u,
                              double theta_v) {
    const double c = std::cos(theta), s = std::sin(theta);
    Invariants o;
    o.a1 = k.a1 * c - k.b1 * s;
    o.b1 = k.a1 * s + k.b1 * c;
    o.c1 = k.c1;
    o.a2 = k.a2 * c - k.b2 * s;
    o.b2 = k.a2 * s + k.b2 * c;
    o.c2 = k.c2;
    o.e1 = k.e1 - theta_u;
    o.e2 = k.e2 - theta_v;
    o.f1 = k.f1 * c - k.g1 * s;
    o.g1 = k.f1 * s + k.g1 * c;
    o.f2 = k.f2 * c - k.g2 * s;
    o.g2 = k.f2 * s + k.g2 * c;
    return o;
}

Invariants reparametrize_invariants(const Invariants& k, const Jacobian2& j) {
    Invariants o;
    o.a1 = j.u_p * k.a1 + j.v_p * k.a2;
    o.b1 = j.u_p * k.b1 + j.v_p * k.b2;
    o.c1 = j.u_p * k.c1 + j.v_p * k.c2;
    o.e1 = j.u_p * k.e1 + j.v_p * k.e2;
    o.f1 = j.u_p * k.f1 + j.v_p * k.f2;
    o.g1 = j.u_p * k.g1 + j.v_p * k.g2;
    o.a2 = j.u_q * k.a1 + j.v_q * k.a2;
    o.b2 = j.u_q * k.b1 + j.v_q * k.b2;
    o.c2 = j.u_q * k.c1 + j.v_q * k.c2;
    o.e2 = j.u_q * k.e1 + j.v_q * k.e2;
    o.f2 = j.u_q * k.f1 + j.v_q * k.f2;
    o.g2 = j.u_q * k.g1 + j.v_q * k.g2;
    return o;
}

FramedSurface reparametrize(const FramedSurface& fs, const Reparametrization& r,
                            const Domain& new_domain) {
    auto pull = [&r](const ParametricMap4& m) {
        auto value = [m, r](double p, double q) {
            const auto uv = r.map(p, q);
            return m(uv[0], uv[1]);
        };
        auto dp = [m, r](double p, double q) {
            const auto uv = r.map(p, q);
            const Jacobian2 j = r.jacobian(p, q);
            const Jet1x4 d = m.first(uv[0], uv[1]);
            return j.u_p * d.xu + j.v_p * d.xv;
        };
        auto dq = [m, r](double p, double q) {
            const auto uv = r.map(p, q);
            const Jacobian2 j = r.jacobian(p, q);
            const Jet1x4 d = m.first(uv[0], uv[1]);
            return j.u_q * d.xu + j.v_q * d.xv;
        };
        return ParametricMap4::closed_form(value, dp, dq, m.steps());
    };
    FramedSurface o;
    o.x = pull(fs.x);
    o.nu1 = pull(fs.nu1);
    o.nu2 = pull(fs.nu2);
    o.domain = new_domain;
    o.name = fs.name + ":reparametrized";
    return o;
}

NormalFrame construct_frame_from_normal(const Jet1x4& x, const Vec4& nu, double tol,
                                        PolePolicy pole) {
    using Kind = FrameConstructionError::Kind;
    const Vec4 w = wedge3(x.x, x.xu, x.xv);
    if (std::abs(dot4(x.x, x.x) + 1.0) > tol)
        throw FrameConstructionError(Kind::precondition_violated, "x is not on H^3");
    if (std::abs(dot4(nu, nu) - 1.0) > tol)
        throw FrameConstructionError(Kind::precondition_violated, "nu is not unit spacelike");
    if (std::abs(dot4(x.x, nu)) > tol)
        throw FrameConstructionError(Kind::precondition_violated, "<x, nu> != 0");
    if (std::abs(dot4(w, nu)) > tol)
        throw FrameConstructionError(Kind::precondition_violated, "<x^x_u^x_v, nu> != 0");

    // nu = (a, r sin t sin p, r sin t cos p, r cos t) with r = sqrt(1 + a^2).
    const double r = std::sqrt(1.0 + nu[0] * nu[0]);
    const double rs = std::hypot(nu[1], nu[2]);
    const double t = std::atan2(rs, nu[3]);
    NormalFrame out;
    double p = 0.0;
    if (rs <= tol * r) {
        if (pole == PolePolicy::reject)
            throw FrameConstructionError(Kind::degenerate_angles,
                                         "azimuth of nu undefined (nu_2 = nu_3 = 0)");
        out.azimuth_defaulted = true;
    } else {
        p = std::atan2(nu[1], nu[2]);
    }
    const Vec4 bar1{0.0, std::cos(t) * std::sin(p), std::cos(t) * std::cos(p), -std::sin(t)};
    const Vec4 bar2{0.0, std::cos(p), -std::sin(p), 0.0};
    const Vec4 t1 = bar1 + dot4(bar1, x.x) * x.x;
    const Vec4 t2 = bar2 + dot4(bar2, x.x) * x.x - (dot4(bar2, t1) / dot4(t1, t1)) * t1;
    out.nu1 = t1 / std::sqrt(dot4(t1, t1));
    out.nu2 = t2 / std::sqrt(dot4(t2, t2));
    return out;
}

FramedSurface framed_surface_from_normal(const ParametricMap4& x, const ParametricMap4& nu,
                                         const Domain& domain, double tol, PolePolicy pole) {
    auto build = [x, nu, tol, pole](double u, double v) {
        return construct_frame_from_normal(x.first(u, v), nu(u, v), tol, pole);
    };
    FramedSurface fs;
    fs.x = x;
    fs.nu1 = ParametricMap4::finite_difference(
        [build](double u, double v) { return build(u, v).nu1; }, x.steps(), x.bounds());
    fs.nu2 = ParametricMap4::finite_difference(
        [build](double u, double v) { return build(u, v).nu2; }, x.steps(), x.bounds());
    fs.domain = domain;
    return fs;
}

std::string to_string(ReductionTag t) {
    switch (t) {
        case ReductionTag::framed_a_zero: return "framed_a_zero";
        case ReductionTag::framed_b_zero: return "framed_b_zero";
        case ReductionTag::family_u: return "family_u";
        case ReductionTag::family_v: return "family_v";
        case ReductionTag::rotatable_to_framed: return "rotatable_to_framed";
        case ReductionTag::generic: return "generic";
    }
    return "unknown";
}

ReductionResult reduction_type(const Invariants& k, double tol) {
    auto small = [tol](double a, double b) { return std::abs(a) <= tol && std::abs(b) <= tol; };
    ReductionResult r;
    if (small(k.a2, k.b2)) r.satisfied.push_back(ReductionTag::family_v);
    if (small(k.a1, k.b1)) r.satisfied.push_back(ReductionTag::family_u);
    if (small(k.a1, k.a2)) r.satisfied.push_back(ReductionTag::framed_a_zero);
    if (small(k.b1, k.b2)) r.satisfied.push_back(ReductionTag::framed_b_zero);
    if (std::abs(k.constraint()) <= tol) {
        r.satisfied.push_back(ReductionTag::rotatable_to_framed);
        double theta = 0.0;
        if (std::hypot(k.a1, k.b1) > tol)
            theta = std::atan2(k.a1, k.b1);
        else if (std::hypot(k.a2, k.b2) > tol)
            theta = std::atan2(k.a2, k.b2);
        r.theta = theta;
    }
    r.tag = r.satisfied.empty() ? ReductionTag::generic : r.satisfied.front();
    if (r.tag != ReductionTag::rotatable_to_framed) r.theta.reset();
    return r;
}

void unwrap_rotation_angles(std::vector<double>& row) {
    constexpr double pi = std::numbers::pi;
    for (std::size_t i = 1; i < row.size(); ++i) {
        const double d = row[i] - row[i - 1];
        row[i] -= pi * std::round(d / pi);
    }
}

FamilyCurvatures family_curvatures(const Invariants& k, Direction dir, double tol) {
    FamilyCurvatures c;
    if (dir == Direction::u) {
        if (std::abs(k.a1) > tol || std::abs(k.b1) > tol)
            throw NotAFamilyError("a1 = b1 = 0 fails; not a family of framed curves in u");
        c.m = k.c1, c.n = k.e1, c.a = k.f1, c.b = k.g1;
        c.P = k.a2, c.Q = k.b2, c.M = k.c2, c.N = k.e2, c.A = k.f2, c.B = k.g2;
    } else {
        if (std::abs(k.a2) > tol || std::abs(k.b2) > tol)
            throw NotAFamilyError("a2 = b2 = 0 fails; not a family of framed curves in v");
        c.m = k.c2, c.n = k.e2, c.a = k.f2, c.b = k.g2;
        c.P = k.a1, c.Q = k.b1, c.M = k.c1, c.N = k.e1, c.A = k.f1, c.B = k.g1;
    }
    return c;
}

FrameState frame_state(const FrameAt& f) { return {f.x, f.nu1, f.nu2, f.nu3}; }

FrameCoefficients coefficients(const Invariants& k, Direction dir) {
    if (dir == Direction::u) return {k.a1, k.b1, k.c1, k.e1, k.f1, k.g1};
    return {k.a2, k.b2, k.c2, k.e2, k.f2, k.g2};
}

FrameState frame_derivative(const FrameState& s, const FrameCoefficients& k) {
    const auto [a, b, c, e, f, g] = k;
    return {
        a * s.nu1 + b * s.nu2 + c * s.nu3,
        a * s.x + e * s.nu2 + f * s.nu3,
        b * s.x - e * s.nu1 + g * s.nu3,
        c * s.x - f * s.nu1 - g * s.nu2,
    };
}

FrameState reorthonormalize(const FrameState& s) {
    FrameState o;
    o.x = s.x / std::sqrt(-dot4(s.x, s.x));
    Vec4 n1 = s.nu1 + dot4(s.nu1, o.x) * o.x;
    o.nu1 = n1 / std::sqrt(dot4(n1, n1));
    Vec4 n2 = s.nu2 + dot4(s.nu2, o.x) * o.x - dot4(s.nu2, o.nu1) * o.nu1;
    o.nu2 = n2 / std::sqrt(dot4(n2, n2));
    const Vec4 n3 = wedge3(o.x, o.nu1, o.nu2);
    o.nu3 = dot4(n3, s.nu3) >= 0.0 ? n3 : -n3;
    return o;
}

LineTrajectory integrate_frame(const std::function<FrameCoefficients(double)>& coeffs,
                               const FrameState& init, double start, double span, double step,
                               int reorthonormalize_every) {
    if (!(step > 0.0) || !std::isfinite(span) || !std::isfinite(start))
        throw std::invalid_argument("integration needs a positive step and a finite span");
    const auto n = static_cast<long>(std::ceil(std::abs(span) / step - 1e-9));
    const double h = n > 0 ? span / static_cast<double>(n) : 0.0;
    LineTrajectory out;
    out.t.reserve(static_cast<std::size_t>(n) + 1);
    out.states.reserve(static_cast<std::size_t>(n) + 1);
    FrameState s = init;
    out.t.push_back(start);
    out.states.push_back(s);
    out.gram_drift = state_gram(s);
    for (long i = 0; i < n; ++i) {
        const double t = start + h * static_cast<double>(i);
        const FrameState k1 = frame_derivative(s, coeffs(t));
        const FrameState k2 = frame_derivative(axpy(s, h / 2, k1), coeffs(t + h / 2));
        const FrameState k3 = frame_derivative(axpy(s, h / 2, k2), coeffs(t + h / 2));
        const FrameState k4 = frame_derivative(axpy(s, h, k3), coeffs(t + h));
        s = axpy(axpy(axpy(axpy(s, h / 6, k1), h / 3, k2), h / 3, k3), h / 6, k4);
        if (reorthonormalize_every > 0 && (i + 1) % reorthonormalize_every == 0)
            s = reorthonormalize(s);
        out.t.push_back(i + 1 == n ? start + span : start + h * static_cast<double>(i + 1));
        out.states.push_back(s);
        out.gram_drift = std::max(out.gram_drift, state_gram(s));
    }
    return out;
}

LineTrajectory integrate_frame_along_line(const InvariantField& field, const FrameState& init,
                                          const LineSpec& line) {
    auto coeffs = [&field, &line](double t) {
        const auto p = point_on_line(line, t);
        FrameCoefficients k = coefficients(field(p[0], p[1]), line.dir);
        for (double c : k)
            if (!std::isfinite(c))
                throw std::domain_error("non-finite invariant along the integration line");
        return k;
    };
    return integrate_frame(coeffs, init, line.start, line.span, line.step,
                           line.reorthonormalize_every);
}

}  // namespace hgfs
