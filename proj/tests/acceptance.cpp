// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "hgfs/examples.hpp"
#include "hgfs/horocyclic.hpp"
#include "hgfs/projections.hpp"
#include "oracles.hpp"

using namespace hgfs;

namespace {

constexpr double pi = std::numbers::pi;

struct Verdict {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "[x] ") + what;
    }
};

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

FramedSurface all_fd(FramedSurface fs) {
    fs.x = fs.x.as_finite_difference();
    fs.nu1 = fs.nu1.as_finite_difference();
    fs.nu2 = fs.nu2.as_finite_difference();
    return fs;
}

double oracle_error(const FramedSurface& fs, const Domain& g) {
    double worst = 0.0;
    for (const GridSample& s : invariant_grid(fs, g)) {
        const Invariants want = cross_cap_invariants(s.u, s.v);
        worst = std::max({worst, max_abs_diff(s.inv, want), std::abs(s.inv.alpha() - want.alpha()),
                          std::abs(s.inv.beta() - want.beta())});
    }
    return worst;
}

Verdict cross_cap_oracle() {
    Verdict r;
    const FramedSurface fs = get_example("cross_cap").surface;
    const Domain g{-0.9, 0.9, -0.9, 0.9, 21, 21};
    const double closed = oracle_error(fs, g);
    const double fd = oracle_error(all_fd(fs), g);
    r.check(closed < 1e-8, fmt("closed-form max err %.2e < 1e-8", closed));
    r.check(fd < 1e-6, fmt("finite-difference max err %.2e < 1e-6", fd));
    return r;
}

Verdict ruled_a_singularities() {
    Verdict r;
    const FramedSurface fs = get_example("ruled_A").surface;
    const SingularScan scan = find_singular_points(fs, Domain{-pi, pi, -1, 1, 41, 21});
    r.check(scan.points.size() == 2, "points found: " + std::to_string(scan.points.size()) + " (want 2)");
    if (scan.points.size() != 2) return r;
    const double e0 = std::hypot(scan.points[0].u, scan.points[0].v);
    const double e1 = std::hypot(scan.points[1].u - pi, scan.points[1].v);
    r.check(e0 < 1e-8 && e1 < 1e-8, fmt("distance to (0,0) %.1e, to (pi,0) %.1e", e0, e1));
    bool both = true;
    for (const SingularPoint& p : scan.points)
        both = both && classify_singularity(fs, p.u, p.v).type == SingularityType::cross_cap;
    r.check(both, "both tagged cross_cap");
    const double d = classify_singularity(fs, 0.0, 0.0).diagnostics.d_value;
    const double want = 12.0 * std::sqrt(3.0);
    r.check(std::abs(d - want) < 1e-3, fmt("D(0,0) = %.6f vs 12*sqrt(3) = %.6f", d, want));
    return r;
}

Verdict ruled_b() {
    Verdict r;
    const FramedSurface fs = get_example("ruled_B").surface;
    double beta = 0.0, alpha = 0.0;
    bool family = true;
    for (const GridSample& s : invariant_grid(fs, fs.domain)) {
        beta = std::max(beta, std::abs(s.inv.beta()));
        const double s2 = std::sin(s.u) * std::sin(s.u);
        alpha = std::max(alpha, std::abs(s.inv.alpha() - std::sqrt(432 * s2 + 75) * std::sinh(s.v) / 5));
        family = family && reduction_type(s.inv).tag == ReductionTag::family_v;
    }
    r.check(beta < 1e-10, fmt("max |beta| %.2e < 1e-10", beta));
    r.check(alpha < 1e-8, fmt("max alpha err %.2e < 1e-8", alpha));
    r.check(family, "reduction family_v at every grid point");
    return r;
}

Verdict frame_identities() {
    Verdict r;
    double gram = 0.0, off = 0.0, con = 0.0;
    for (const std::string& name : list_examples()) {
        const FramedSurface fs = get_example(name).surface;
        const FramedResidualSummary s = verify_framed(fs, fs.domain);
        gram = std::max(gram, s.gram);
        off = std::max(off, s.off_span);
        con = std::max(con, s.constraint);
    }
    r.check(gram < 1e-10, fmt("Gram %.2e < 1e-10", gram));
    r.check(off < 1e-8, fmt("off-span %.2e < 1e-8", off));
    r.check(con < 1e-8, fmt("a1 b2 - a2 b1 %.2e < 1e-8", con));
    return r;
}

Verdict integrability() {
    Verdict r;
    double worst = 0.0, worst_ratio = 1e300;
    for (const std::string& name : list_examples()) {
        const FramedSurface fs = get_example(name).surface;
        worst = std::max(worst, integrability_residuals(fs, fs.domain, 1e-5).max());
        // Halving is measured where truncation dominates round-off.
        const double coarse = integrability_residuals(fs, fs.domain, 1e-3).max();
        const double fine = integrability_residuals(fs, fs.domain, 5e-4).max();
        worst_ratio = std::min(worst_ratio, coarse / fine);
    }
    r.check(worst < 1e-5, fmt("max residual at h = 1e-5: %.2e < 1e-5", worst));
    r.check(worst_ratio >= 3.5, fmt("smallest halving ratio (h 1e-3 -> 5e-4) %.3f >= 3.5", worst_ratio));
    return r;
}

Verdict rotation_consistency() {
    Verdict r;
    const FramedSurface fs = get_example("cross_cap").surface;
    ScalarField theta;
    theta.value = [](double u, double v) { return u + v; };
    theta.du = [](double, double) { return 1.0; };
    theta.dv = [](double, double) { return 1.0; };
    const FramedSurface rf = rotate_frame(fs, theta);
    const Domain g{-0.9, 0.9, -0.9, 0.9, 11, 11};
    double two_path = 0.0, norm = 0.0;
    for (const GridSample& s : invariant_grid(fs, g)) {
        const Invariants mapped = rotated_invariants(s.inv, s.u + s.v, 1.0, 1.0);
        two_path = std::max(two_path, max_abs_diff(invariants_at(rf, s.u, s.v), mapped));
        norm = std::max(norm, std::abs(mapped.alpha() * mapped.alpha() + mapped.beta() * mapped.beta() -
                                       s.inv.alpha() * s.inv.alpha() - s.inv.beta() * s.inv.beta()));
    }
    r.check(two_path < 1e-7, fmt("two-path err %.2e < 1e-7", two_path));
    r.check(norm < 1e-10, fmt("alpha^2 + beta^2 drift %.2e < 1e-10", norm));
    return r;
}

Verdict projection_round_trips() {
    Verdict r;
    oracle::Rng rng(7);
    double h3 = 0.0, ball = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const Vec4 x = rng.h3_point(2.0);
        h3 = std::max(h3, max_abs_diff(from_poincare(to_poincare(x)), x));
        const Vec3 p = rng.ball_point(0.95);
        ball = std::max(ball, max_abs_diff(to_poincare(from_poincare(p)), p));
    }
    r.check(h3 < 1e-12 && ball < 1e-12, fmt("point round trips H3 %.1e, ball %.1e < 1e-12", h3, ball));

    double off = 0.0, base = 0.0;
    for (const std::string& name : list_examples()) {
        const FramedSurface fs = get_example(name).surface;
        const DiscFramedSurface d = transport_to_disc(fs);
        const DiscFramedSurface again = transport_to_disc(transport_to_h3(d));
        const Domain& g = fs.domain;
        for (int j = 0; j < g.nv; ++j)
            for (int i = 0; i < g.nu; ++i) {
                const double u = g.u_at(i), v = g.v_at(j);
                off = std::max(off, check_disc_frame(d, u, v).off_span);
                base = std::max(base, max_abs_diff(again.x(u, v), d.x(u, v)));
            }
    }
    r.check(off < 1e-8, fmt("disc off-span %.2e < 1e-8", off));
    r.check(base < 1e-10, fmt("disc -> H3 -> disc base err %.2e < 1e-10", base));
    return r;
}

Verdict r31_bridge() {
    Verdict r;
    const FramedSurface fs = get_example("cross_cap").surface;
    const Domain g{-0.5, 0.5, -0.5, 0.5, 21, 21};
    double proj = 0.0;
    std::size_t used = 0;
    for (Axis a : {Axis::x2, Axis::x3, Axis::x4}) {
        const std::vector<bool> mask = spacelike_mask(fs, a, g);
        for (int j = 0; j < g.nv; ++j)
            for (int i = 0; i < g.nu; ++i) {
                if (!mask[j * g.nu + i]) continue;
                const FrameAt f = frame_at(fs, g.u_at(i), g.v_at(j));
                Vec3 t = drop_axis(f.nu3, a);
                t = t / std::sqrt(dot_r31(t, t));
                proj = std::max(proj, std::abs(dot_r31(wedge2_r31(drop_axis(f.xu, a), drop_axis(f.xv, a)), t)));
                ++used;
            }
    }
    for (Axis a : {Axis::x3, Axis::x4}) proj = std::max(proj, lightcone_residual(project_to_r31(fs, a, g), g));
    r.check(proj < 1e-8, fmt("projection residual %.2e < 1e-8 over %.0f spacelike samples", proj,
                             static_cast<double>(used)));

    const ParametricMap3 xt = ParametricMap3::closed_form(
        [](double u, double v) { return Vec3(std::sqrt(2 + u * u + v * v), u, v); },
        [](double u, double v) { return Vec3(u / std::sqrt(2 + u * u + v * v), 1, 0); },
        [](double u, double v) { return Vec3(v / std::sqrt(2 + u * u + v * v), 0, 1); });
    auto tangent = [xt](double u, double v) {
        const Vec3 t = xt.first(u, v).xu;
        return t / std::sqrt(dot_r31(t, t));
    };
    LightconePair pair;
    pair.plus = ParametricMap3::finite_difference(
        [tangent](double u, double v) { return lightcone_frame_from_t(tangent(u, v))[0]; });
    pair.minus = ParametricMap3::finite_difference(
        [tangent](double u, double v) { return lightcone_frame_from_t(tangent(u, v))[1]; });
    const Domain lg{-1, 1, -1, 1, 11, 11};
    LiftCheck worst;
    for (Axis a : {Axis::x2, Axis::x3, Axis::x4})
        for (const auto& frame : {std::optional<LightconePair>{}, std::optional<LightconePair>{pair}}) {
            const LiftCheck c = check_lift(lift_from_r31(xt, a, lg, frame), lg);
            worst.on_h3 = std::max(worst.on_h3, c.on_h3);
            worst.nu_x = std::max(worst.nu_x, c.nu_x);
            worst.nu_wedge = std::max(worst.nu_wedge, c.nu_wedge);
        }
    r.check(worst.on_h3 < 1e-10, fmt("lift |<x,x>+1| %.2e", worst.on_h3));
    r.check(worst.nu_x < 1e-10 && worst.nu_wedge < 1e-10,
            fmt("|<x,nu>| %.2e, |<x^x_u^x_v,nu>| %.2e < 1e-10", worst.nu_x, worst.nu_wedge));
    return r;
}

Verdict horocyclic_suite() {
    Verdict r;
    const std::pair<const char*, HorocyclicClass> profiles[] = {
        {"conical", HorocyclicClass::conical_horosphere},
        {"two_vertices", HorocyclicClass::two_vertices},
        {"single_vertex", HorocyclicClass::single_vertex},
        {"generalized_cone", HorocyclicClass::generalized_horo_cone},
        {"horo_flat", HorocyclicClass::horo_flat},
        {"generic", HorocyclicClass::generic}};
    double norm = 0.0, bridge = 0.0;
    int agree = 0, correct = 0, points = 0, matched = 0;
    auto survey = [&](const char* stem) {
        const HProfile p = load_h_profile_csv(oracle::profile_path(stem));
        const FramedSurface fs = build_horocyclic(p);
        const Domain& g = fs.domain;
        for (int j = 0; j < g.nv; ++j)
            for (int i = 0; i < g.nu; ++i) {
                const Vec4 x = fs.x(g.u_at(i), g.v_at(j));
                norm = std::max(norm, std::abs(dot4(x, x) + 1.0));
            }
        const auto samples = invariant_grid(fs, Domain{g.u_min, g.u_max, -1.5, 1.5, 11, 7});
        for (const GridSample& s : samples) {
            const Invariants& k = s.inv;
            const auto h = p.at(s.u);
            const double v = s.v;
            bridge = std::max({bridge, std::abs(k.c1 + k.g1 - (h[3] - h[0])),
                               std::abs(k.b1 - v * (k.c1 + k.g1) - h[1]),
                               std::abs(k.a1 - k.e1 - (h[2] + h[5])),
                               std::abs(k.f1 - v * (k.a1 - k.e1) - h[4]),
                               std::abs((v * v + 2) * k.a1 - v * v * k.e1 - 2 * v * k.f1 - 2 * h[2])});
        }
        const InvariantField field = invariant_field(fs);
        for (const SingularPoint& pt : find_singular_points(fs, g).points) {
            ++points;
            if (classify_singularity(field, pt.u, pt.v).type ==
                horocyclic_classify_singularity(field, pt.u, pt.v).type)
                ++matched;
        }
        return std::make_pair(p, samples);
    };
    for (const auto& [stem, expected] : profiles) {
        const auto [p, samples] = survey(stem);
        std::vector<std::array<double, 6>> hs;
        for (int i = 0; i <= 20; ++i) hs.push_back(p.at(p.u_min + (p.u_max - p.u_min) * i / 20.0));
        const HorocyclicClass a = classify_horocyclic(hs).tag;
        const HorocyclicClass b = invariant_form_classify(samples).tag;
        agree += a == b;
        correct += a == expected;
    }
    survey("cross_cap");
    survey("regular");
    r.check(norm < 1e-12, fmt("|<x,x>+1| %.2e < 1e-12", norm));
    r.check(bridge < 1e-7, fmt("bridging identities %.2e < 1e-7", bridge));
    r.check(agree == 6 && correct == 6,
            "classifiers agree on " + std::to_string(agree) + "/6, expected class on " + std::to_string(correct) + "/6");
    r.check(points > 0 && matched == points,
            "singular classifiers agree at " + std::to_string(matched) + "/" + std::to_string(points) + " refined points");
    return r;
}

Verdict line_integration() {
    Verdict r;
    const FramedSurface fs = get_example("ruled_B").surface;
    const LineTrajectory t = integrate_frame_along_line(
        invariant_field(fs), frame_state(frame_at(fs, 1.0, 0.0)), LineSpec{Direction::v, 1.0, 0.0, 1.0, 1e-3});
    const FrameState want = frame_state(frame_at(fs, 1.0, 1.0));
    const FrameState& got = t.states.back();
    const double err = std::max({max_abs_diff(got.x, want.x), max_abs_diff(got.nu1, want.nu1),
                                 max_abs_diff(got.nu2, want.nu2), max_abs_diff(got.nu3, want.nu3)});
    r.check(err < 1e-6, fmt("terminal frame err %.2e < 1e-6", err));
    r.check(t.gram_drift < 1e-8, fmt("Gram drift %.2e < 1e-8", t.gram_drift));
    return r;
}

Verdict property_suite() {
    Verdict r;
    oracle::Rng rng(11);
    double wedge = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const Vec4 x = rng.vec4(), a = rng.vec4(), b = rng.vec4(), c = rng.vec4();
        wedge = std::max(wedge, std::abs(dot4(x, wedge3(a, b, c)) - oracle::det4(x, a, b, c)));
    }
    r.check(wedge < 1e-12, fmt("wedge identity %.2e < 1e-12", wedge));

    // Smooth map with exact partials: x = (e^u cos v, sin(u v), u^2 sin v, cos(2u - v)).
    auto value = [](double u, double v) {
        return Vec4(std::exp(u) * std::cos(v), std::sin(u * v), u * u * std::sin(v), std::cos(2 * u - v));
    };
    const double u0 = 0.3, v0 = -0.6;
    const Vec4 xu(std::exp(u0) * std::cos(v0), v0 * std::cos(u0 * v0), 2 * u0 * std::sin(v0),
                  -2 * std::sin(2 * u0 - v0));
    const Vec4 xuv(-std::exp(u0) * std::sin(v0), std::cos(u0 * v0) - u0 * v0 * std::sin(u0 * v0),
                   2 * u0 * std::cos(v0), 2 * std::cos(2 * u0 - v0));
    auto err = [&](double h) {
        const Jet2x4 j = ParametricMap4::finite_difference(value, FdSteps{h, h}).jet(u0, v0);
        return std::max(max_abs_diff(j.xu, xu), max_abs_diff(j.xuv, xuv));
    };
    const double ratio = err(1e-2) / err(5e-3);
    r.check(ratio >= 3.5 && ratio <= 4.5, fmt("fd halving ratio %.3f in [3.5, 4.5]", ratio));

    const FramedSurface fs = get_example("ruled_A").surface;
    ScalarField theta;
    theta.value = [](double u, double) { return 0.7 * u; };
    theta.du = [](double, double) { return 0.7; };
    theta.dv = [](double, double) { return 0.0; };
    const FramedSurface rf = rotate_frame(fs, theta);
    const SingularScan a = find_singular_points(fs, fs.domain);
    const SingularScan b = find_singular_points(rf, rf.domain);
    bool same = a.points.size() == b.points.size();
    for (std::size_t i = 0; same && i < a.points.size(); ++i)
        same = classify_singularity(fs, a.points[i].u, a.points[i].v).type ==
               classify_singularity(rf, b.points[i].u, b.points[i].v).type;
    r.check(same, "ruled_A tags unchanged under theta = 0.7 u");
    return r;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"cross cap oracle", cross_cap_oracle},
        {"ruled surface A singularities", ruled_a_singularities},
        {"ruled surface B", ruled_b},
        {"frame identities", frame_identities},
        {"integrability", integrability},
        {"rotation consistency", rotation_consistency},
        {"projection round trips", projection_round_trips},
        {"R^3_1 bridge", r31_bridge},
        {"horocyclic suite", horocyclic_suite},
        {"line integration uniqueness", line_integration},
        {"property suite", property_suite},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !v.pass;
        std::printf("%s %2zu %-30s (%.2fs) %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                    v.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
