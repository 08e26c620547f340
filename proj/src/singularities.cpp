#include "hgfs/singularities.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "parallel.hpp"

namespace hgfs {

namespace {

// Determinant of the 2x2 matrix with columns p and c.
double det_pc(double p1, double p2, double c1, double c2) { return p1 * c2 - p2 * c1; }

struct AlphaBetaJet {
    double alpha, beta, alpha_u, alpha_v, beta_u, beta_v;
};

AlphaBetaJet alpha_beta_jet(const InvariantField& field, double u, double v, double h) {
    const Invariants k = field(u, v);
    const Invariants up = field(u + h, v), um = field(u - h, v);
    const Invariants vp = field(u, v + h), vm = field(u, v - h);
    const double s = 1.0 / (2.0 * h);
    return {k.alpha(),
            k.beta(),
            (up.alpha() - um.alpha()) * s,
            (vp.alpha() - vm.alpha()) * s,
            (up.beta() - um.beta()) * s,
            (vp.beta() - vm.beta()) * s};
}

double phi_from(const Invariants& k, const AlphaBetaJet& j) {
    const double ce = k.c1 * k.e2 - k.c2 * k.e1;
    const double m00 = k.a1 * k.c1 + k.a2 * k.c2;
    const double m01 = -j.beta;
    const double m02 = k.c1 * j.beta_v - k.c2 * j.beta_u + j.alpha * ce;
    const double m10 = k.b1 * k.c1 + k.b2 * k.c2;
    const double m11 = j.alpha;
    const double m12 = k.c2 * j.alpha_u - k.c1 * j.alpha_v + j.beta * ce;
    const double m20 = k.c1 * k.c1 + k.c2 * k.c2;
    const double m22 = j.beta * (k.c1 * k.f2 - k.c2 * k.f1) + j.alpha * (k.c2 * k.g1 - k.c1 * k.g2);
    // Third row is (m20, 0, m22).
    return m00 * (m11 * m22) - m01 * (m10 * m22 - m12 * m20) + m02 * (-m11 * m20);
}

double wrap_periodic(double u, double u_max, double period) {
    double r = std::fmod(u_max - u, period);
    if (r < 0.0) r += period;
    if (r > period - 1e-9) r = 0.0;
    return u_max - r;
}

}  // namespace

std::string to_string(SingularityType t) {
    switch (t) {
        case SingularityType::cross_cap: return "cross_cap";
        case SingularityType::s1_plus: return "s1_plus";
        case SingularityType::s1_minus: return "s1_minus";
        case SingularityType::not_corank_one: return "not_corank_one";
        case SingularityType::unclassified: return "unclassified";
    }
    return "unknown";
}

double phi(const InvariantField& field, double u, double v, double h) {
    const Invariants k = field(u, v);
    if (std::hypot(k.c1, k.c2) <= 1e-12)
        throw DegenerateDirectionError("(c1, c2) vanishes; the null direction is undefined");
    return phi_from(k, alpha_beta_jet(field, u, v, h));
}

std::array<double, 3> phi_hessian(const InvariantField& field, double u, double v,
                                  const SingularityOptions& opt) {
    const double H = opt.hessian_step;
    auto P = [&](double du, double dv) {
        return phi(field, u + du, v + dv, opt.hessian_inner_step);
    };
    const double p00 = P(0, 0);
    const double pp0 = P(H, 0), pm0 = P(-H, 0), p0p = P(0, H), p0m = P(0, -H);
    const double ppp = P(H, H), ppm = P(H, -H), pmp = P(-H, H), pmm = P(-H, -H);
    return {(pp0 - 2 * p00 + pm0) / (H * H), (ppp - ppm - pmp + pmm) / (4 * H * H),
            (p0p - 2 * p00 + p0m) / (H * H)};
}

double d_value(const InvariantField& field, double u, double v, double h) {
    const Invariants k = field(u, v);
    const double s = 1.0 / (2.0 * h);
    const Invariants ku = combine(s, field(u + h, v), -s, field(u - h, v));
    const Invariants kv = combine(s, field(u, v + h), -s, field(u, v - h));
    const double bu = det_pc(ku.b1, ku.b2, k.c1, k.c2);
    const double bv = det_pc(kv.b1, kv.b2, k.c1, k.c2);
    const double au = det_pc(ku.a1, ku.a2, k.c1, k.c2);
    const double av = det_pc(kv.a1, kv.a2, k.c1, k.c2);
    return bu * av - bv * au;
}

std::optional<SingularPoint> refine_singular_point(const InvariantField& field, double u0,
                                                   double v0, const SingularityOptions& opt) {
    double u = u0, v = v0;
    auto residual = [&field](double uu, double vv) {
        const Invariants k = field(uu, vv);
        return std::abs(k.alpha()) + std::abs(k.beta());
    };
    try {
        auto newton_step = [&](double uu, double vv) {
            const AlphaBetaJet j = alpha_beta_jet(field, uu, vv, opt.derivative_step);
            Eigen::Matrix2d jac;
            jac << j.alpha_u, j.alpha_v, j.beta_u, j.beta_v;
            const Eigen::Vector2d f(j.alpha, j.beta);
            Eigen::JacobiSVD<Eigen::Matrix2d> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
            svd.setThreshold(1e-10);
            return Eigen::Vector2d(-svd.solve(f));
        };
        double r = residual(u, v);
        for (int it = 0; it <= opt.max_iterations; ++it) {
            if (r < opt.converge_tol) {
                // Degenerate roots (D = 0) converge linearly; keep taking full steps while they
                // do not increase the residual so the location settles as well.
                int extra = it;
                while (extra < opt.max_iterations) {
                    const Eigen::Vector2d step = newton_step(u, v);
                    if (!step.allFinite() || step.norm() < 1e-14) break;
                    const double rn = residual(u + step(0), v + step(1));
                    if (!(rn <= r)) break;
                    u += step(0), v += step(1), r = rn;
                    ++extra;
                }
                return SingularPoint{u, v, r, extra};
            }
            if (it == opt.max_iterations) break;
            const Eigen::Vector2d step = newton_step(u, v);
            if (!step.allFinite()) return std::nullopt;
            // Halve the step until |alpha| + |beta| decreases.
            double t = 1.0;
            bool moved = false;
            for (int ls = 0; ls < 30; ++ls) {
                const double un = u + t * step(0), vn = v + t * step(1);
                const double rn = residual(un, vn);
                if (rn < r) {
                    u = un, v = vn, r = rn;
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
            if (!moved) return std::nullopt;
        }
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    return std::nullopt;
}

SingularScan find_singular_points(const InvariantField& field, const Domain& grid,
                                  const SingularityOptions& opt, std::optional<double> u_period) {
    grid.validate();
    const std::size_t nu = static_cast<std::size_t>(grid.nu);
    const std::size_t nv = static_cast<std::size_t>(grid.nv);
    std::vector<double> al(grid.size()), be(grid.size());
    detail::parallel_for(grid.size(), [&](std::size_t k) {
        const Invariants inv = field(grid.u_at(static_cast<int>(k % nu)),
                                     grid.v_at(static_cast<int>(k / nu)));
        al[k] = inv.alpha();
        be[k] = inv.beta();
    });

    // A cell is a candidate when both fields plausibly vanish nearby: the smallest corner
    // magnitude is within candidate_factor times the spread over the corners.
    auto plausible = [&](const std::array<std::size_t, 4>& idx, const std::vector<double>& f) {
        double lo = f[idx[0]], hi = f[idx[0]], mn = std::abs(f[idx[0]]);
        for (std::size_t k : idx) {
            lo = std::min(lo, f[k]);
            hi = std::max(hi, f[k]);
            mn = std::min(mn, std::abs(f[k]));
        }
        return mn <= opt.candidate_factor * (hi - lo) + opt.converge_tol;
    };
    std::set<std::size_t> starts;
    std::size_t cells = 0;
    for (std::size_t j = 0; j + 1 < nv; ++j) {
        for (std::size_t i = 0; i + 1 < nu; ++i) {
            const std::array<std::size_t, 4> idx{j * nu + i, j * nu + i + 1, (j + 1) * nu + i,
                                                 (j + 1) * nu + i + 1};
            if (!plausible(idx, al) || !plausible(idx, be)) continue;
            ++cells;
            std::size_t best = idx[0];
            for (std::size_t k : idx)
                if (std::abs(al[k]) + std::abs(be[k]) < std::abs(al[best]) + std::abs(be[best]))
                    best = k;
            starts.insert(best);
        }
    }

    const std::vector<std::size_t> start_list(starts.begin(), starts.end());
    std::vector<std::optional<SingularPoint>> refined(start_list.size());
    detail::parallel_for(start_list.size(), [&](std::size_t n) {
        const std::size_t k = start_list[n];
        refined[n] = refine_singular_point(field, grid.u_at(static_cast<int>(k % nu)),
                                           grid.v_at(static_cast<int>(k / nu)), opt);
    });

    SingularScan scan;
    scan.candidates = cells;
    const double dedup = std::min(grid.du(), grid.dv()) / 10.0;
    const double slack = 1e-9 * std::max(1.0, std::max(std::abs(grid.u_max), std::abs(grid.v_max)));
    for (const auto& r : refined) {
        if (!r) {
            ++scan.not_converged;
            continue;
        }
        SingularPoint p = *r;
        if (u_period) p.u = wrap_periodic(p.u, grid.u_max, *u_period);
        if (p.u < grid.u_min - slack || p.u > grid.u_max + slack || p.v < grid.v_min - slack ||
            p.v > grid.v_max + slack)
            continue;
        bool duplicate = false;
        for (const SingularPoint& q : scan.points) {
            double du = std::abs(p.u - q.u);
            if (u_period) du = std::min(du, *u_period - du);
            if (std::hypot(du, p.v - q.v) <= dedup) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) scan.points.push_back(p);
    }
    std::sort(scan.points.begin(), scan.points.end(), [](const auto& a, const auto& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return scan;
}

SingularScan find_singular_points(const FramedSurface& fs, const Domain& grid,
                                  const SingularityOptions& opt) {
    return find_singular_points(invariant_field(fs), grid, opt, fs.u_period);
}

SingularityReport classify_singularity(const InvariantField& field, double u, double v,
                                       const SingularityOptions& opt) {
    SingularityReport rep;
    rep.u = u;
    rep.v = v;
    SingularityDiagnostics& d = rep.diagnostics;
    const Invariants k = field(u, v);
    d.alpha = k.alpha();
    d.beta = k.beta();
    d.ab = {k.a1, k.a2, k.b1, k.b2};
    d.c = {k.c1, k.c2};
    d.xi = {k.c1, k.c2};
    d.eta = {k.c2, -k.c1};

    const double ab_max = std::max({std::abs(k.a1), std::abs(k.a2), std::abs(k.b1), std::abs(k.b2)});
    if (ab_max > opt.corank_tol || std::hypot(k.c1, k.c2) <= opt.corank_tol) {
        rep.type = SingularityType::not_corank_one;
        d.reason = ab_max > opt.corank_tol ? "(a1, a2, b1, b2) does not vanish"
                                           : "(c1, c2) vanishes";
        return rep;
    }

    const double h = opt.derivative_step;
    const double s = 1.0 / (2.0 * h);
    const Invariants ku = combine(s, field(u + h, v), -s, field(u - h, v));
    const Invariants kv = combine(s, field(u, v + h), -s, field(u, v - h));
    const double bu = det_pc(ku.b1, ku.b2, k.c1, k.c2);
    const double bv = det_pc(kv.b1, kv.b2, k.c1, k.c2);
    const double au = det_pc(ku.a1, ku.a2, k.c1, k.c2);
    const double av = det_pc(kv.a1, kv.a2, k.c1, k.c2);
    d.d_value = bu * av - bv * au;
    d.independence = {-k.c1 * av + k.c2 * au, k.c2 * bu - k.c1 * bv};

    const AlphaBetaJet j = alpha_beta_jet(field, u, v, h);
    const double cc = k.c1 * k.c1 + k.c2 * k.c2;
    const double bracket = j.alpha_v * j.beta_u - j.alpha_u * j.beta_v;
    d.phi = phi_from(k, j);
    d.dphi_closed = {k.c1 * cc * bracket, k.c2 * cc * bracket};

    const double hi = opt.hessian_inner_step;
    {
        // Richardson combination of steps H and H/2 cancels the O(H^2) term.
        auto central = [&](double H) {
            return std::array<double, 2>{
                (phi(field, u + H, v, hi) - phi(field, u - H, v, hi)) / (2 * H),
                (phi(field, u, v + H, hi) - phi(field, u, v - H, hi)) / (2 * H)};
        };
        const auto coarse = central(opt.hessian_step);
        const auto fine = central(0.5 * opt.hessian_step);
        d.dphi = {(4 * fine[0] - coarse[0]) / 3, (4 * fine[1] - coarse[1]) / 3};
    }
    d.hessian = phi_hessian(field, u, v, opt);
    d.det_hessian = d.hessian[0] * d.hessian[2] - d.hessian[1] * d.hessian[1];

    // Same Hessian from second partials of alpha and beta.
    {
        const double g = hi;
        auto A = [&](double du, double dv) { return field(u + du, v + dv).alpha(); };
        auto B = [&](double du, double dv) { return field(u + du, v + dv).beta(); };
        const double a0 = A(0, 0), b0 = B(0, 0);
        const double auu = (A(g, 0) - 2 * a0 + A(-g, 0)) / (g * g);
        const double avv = (A(0, g) - 2 * a0 + A(0, -g)) / (g * g);
        const double auv = (A(g, g) - A(g, -g) - A(-g, g) + A(-g, -g)) / (4 * g * g);
        const double buu = (B(g, 0) - 2 * b0 + B(-g, 0)) / (g * g);
        const double bvv = (B(0, g) - 2 * b0 + B(0, -g)) / (g * g);
        const double buv = (B(g, g) - B(g, -g) - B(-g, g) + B(-g, -g)) / (4 * g * g);
        const double c1 = k.c1, c2 = k.c2;
        const double ce = c1 * k.e2 - c2 * k.e1;
        const double au1 = j.alpha_u, av1 = j.alpha_v, bu1 = j.beta_u, bv1 = j.beta_v;
        const double huu = cc * (2 * c1 * (bu1 * auv - au1 * buv) + c1 * (buu * av1 - auu * bv1) +
                                 c2 * (au1 * buu - bu1 * auu) - 2 * ce * (au1 * au1 + bu1 * bu1));
        const double hvv = cc * (2 * c1 * (av1 * buv - bv1 * auv) + c1 * (bv1 * avv - av1 * bvv) +
                                 c2 * (avv * bu1 - au1 * bvv) - 2 * ce * (av1 * av1 + bv1 * bv1));
        const double huv = cc * (c1 * (avv * bu1 - au1 * bvv) + c2 * (av1 * buu - auu * bv1) -
                                 2 * ce * (au1 * av1 + bu1 * bv1));
        d.hessian_closed = {huu, huv, hvv};
        d.det_hessian_closed = huu * hvv - huv * huv;
    }

    if (std::abs(d.d_value) > opt.d_threshold) {
        rep.type = SingularityType::cross_cap;
        d.reason = "D != 0";
        return rep;
    }
    if (d.det_hessian < -opt.hessian_threshold) {
        if (std::hypot(d.independence[0], d.independence[1]) > opt.d_threshold) {
            rep.type = SingularityType::s1_plus;
            d.reason = "D = 0, det Hess phi < 0, xi x and eta eta x independent";
        } else {
            rep.type = SingularityType::unclassified;
            d.reason = "det Hess phi < 0 but xi x and eta eta x are dependent";
        }
        return rep;
    }
    if (d.det_hessian > opt.hessian_threshold) {
        rep.type = SingularityType::s1_minus;
        d.reason = "D = 0, det Hess phi > 0";
        return rep;
    }
    rep.type = SingularityType::unclassified;
    d.reason = "D and det Hess phi both within thresholds";
    return rep;
}

SingularityReport classify_singularity(const FramedSurface& fs, double u, double v,
                                       const SingularityOptions& opt) {
    return classify_singularity(invariant_field(fs), u, v, opt);
}

}  // namespace hgfs
