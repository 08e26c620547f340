#include "hgfs/horocyclic.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_interp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hgfs {

namespace {

// Natural cubic spline (linear for two nodes) over shared sample storage.
class Spline {
public:
    Spline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const gsl_interp_type* type = x_.size() >= 3 ? gsl_interp_cspline : gsl_interp_linear;
        interp_.reset(gsl_interp_alloc(type, x_.size()));
        if (gsl_interp_init(interp_.get(), x_.data(), y_.data(), x_.size()) != GSL_SUCCESS)
            throw ProfileFormatError("spline initialisation failed");
    }

    double operator()(double u) const {
        if (u < x_.front() || u > x_.back())
            throw BoundaryError("h-profile evaluated outside its u range");
        double out = 0.0;
        if (gsl_interp_eval_e(interp_.get(), x_.data(), y_.data(), u, nullptr, &out) !=
            GSL_SUCCESS)
            throw BoundaryError("h-profile evaluation failed");
        return out;
    }

private:
    struct Free {
        void operator()(gsl_interp* p) const { gsl_interp_free(p); }
    };
    std::vector<double> x_, y_;
    std::unique_ptr<gsl_interp, Free> interp_;
};

std::array<Vec4, 4> to_array(const FrameState& s) { return {s.x, s.nu1, s.nu2, s.nu3}; }
FrameState to_state(const std::array<Vec4, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

FrameCoefficients profile_coefficients(const HProfile& p, double u) {
    const auto h = p.at(u);
    return {h[0], h[1], h[2], h[3], h[4], h[5]};
}

bool all_small(const std::vector<double>& xs, double tol) {
    return std::all_of(xs.begin(), xs.end(), [tol](double x) { return std::abs(x) <= tol; });
}

bool all_nonzero(const std::vector<double>& xs, double tol) {
    return !xs.empty() &&
           std::all_of(xs.begin(), xs.end(), [tol](double x) { return std::abs(x) > tol; });
}

// Least-squares lambda with num ~ lambda * den; nullopt when den vanishes identically.
std::optional<double> proportionality(const std::vector<double>& num,
                                      const std::vector<double>& den, double tol) {
    double nd = 0.0, dd = 0.0;
    for (std::size_t i = 0; i < num.size(); ++i) {
        nd += num[i] * den[i];
        dd += den[i] * den[i];
    }
    if (dd <= 0.0) return std::nullopt;
    const double lambda = nd / dd;
    for (std::size_t i = 0; i < num.size(); ++i)
        if (std::abs(num[i] - lambda * den[i]) > tol) return std::nullopt;
    return lambda;
}

}  // namespace

std::array<double, 6> HProfile::at(double u) const {
    return {h[0](u), h[1](u), h[2](u), h[3](u), h[4](u), h[5](u)};
}

HProfile constant_profile(const std::array<double, 6>& h, double u_min, double u_max) {
    HProfile p;
    for (std::size_t i = 0; i < 6; ++i) {
        const double c = h[i];
        p.h[i] = [c](double) { return c; };
    }
    p.u_min = u_min;
    p.u_max = u_max;
    return p;
}

HProfile parse_h_profile_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::vector<double> u;
    std::array<std::vector<double>, 6> cols;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (!header_seen) {
            header_seen = true;
            const std::vector<std::string> expect{"u", "h1", "h2", "h3", "h4", "h5", "h6"};
            std::vector<std::string> trimmed;
            for (auto& s : fields) {
                s.erase(0, s.find_first_not_of(" \t"));
                s.erase(s.find_last_not_of(" \t") + 1);
                trimmed.push_back(s);
            }
            if (trimmed != expect)
                throw ProfileFormatError("h-profile header must be u,h1,h2,h3,h4,h5,h6");
            continue;
        }
        if (fields.size() != 7)
            throw ProfileFormatError("h-profile line " + std::to_string(line_no) +
                                     ": expected 7 fields");
        std::array<double, 7> row{};
        for (std::size_t i = 0; i < 7; ++i) {
            std::size_t pos = 0;
            try {
                row[i] = std::stod(fields[i], &pos);
            } catch (const std::exception&) {
                throw ProfileFormatError("h-profile line " + std::to_string(line_no) +
                                         ": not a number");
            }
            if (fields[i].find_first_not_of(" \t", pos) != std::string::npos ||
                !std::isfinite(row[i]))
                throw ProfileFormatError("h-profile line " + std::to_string(line_no) +
                                         ": not a finite number");
        }
        if (!u.empty() && !(row[0] > u.back()))
            throw ProfileFormatError("h-profile u column must be strictly increasing");
        u.push_back(row[0]);
        for (std::size_t i = 0; i < 6; ++i) cols[i].push_back(row[i + 1]);
    }
    if (!header_seen) throw ProfileFormatError("h-profile is empty");
    if (u.size() < 2) throw ProfileFormatError("h-profile needs at least two rows");
    gsl_set_error_handler_off();
    HProfile p;
    for (std::size_t i = 0; i < 6; ++i) {
        auto s = std::make_shared<Spline>(u, cols[i]);
        p.h[i] = [s](double x) { return (*s)(x); };
    }
    p.u_min = u.front();
    p.u_max = u.back();
    return p;
}

HProfile load_h_profile_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open h-profile " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_h_profile_csv(ss.str());
}

CurveFrame closed_form_curve_frame(std::function<std::array<Vec4, 4>(double)> value,
                                   std::function<std::array<Vec4, 4>(double)> derivative,
                                   double u_min, double u_max) {
    return {std::move(value), std::move(derivative), u_min, u_max};
}

std::array<Vec4, 3> standard_initial_frame() {
    return {Vec4::basis(0), Vec4::basis(1), Vec4::basis(2)};
}

CurveFrame integrate_curve_frame(const HProfile& profile, const std::array<Vec4, 3>& initial,
                                 double step, int reorthonormalize_every) {
    if (!(profile.u_max > profile.u_min)) throw std::invalid_argument("empty h-profile range");
    const FrameState init{initial[0], initial[1], initial[2],
                          wedge3(initial[0], initial[1], initial[2])};
    if (gram_residual(init.x, init.nu1, init.nu2, init.nu3) > 1e-10)
        throw std::invalid_argument("initial curve frame is not pseudo-orthonormal");
    auto coeffs = [profile](double u) { return profile_coefficients(profile, u); };
    const LineTrajectory traj = integrate_frame(coeffs, init, profile.u_min,
                                                profile.u_max - profile.u_min, step,
                                                reorthonormalize_every);
    struct Nodes {
        std::vector<double> t;
        std::vector<FrameState> s, d;
    };
    auto nodes = std::make_shared<Nodes>();
    nodes->t = traj.t;
    nodes->s = traj.states;
    for (std::size_t k = 0; k < traj.t.size(); ++k)
        nodes->d.push_back(frame_derivative(traj.states[k], coeffs(traj.t[k])));

    auto value = [nodes](double u) {
        const auto& t = nodes->t;
        if (u < t.front() || u > t.back())
            throw BoundaryError("curve frame evaluated outside its u range");
        std::size_t k = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), u) -
                                                 t.begin());
        k = std::clamp<std::size_t>(k, 1, t.size() - 1) - 1;
        const double h = t[k + 1] - t[k];
        const double s = (u - t[k]) / h;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
        const FrameState& p0 = nodes->s[k];
        const FrameState& p1 = nodes->s[k + 1];
        const FrameState& m0 = nodes->d[k];
        const FrameState& m1 = nodes->d[k + 1];
        auto mix = [&](const Vec4& a, const Vec4& da, const Vec4& b, const Vec4& db) {
            return h00 * a + (h10 * h) * da + h01 * b + (h11 * h) * db;
        };
        return std::array<Vec4, 4>{mix(p0.x, m0.x, p1.x, m1.x),
                                   mix(p0.nu1, m0.nu1, p1.nu1, m1.nu1),
                                   mix(p0.nu2, m0.nu2, p1.nu2, m1.nu2),
                                   mix(p0.nu3, m0.nu3, p1.nu3, m1.nu3)};
    };
    auto derivative = [value, coeffs](double u) {
        return to_array(frame_derivative(to_state(value(u)), coeffs(u)));
    };
    return {value, derivative, profile.u_min, profile.u_max};
}

FramedSurface build_horocyclic(const CurveFrame& frame, double v_min, double v_max, int nu,
                               int nv) {
    const Rect bounds{frame.u_min, frame.u_max, -std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity()};
    auto F = frame.value;
    auto dF = frame.derivative;
    FramedSurface fs;
    fs.x = ParametricMap4::closed_form(
        [F](double u, double v) {
            const auto a = F(u);
            return a[0] + v * a[1] + (0.5 * v * v) * (a[0] + a[2]);
        },
        [dF](double u, double v) {
            const auto d = dF(u);
            return d[0] + v * d[1] + (0.5 * v * v) * (d[0] + d[2]);
        },
        [F](double u, double v) {
            const auto a = F(u);
            return a[1] + v * (a[0] + a[2]);
        },
        {}, bounds);
    fs.nu1 = ParametricMap4::closed_form([F](double u, double) { return F(u)[3]; },
                                         [dF](double u, double) { return dF(u)[3]; },
                                         [](double, double) { return Vec4{}; }, {}, bounds);
    fs.nu2 = ParametricMap4::closed_form(
        [F](double u, double v) {
            const auto a = F(u);
            return (-0.5 * v * v) * a[0] - v * a[1] + (1.0 - 0.5 * v * v) * a[2];
        },
        [dF](double u, double v) {
            const auto d = dF(u);
            return (-0.5 * v * v) * d[0] - v * d[1] + (1.0 - 0.5 * v * v) * d[2];
        },
        [F](double u, double v) {
            const auto a = F(u);
            return -v * a[0] - a[1] - v * a[2];
        },
        {}, bounds);
    // Keep the sample grid clear of the ends so difference stencils stay inside the range.
    const double inset = 0.05 * (frame.u_max - frame.u_min);
    fs.domain = Domain{frame.u_min + inset, frame.u_max - inset, v_min, v_max, nu, nv};
    fs.name = "horocyclic";
    return fs;
}

FramedSurface build_horocyclic(const HProfile& profile, double v_min, double v_max, int nu,
                               int nv) {
    return build_horocyclic(integrate_curve_frame(profile, standard_initial_frame()), v_min,
                            v_max, nu, nv);
}

std::array<double, 6> extract_h(const CurveFrame& frame, double u, double h) {
    const auto a = frame.value(u);
    const auto p = frame.value(u + h);
    const auto m = frame.value(u - h);
    std::array<Vec4, 3> d;
    for (std::size_t i = 0; i < 3; ++i) d[i] = (p[i] - m[i]) / (2.0 * h);
    return {dot4(d[0], a[1]), dot4(d[0], a[2]), dot4(d[0], a[3]),
            dot4(d[1], a[2]), dot4(d[1], a[3]), dot4(d[2], a[3])};
}

Invariants horocyclic_invariants(const std::array<double, 6>& h, double v) {
    const auto [h1, h2, h3, h4, h5, h6] = h;
    const double q = 0.5 * v * v;
    Invariants k;
    k.a1 = (1 + q) * h3 + v * h5 + q * h6;
    k.b1 = -(v * h1 - h2 - v * h4);
    k.c1 = (q - 1) * h1 - v * h2 - q * h4;
    k.e1 = q * h3 + v * h5 + (q - 1) * h6;
    k.f1 = v * h3 + h5 + v * h6;
    k.g1 = -q * h1 + v * h2 + (1 + q) * h4;
    k.a2 = 0, k.b2 = 0, k.c2 = -1, k.e2 = 0, k.f2 = 0, k.g2 = 1;
    return k;
}

std::string to_string(HorocyclicClass c) {
    switch (c) {
        case HorocyclicClass::conical_horosphere: return "conical_horosphere";
        case HorocyclicClass::two_vertices: return "two_vertices";
        case HorocyclicClass::single_vertex: return "single_vertex";
        case HorocyclicClass::generalized_horo_cone: return "generalized_horo_cone";
        case HorocyclicClass::horo_flat: return "horo_flat";
        case HorocyclicClass::generic: return "generic";
    }
    return "unknown";
}

HorocyclicClassification classify_horocyclic(const std::vector<std::array<double, 6>>& hs,
                                             double tol) {
    if (hs.empty()) throw std::invalid_argument("no h samples");
    std::array<std::vector<double>, 6> col;
    std::vector<double> d41;
    for (const auto& h : hs) {
        for (std::size_t i = 0; i < 6; ++i) col[i].push_back(h[i]);
        d41.push_back(h[3] - h[0]);
    }
    const bool cone = all_small(col[0], tol) && all_small(col[1], tol) &&
                      all_small(col[2], tol) && all_small(col[3], tol);
    HorocyclicClassification r;
    if (cone && all_small(col[5], tol) && all_nonzero(col[4], tol)) {
        r.tag = HorocyclicClass::conical_horosphere;
        return r;
    }
    if (cone && all_nonzero(col[4], tol)) {
        if (auto lambda = proportionality(col[4], col[5], tol)) {
            r.tag = HorocyclicClass::two_vertices;
            r.lambda = lambda;
            return r;
        }
    }
    if (cone && all_small(col[4], tol) && all_nonzero(col[5], tol)) {
        r.tag = HorocyclicClass::single_vertex;
        return r;
    }
    if (cone) {
        r.tag = HorocyclicClass::generalized_horo_cone;
        return r;
    }
    if (all_small(col[1], tol) && all_small(d41, tol)) {
        r.tag = HorocyclicClass::horo_flat;
        return r;
    }
    r.tag = HorocyclicClass::generic;
    return r;
}

HorocyclicClassification invariant_form_classify(const std::vector<GridSample>& samples,
                                                 double tol) {
    if (samples.empty()) throw std::invalid_argument("no invariant samples");
    std::vector<double> flat, b, c, g, cone4, vtx, diff, conic, f;
    for (const GridSample& s : samples) {
        const Invariants& k = s.inv;
        const double v = s.v;
        if (std::abs(k.a2) > tol || std::abs(k.b2) > tol || std::abs(k.e2) > tol ||
            std::abs(k.f2) > tol || std::abs(k.c2 + 1) > tol || std::abs(k.g2 - 1) > tol)
            throw NotHorocyclicError("second-row invariants differ from (0, 0, -1, 0, 0, 1)");
        flat.push_back(k.c1 + k.g1);
        b.push_back(k.b1);
        c.push_back(k.c1);
        g.push_back(k.g1);
        cone4.push_back((v * v + 2) * k.a1 - v * v * k.e1 - 2 * v * k.f1);
        vtx.push_back(k.f1 - v * (k.a1 - k.e1));
        diff.push_back(k.a1 - k.e1);
        conic.push_back(k.e1 - v * k.f1);
        f.push_back(k.f1);
    }
    HorocyclicClassification r;
    if (all_small(c, tol) && all_small(g, tol) && all_small(b, tol) && all_small(diff, tol) &&
        all_small(conic, tol) && all_nonzero(f, tol)) {
        r.tag = HorocyclicClass::conical_horosphere;
        return r;
    }
    const bool cone = all_small(c, tol) && all_small(g, tol) && all_small(b, tol) &&
                      all_small(cone4, tol);
    if (cone && all_nonzero(vtx, tol)) {
        if (auto lambda = proportionality(vtx, diff, tol)) {
            r.tag = HorocyclicClass::two_vertices;
            r.lambda = lambda;
            return r;
        }
    }
    if (cone && all_small(vtx, tol) && all_nonzero(diff, tol)) {
        r.tag = HorocyclicClass::single_vertex;
        return r;
    }
    if (cone) {
        r.tag = HorocyclicClass::generalized_horo_cone;
        return r;
    }
    if (all_small(flat, tol) && all_small(b, tol)) {
        r.tag = HorocyclicClass::horo_flat;
        return r;
    }
    r.tag = HorocyclicClass::generic;
    return r;
}

SingularityReport horocyclic_classify_singularity(const InvariantField& field, double u,
                                                  double v, const SingularityOptions& opt) {
    const Invariants k = field(u, v);
    if (std::abs(k.a1) > opt.corank_tol || std::abs(k.b1) > opt.corank_tol)
        throw std::invalid_argument("not a singular point of the horocyclic surface");
    SingularityReport rep;
    rep.u = u;
    rep.v = v;
    SingularityDiagnostics& d = rep.diagnostics;
    d.alpha = k.alpha();
    d.beta = k.beta();
    d.ab = {k.a1, k.a2, k.b1, k.b2};
    d.c = {k.c1, k.c2};
    d.xi = {k.c1, k.c2};
    d.eta = {k.c2, -k.c1};

    const double h = opt.derivative_step;
    const double s = 1.0 / (2.0 * h);
    const Invariants ku = combine(s, field(u + h, v), -s, field(u - h, v));
    const Invariants kv = combine(s, field(u, v + h), -s, field(u, v - h));
    d.d_value = ku.a1 * kv.b1 - kv.a1 * ku.b1;
    d.independence = {k.c1 * kv.a1 + ku.a1, k.c1 * kv.b1 + ku.b1};
    d.phi = phi(field, u, v, h);
    d.hessian = phi_hessian(field, u, v, opt);
    d.det_hessian = d.hessian[0] * d.hessian[2] - d.hessian[1] * d.hessian[1];

    if (std::abs(d.d_value) > opt.d_threshold) {
        rep.type = SingularityType::cross_cap;
        d.reason = "a1_u b1_v - a1_v b1_u != 0";
    } else if (d.det_hessian < -opt.hessian_threshold) {
        const bool indep = std::hypot(d.independence[0], d.independence[1]) > opt.d_threshold;
        rep.type = indep ? SingularityType::s1_plus : SingularityType::unclassified;
        d.reason = indep ? "det Hess phi < 0, independence pair nonzero"
                         : "det Hess phi < 0 but independence pair vanishes";
    } else if (d.det_hessian > opt.hessian_threshold) {
        rep.type = SingularityType::s1_minus;
        d.reason = "det Hess phi > 0";
    } else {
        rep.type = SingularityType::unclassified;
        d.reason = "D and det Hess phi both within thresholds";
    }
    return rep;
}

}  // namespace hgfs
