#include "hgfs/examples.hpp"

#include <cmath>
#include <numbers>

#include "dual.hpp"
#include "hgfs/horocyclic.hpp"

namespace hgfs {

namespace {

using detail::Arr4;
using detail::Dual;

constexpr double pi = std::numbers::pi;
const double sqrt3 = std::sqrt(3.0);

template <class F>
ParametricMap4 dual_map(F f) {
    return ParametricMap4::closed_form(
        [f](double u, double v) { return detail::eval_value(f, u, v); },
        [f](double u, double v) { return detail::eval_du(f, u, v); },
        [f](double u, double v) { return detail::eval_dv(f, u, v); });
}

Domain cross_cap_domain() { return {-0.9, 0.9, -0.9, 0.9, 21, 21}; }
Domain ruled_domain() { return {-pi, pi, -1.0, 1.0, 41, 21}; }

// Cross cap ----------------------------------------------------------------

struct CrossCapX {
    template <class T>
    Arr4<T> operator()(T u, T v) const {
        using std::sqrt;
        return {sqrt(u * u + v * v * v * v + u * u * v * v + 1.0), u, v * v, u * v};
    }
};

struct CrossCapNu1 {
    template <class T>
    Arr4<T> operator()(T u, T v) const {
        using std::sqrt;
        const T r = sqrt(u * u + v * v * v * v + u * u * v * v + 1.0);
        const T s4 = sqrt(v * v * v * v + 1.0);
        return {v * v * r / s4, u * v * v / s4, s4, u * v * v * v / s4};
    }
};

struct CrossCapNu2 {
    template <class T>
    Arr4<T> operator()(T, T v) const {
        using std::sqrt;
        const T s2 = sqrt(v * v + 1.0);
        return {T(0.0), v / s2, T(0.0), -1.0 / s2};
    }
};

// Ruled surfaces -------------------------------------------------------------

template <class T>
T ruled_w(T u) {
    using std::sin;
    using std::sqrt;
    const T s = sin(u);
    return sqrt(144.0 * s * s + 25.0);
}

template <class T>
Arr4<T> ruled_gamma(T u) {
    using std::cos;
    using std::sin;
    return {T(13.0 / 5.0), (9.0 * cos(u) - 3.0 * cos(3.0 * u)) / 5.0,
            (9.0 * sin(u) - 3.0 * sin(3.0 * u)) / 5.0, 6.0 * sqrt3 * cos(u) / 5.0};
}

// The trigonometric director of the cross-cap ruled surface (spacelike unit).
template <class T>
Arr4<T> ruled_long_director(T u) {
    using std::sin;
    const T s = sin(u);
    const T w5 = 5.0 * ruled_w(u);
    return {-156.0 * s / w5, (-97.0 * sin(2.0 * u) + 18.0 * sin(4.0 * u)) / w5,
            (-50.0 * s * s - 144.0 * s * s * s * s + 25.0) / w5,
            -36.0 * sqrt3 * sin(2.0 * u) / w5};
}

template <class T>
Arr4<T> ruled_short_director(T u) {
    using std::cos;
    using std::sin;
    return {T(0.0), -0.5 * sqrt3 * cos(2.0 * u), -0.5 * sqrt3 * sin(2.0 * u), T(0.5)};
}

template <class T>
Arr4<T> ruled_nu1(T u) {
    using std::cos;
    using std::sin;
    const T w2 = 2.0 * ruled_w(u);
    return {24.0 * cos(u) / w2, 13.0 * cos(2.0 * u) / w2, 13.0 * sin(2.0 * u) / w2,
            13.0 * sqrt3 / w2};
}

template <class T>
Arr4<T> ruled_combine(T v, const Arr4<T>& base, const Arr4<T>& dir) {
    using std::cosh;
    using std::sinh;
    const T ch = cosh(v), sh = sinh(v);
    return {ch * base[0] + sh * dir[0], ch * base[1] + sh * dir[1], ch * base[2] + sh * dir[2],
            ch * base[3] + sh * dir[3]};
}

// Corank-one family -----------------------------------------------------------

template <class T>
struct Lifted {
    T f, fu, fv, g, gu, gv;
};

Lifted<double> lift(const ScalarJet& f, const ScalarJet& g, double, double) {
    return {f.val, f.du, f.dv, g.val, g.du, g.dv};
}

Lifted<Dual> lift(const ScalarJet& f, const ScalarJet& g, Dual u, Dual v) {
    auto d = [&](double val, double a, double b) { return Dual{val, a * u.d + b * v.d}; };
    return {d(f.val, f.du, f.dv),  d(f.du, f.duu, f.duv), d(f.dv, f.duv, f.dvv),
            d(g.val, g.du, g.dv),  d(g.du, g.duu, g.duv), d(g.dv, g.duv, g.dvv)};
}

struct CorankParts {
    ScalarJetFn f, g;

    template <class T>
    Lifted<T> at(T u, T v) const {
        const double uu = detail::value_of(u), vv = detail::value_of(v);
        return lift(f(uu, vv), g(uu, vv), u, v);
    }
};

template <class T>
Arr4<T> corank_x(const Lifted<T>& j, T u) {
    using std::sqrt;
    return {sqrt(u * u + j.f * j.f + j.g * j.g + 1.0), u, j.f, j.g};
}

template <class T>
T corank_t(const Lifted<T>& j, T u) {
    using std::sqrt;
    const T m = j.g - u * j.gu;
    return sqrt(m * m + j.gu * j.gu + 1.0);
}

template <class T>
Arr4<T> corank_nu2_bar(const Lifted<T>& j, T u) {
    const Arr4<T> x = corank_x(j, u);
    const T s = u * j.gu - j.g;
    return {s * x[0], s * x[1] + j.gu, s * x[2], s * x[3] - 1.0};
}

struct CorankX {
    CorankParts parts;
    template <class T>
    Arr4<T> operator()(T u, T v) const {
        return corank_x(parts.at(u, v), u);
    }
};

struct CorankNu2 {
    CorankParts parts;
    template <class T>
    Arr4<T> operator()(T u, T v) const {
        const Lifted<T> j = parts.at(u, v);
        const Arr4<T> n = corank_nu2_bar(j, u);
        const T t = corank_t(j, u);
        return {n[0] / t, n[1] / t, n[2] / t, n[3] / t};
    }
};

struct CorankNu1 {
    CorankParts parts;
    template <class T>
    Arr4<T> operator()(T u, T v) const {
        using std::sqrt;
        const Lifted<T> j = parts.at(u, v);
        const T s = corank_x(j, u)[0];
        const T t = corank_t(j, u);
        const T fm = j.f - u * j.fu;
        const T gm = j.g - u * j.gu;
        const T cr = j.fu * j.g - j.gu * j.f;
        const T p = fm * fm + gm * gm + cr * cr + j.fu * j.fu + j.gu * j.gu + 1.0;
        const T k = (-(j.g * j.f + j.gu * j.fu) + u * (j.gu * j.f + j.g * j.fu) -
                     u * u * j.fu * j.gu) /
                    (t * t);
        const Arr4<T> bar1{fm * s, u * j.f - (1.0 + u * u) * j.fu,
                           1.0 + j.f * j.f - u * j.f * j.fu, j.f * j.g - u * j.g * j.fu};
        const Arr4<T> bar2 = corank_nu2_bar(j, u);
        const T scale = t / sqrt(p);
        return {scale * (bar1[0] - k * bar2[0]), scale * (bar1[1] - k * bar2[1]),
                scale * (bar1[2] - k * bar2[2]), scale * (bar1[3] - k * bar2[3])};
    }
};

ScalarJet jet_v_squared(double, double v) { return {v * v, 0, 2 * v, 0, 0, 2}; }
ScalarJet jet_uv(double u, double v) { return {u * v, v, u, 0, 1, 0}; }

ScalarJetFn jet_s1(double sign) {
    // v (u^2 + sign v^2)
    return [sign](double u, double v) {
        return ScalarJet{v * (u * u + sign * v * v), 2 * u * v, u * u + 3 * sign * v * v,
                         2 * v, 2 * u, 6 * sign * v};
    };
}

Example make_cross_cap() {
    Example e;
    e.name = "cross_cap";
    e.description = "cross cap x = (sqrt(u^2+v^4+u^2v^2+1), u, v^2, uv)";
    e.surface.x = dual_map(CrossCapX{});
    e.surface.nu1 = dual_map(CrossCapNu1{});
    e.surface.nu2 = dual_map(CrossCapNu2{});
    e.surface.domain = cross_cap_domain();
    e.surface.name = e.name;
    e.invariants_oracle = InvariantField(cross_cap_invariants);
    e.alpha_beta_oracle = AlphaBetaFn([](double u, double v) {
        const double r = std::sqrt(u * u + v * v * v * v + u * u * v * v + 1.0);
        return std::array<double, 2>{u * std::sqrt(v * v * v * v + 1.0) / r,
                                     2.0 * v * std::sqrt(v * v + 1.0) / r};
    });
    e.known_singularities = {{0.0, 0.0, SingularityType::cross_cap}};
    return e;
}

Example make_ruled_a() {
    Example e;
    e.name = "ruled_A";
    e.description = "hyperbolic ruled surface with cross caps at (0,0) and (pi,0)";
    e.surface.x = dual_map([](auto u, auto v) {
        return ruled_combine(v, ruled_gamma(u), ruled_long_director(u));
    });
    e.surface.nu1 = dual_map([](auto u, auto) { return ruled_nu1(u); });
    e.surface.nu2 = dual_map([](auto u, auto) { return ruled_short_director(u); });
    e.surface.domain = ruled_domain();
    e.surface.u_period = 2.0 * pi;
    e.surface.name = e.name;
    e.invariants_oracle = InvariantField(ruled_a_invariants);
    e.alpha_beta_oracle = AlphaBetaFn([](double u, double v) {
        const Invariants k = ruled_a_invariants(u, v);
        return std::array<double, 2>{k.alpha(), k.beta()};
    });
    e.known_singularities = {{0.0, 0.0, SingularityType::cross_cap},
                             {pi, 0.0, SingularityType::cross_cap}};
    return e;
}

Example make_ruled_b() {
    Example e;
    e.name = "ruled_B";
    e.description = "hyperbolic ruled surface singular along v = 0";
    e.surface.x = dual_map([](auto u, auto v) {
        return ruled_combine(v, ruled_gamma(u), ruled_short_director(u));
    });
    e.surface.nu1 = dual_map([](auto u, auto) { return ruled_nu1(u); });
    e.surface.nu2 = dual_map([](auto u, auto) { return ruled_long_director(u); });
    e.surface.domain = ruled_domain();
    e.surface.u_period = 2.0 * pi;
    e.surface.name = e.name;
    e.invariants_oracle = InvariantField(ruled_b_invariants);
    e.alpha_beta_oracle = AlphaBetaFn([](double u, double v) {
        const double s = std::sin(u);
        return std::array<double, 2>{std::sqrt(432.0 * s * s + 75.0) * std::sinh(v) / 5.0, 0.0};
    });
    e.singular_set = "v = 0";
    return e;
}

Example make_horocyclic(const std::string& path) {
    const HProfile profile = load_h_profile_csv(path);
    Example e;
    e.name = "horocyclic:" + path;
    e.description = "horocyclic surface from the h-profile " + path;
    e.surface = build_horocyclic(profile);
    e.surface.name = e.name;
    e.invariants_oracle = InvariantField(
        [profile](double u, double v) { return horocyclic_invariants(profile.at(u), v); });
    e.alpha_beta_oracle = AlphaBetaFn([profile](double u, double v) {
        const Invariants k = horocyclic_invariants(profile.at(u), v);
        return std::array<double, 2>{k.alpha(), k.beta()};
    });
    return e;
}

}  // namespace

Invariants cross_cap_invariants(double u, double v) {
    const double v2 = v * v, v4 = v2 * v2;
    const double r = std::sqrt(u * u + v4 + u * u * v2 + 1.0);
    const double s4 = std::sqrt(v4 + 1.0);
    const double s2 = std::sqrt(v2 + 1.0);
    const double w = 1.0 - v4 - 2.0 * v2;
    Invariants k;
    k.a1 = 0;
    k.b1 = 0;
    k.c1 = s4 * s2 / r;
    k.a2 = 2.0 * v / s4;
    k.b2 = -u / s2;
    k.c2 = u * v * w / (r * s4 * s2);
    k.e1 = 0;
    k.f1 = v2 * s2 / r;
    k.g1 = 0;
    k.e2 = -u * v2 / (s4 * s2);
    k.f2 = u * v2 * v * w / ((v4 + 1.0) * r * s2);
    k.g2 = r / ((v2 + 1.0) * s4);
    return k;
}

Invariants ruled_a_invariants(double u, double v) {
    const double s = std::sin(u);
    const double w2 = 144.0 * s * s + 25.0;
    const double root = std::sqrt(432.0 * s * s + 75.0);
    const double ch = std::cosh(v), sh = std::sinh(v);
    Invariants k;
    k.a1 = -65.0 * sh / w2;
    k.b1 = (-12.0 * sqrt3 * s * ch + sh * root) / 5.0;
    k.c1 = 0;
    k.a2 = 0;
    k.b2 = 0;
    k.c2 = 1;
    k.e1 = 0;
    k.f1 = 65.0 * ch / w2;
    k.g1 = (12.0 * sqrt3 * s * sh - ch * root) / 5.0;
    return k;
}

Invariants ruled_b_invariants(double u, double v) {
    const double s = std::sin(u);
    const double w2 = 144.0 * s * s + 25.0;
    const double root = std::sqrt(432.0 * s * s + 75.0);
    Invariants k;
    k.a1 = 0;
    k.b1 = -root * std::sinh(v) / 5.0;
    k.c1 = 12.0 * sqrt3 * s / 5.0;
    k.c2 = -1;
    k.e1 = 65.0 / w2;
    k.g1 = -root * std::cosh(v) / 5.0;
    return k;
}

std::array<double, 2> corank_one_alpha_beta(const ScalarJet& f, const ScalarJet& g, double u) {
    const double s = std::sqrt(u * u + f.val * f.val + g.val * g.val + 1.0);
    const double gm = g.val - u * g.du;
    const double t2 = gm * gm + g.du * g.du + 1.0;
    const double fm = f.val - u * f.du;
    const double cr = f.du * g.val - g.du * f.val;
    const double p = fm * fm + gm * gm + cr * cr + f.du * f.du + g.du * g.du + 1.0;
    const double knum = -(g.val * f.val + g.du * f.du) + u * (g.du * f.val + g.val * f.du) -
                        u * u * f.du * g.du;
    const double q = g.dv * knum + f.dv * t2;
    const double st = s * std::sqrt(t2);
    return {g.dv * std::sqrt(p) / st, q / st};
}

Example corank_one(const ScalarJetFn& f, const ScalarJetFn& g, const std::string& name) {
    const ScalarJet f0 = f(0.0, 0.0), g0 = g(0.0, 0.0);
    if (std::abs(f0.dv) > 1e-12 || std::abs(g0.dv) > 1e-12)
        throw std::invalid_argument("corank-one family requires f_v(0,0) = g_v(0,0) = 0");
    const CorankParts parts{f, g};
    Example e;
    e.name = name;
    e.description = "corank-one family x = (sqrt(u^2+f^2+g^2+1), u, f, g)";
    e.surface.x = dual_map(CorankX{parts});
    e.surface.nu1 = dual_map(CorankNu1{parts});
    e.surface.nu2 = dual_map(CorankNu2{parts});
    e.surface.domain = cross_cap_domain();
    e.surface.name = name;
    e.alpha_beta_oracle = AlphaBetaFn(
        [f, g](double u, double v) { return corank_one_alpha_beta(f(u, v), g(u, v), u); });
    return e;
}

std::vector<std::string> list_examples() {
    return {"corank_one", "corank_one:s1_plus", "corank_one:s1_minus", "cross_cap", "ruled_A",
            "ruled_B"};
}

Example get_example(const std::string& name) {
    if (name == "cross_cap") return make_cross_cap();
    if (name == "ruled_A") return make_ruled_a();
    if (name == "ruled_B") return make_ruled_b();
    if (name == "corank_one") {
        Example e = corank_one(jet_v_squared, jet_uv, name);
        e.known_singularities = {{0.0, 0.0, SingularityType::cross_cap}};
        return e;
    }
    if (name == "corank_one:s1_plus") {
        Example e = corank_one(jet_v_squared, jet_s1(1.0), name);
        e.known_singularities = {{0.0, 0.0, SingularityType::s1_plus}};
        return e;
    }
    if (name == "corank_one:s1_minus") {
        Example e = corank_one(jet_v_squared, jet_s1(-1.0), name);
        e.known_singularities = {{0.0, 0.0, SingularityType::s1_minus}};
        return e;
    }
    const std::string prefix = "horocyclic:";
    if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size())
        return make_horocyclic(name.substr(prefix.size()));
    throw UnknownExampleError("unknown example '" + name + "'");
}

}  // namespace hgfs
