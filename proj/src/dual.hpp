#pragma once

#include <array>
#include <cmath>

#include "hgfs/minkowski.hpp"

namespace hgfs::detail {

/// Forward-mode dual number: value and one directional derivative.
struct Dual {
    double v = 0.0, d = 0.0;
    Dual() = default;
    Dual(double value) : v(value) {}  // NOLINT: implicit lift of constants
    Dual(double value, double deriv) : v(value), d(deriv) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
inline Dual operator+(Dual a, double b) { return {a.v + b, a.d}; }
inline Dual operator+(double a, Dual b) { return {a + b.v, b.d}; }
inline Dual operator-(Dual a, double b) { return {a.v - b, a.d}; }
inline Dual operator-(double a, Dual b) { return {a - b.v, -b.d}; }
inline Dual operator*(Dual a, double b) { return {a.v * b, a.d * b}; }
inline Dual operator*(double a, Dual b) { return {a * b.v, a * b.d}; }
inline Dual operator/(Dual a, double b) { return {a.v / b, a.d / b}; }
inline Dual operator/(double a, Dual b) { return {a / b.v, -a * b.d / (b.v * b.v)}; }

inline Dual sqrt(Dual a) {
    const double s = std::sqrt(a.v);
    return {s, a.d / (2.0 * s)};
}
inline Dual sin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual sinh(Dual a) { return {std::sinh(a.v), std::cosh(a.v) * a.d}; }
inline Dual cosh(Dual a) { return {std::cosh(a.v), std::sinh(a.v) * a.d}; }

inline double value_of(double a) { return a; }
inline double value_of(Dual a) { return a.v; }
inline double deriv_of(Dual a) { return a.d; }

template <class T>
using Arr4 = std::array<T, 4>;

inline Vec4 values(const Arr4<double>& a) { return {a[0], a[1], a[2], a[3]}; }
inline Vec4 derivs(const Arr4<Dual>& a) { return {a[0].d, a[1].d, a[2].d, a[3].d}; }

/// Value and the two partials of a generic callable f(u, v) -> Arr4<T>.
template <class F>
Vec4 eval_value(const F& f, double u, double v) {
    return values(f(u, v));
}
template <class F>
Vec4 eval_du(const F& f, double u, double v) {
    return derivs(f(Dual{u, 1.0}, Dual{v, 0.0}));
}
template <class F>
Vec4 eval_dv(const F& f, double u, double v) {
    return derivs(f(Dual{u, 0.0}, Dual{v, 1.0}));
}

}  // namespace hgfs::detail
