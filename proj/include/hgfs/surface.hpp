#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "hgfs/minkowski.hpp"

namespace hgfs {

/// Step sizes for finite differences: `first` for first partials, `second` for second partials.
struct FdSteps {
    double first = 1e-5;
    double second = 1e-4;
};

/// Declared parameter rectangle of a map. Unbounded by default.
struct Rect {
    double u_min = -std::numeric_limits<double>::infinity();
    double u_max = std::numeric_limits<double>::infinity();
    double v_min = -std::numeric_limits<double>::infinity();
    double v_max = std::numeric_limits<double>::infinity();

    bool contains(double u, double v, double margin = 0.0) const {
        return u - margin >= u_min && u + margin <= u_max && v - margin >= v_min &&
               v + margin <= v_max;
    }
};

/// Raised when a finite-difference stencil would leave the declared rectangle.
class BoundaryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

template <class V>
struct Jet1 {
    V x, xu, xv;
};

template <class V>
struct Jet2 {
    V x, xu, xv, xuu, xuv, xvv;
};

/// Smooth map (u,v) -> V with first and second partials.
///
/// In closed-form mode the first partials come from the supplied evaluators; second partials
/// come from supplied evaluators when present and otherwise from central differences of the
/// closed-form firsts. In finite-difference mode everything is differenced from the values.
template <class V>
class ParametricMap {
public:
    using Fn = std::function<V(double, double)>;
    enum class Mode { closed_form, finite_difference };

    ParametricMap() = default;

    static ParametricMap finite_difference(Fn value, FdSteps steps = {}, Rect bounds = {}) {
        ParametricMap m;
        m.value_ = std::move(value);
        m.steps_ = steps;
        m.bounds_ = bounds;
        m.mode_ = Mode::finite_difference;
        m.check_steps();
        return m;
    }

    static ParametricMap closed_form(Fn value, Fn du, Fn dv, FdSteps steps = {},
                                     Rect bounds = {}) {
        ParametricMap m;
        m.value_ = std::move(value);
        m.du_ = std::move(du);
        m.dv_ = std::move(dv);
        m.steps_ = steps;
        m.bounds_ = bounds;
        m.mode_ = Mode::closed_form;
        m.check_steps();
        return m;
    }

    /// Attach closed-form second partials (closed-form mode only).
    ParametricMap with_second(Fn uu, Fn uv, Fn vv) const {
        if (mode_ != Mode::closed_form)
            throw std::invalid_argument("second partials require closed-form first partials");
        ParametricMap m = *this;
        m.uu_ = std::move(uu);
        m.uv_ = std::move(uv);
        m.vv_ = std::move(vv);
        return m;
    }

    /// Same map with other difference steps.
    ParametricMap with_steps(FdSteps steps) const {
        ParametricMap m = *this;
        m.steps_ = steps;
        m.check_steps();
        return m;
    }

    /// Same values, all derivatives by finite differences.
    ParametricMap as_finite_difference(FdSteps steps = {}) const {
        return finite_difference(value_, steps, bounds_);
    }

    bool valid() const { return static_cast<bool>(value_); }
    Mode mode() const { return mode_; }
    const FdSteps& steps() const { return steps_; }
    const Rect& bounds() const { return bounds_; }

    V operator()(double u, double v) const { return value_(u, v); }

    Jet1<V> first(double u, double v) const {
        if (mode_ == Mode::closed_form) return {value_(u, v), du_(u, v), dv_(u, v)};
        require_margin(u, v, steps_.first);
        const double h = steps_.first;
        const V x = value_(u, v);
        const V xu = (value_(u + h, v) - value_(u - h, v)) / (2.0 * h);
        const V xv = (value_(u, v + h) - value_(u, v - h)) / (2.0 * h);
        return {x, xu, xv};
    }

    Jet2<V> jet(double u, double v) const {
        const Jet1<V> j = first(u, v);
        const double h = steps_.second;
        if (mode_ == Mode::closed_form) {
            if (uu_) return {j.x, j.xu, j.xv, uu_(u, v), uv_(u, v), vv_(u, v)};
            const V xuu = (du_(u + h, v) - du_(u - h, v)) / (2.0 * h);
            const V xuv = (du_(u, v + h) - du_(u, v - h)) / (2.0 * h);
            const V xvv = (dv_(u, v + h) - dv_(u, v - h)) / (2.0 * h);
            return {j.x, j.xu, j.xv, xuu, xuv, xvv};
        }
        require_margin(u, v, h);
        const V x = j.x;
        const V xuu = (value_(u + h, v) - 2.0 * x + value_(u - h, v)) / (h * h);
        const V xvv = (value_(u, v + h) - 2.0 * x + value_(u, v - h)) / (h * h);
        const V xuv = (value_(u + h, v + h) - value_(u + h, v - h) - value_(u - h, v + h) +
                       value_(u - h, v - h)) /
                      (4.0 * h * h);
        return {j.x, j.xu, j.xv, xuu, xuv, xvv};
    }

private:
    void check_steps() const {
        if (!(steps_.first > 0.0) || !(steps_.second > 0.0))
            throw std::invalid_argument("finite-difference steps must be positive");
    }

    void require_margin(double u, double v, double h) const {
        if (!bounds_.contains(u, v, 2.0 * h))
            throw BoundaryError("point too close to boundary for finite differences at (" +
                                std::to_string(u) + ", " + std::to_string(v) + ")");
    }

    Fn value_, du_, dv_, uu_, uv_, vv_;
    FdSteps steps_{};
    Rect bounds_{};
    Mode mode_ = Mode::finite_difference;
};

using ParametricMap4 = ParametricMap<Vec4>;
using ParametricMap3 = ParametricMap<Vec3>;
using Jet1x4 = Jet1<Vec4>;
using Jet2x4 = Jet2<Vec4>;

/// Rectangular sampling grid, nu x nv points including both ends.
struct Domain {
    double u_min = 0.0, u_max = 1.0, v_min = 0.0, v_max = 1.0;
    int nu = 2, nv = 2;

    /// Throws std::invalid_argument on empty or inverted ranges.
    void validate() const;
    double u_at(int i) const;
    double v_at(int j) const;
    double du() const { return (u_max - u_min) / (nu - 1); }
    double dv() const { return (v_max - v_min) / (nv - 1); }
    std::size_t size() const { return static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv); }
};

/// Scalar field with optional closed-form partials (finite differences otherwise).
struct ScalarField {
    std::function<double(double, double)> value;
    std::function<double(double, double)> du;
    std::function<double(double, double)> dv;
    double step = 1e-5;

    double operator()(double u, double v) const { return value(u, v); }
    double partial_u(double u, double v) const;
    double partial_v(double u, double v) const;
};

Jet2x4 evaluate_jet(const ParametricMap4& map, double u, double v);

struct H3Check {
    double norm_residual = 0.0;  ///< |<x,x> + 1|
    double tangent_u = 0.0;      ///< |<x, x_u>|
    double tangent_v = 0.0;      ///< |<x, x_v>|
    bool upper_branch = false;   ///< x_1 > 0

    bool passes(double tol) const {
        return upper_branch && norm_residual <= tol && tangent_u <= tol && tangent_v <= tol;
    }
};

H3Check check_on_h3(const Jet1x4& jet);
H3Check check_on_h3(const Jet2x4& jet);

}  // namespace hgfs
