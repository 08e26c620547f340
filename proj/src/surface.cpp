#include "hgfs/surface.hpp"

#include <cmath>

namespace hgfs {

void Domain::validate() const {
    if (!std::isfinite(u_min) || !std::isfinite(u_max) || !std::isfinite(v_min) ||
        !std::isfinite(v_max))
        throw std::invalid_argument("domain bounds must be finite");
    if (!(u_min < u_max) || !(v_min < v_max))
        throw std::invalid_argument("domain ranges must satisfy min < max");
    if (nu < 2 || nv < 2) throw std::invalid_argument("grid needs at least 2 samples per axis");
}

double Domain::u_at(int i) const {
    if (i == nu - 1) return u_max;
    return u_min + (u_max - u_min) * static_cast<double>(i) / static_cast<double>(nu - 1);
}

double Domain::v_at(int j) const {
    if (j == nv - 1) return v_max;
    return v_min + (v_max - v_min) * static_cast<double>(j) / static_cast<double>(nv - 1);
}

double ScalarField::partial_u(double u, double v) const {
    if (du) return du(u, v);
    return (value(u + step, v) - value(u - step, v)) / (2.0 * step);
}

double ScalarField::partial_v(double u, double v) const {
    if (dv) return dv(u, v);
    return (value(u, v + step) - value(u, v - step)) / (2.0 * step);
}

Jet2x4 evaluate_jet(const ParametricMap4& map, double u, double v) { return map.jet(u, v); }

H3Check check_on_h3(const Jet1x4& jet) {
    H3Check c;
    c.norm_residual = std::abs(dot4(jet.x, jet.x) + 1.0);
    c.tangent_u = std::abs(dot4(jet.x, jet.xu));
    c.tangent_v = std::abs(dot4(jet.x, jet.xv));
    c.upper_branch = jet.x[0] > 0.0;
    return c;
}

H3Check check_on_h3(const Jet2x4& jet) { return check_on_h3(Jet1x4{jet.x, jet.xu, jet.xv}); }

}  // namespace hgfs
