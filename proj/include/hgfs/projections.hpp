#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgfs/frames.hpp"

namespace hgfs {

class ProjectionError : public std::domain_error {
public:
    enum class Kind {
        off_h3,
        wrong_branch,
        outside_ball,
        normalization_degenerate,
        nonspacelike_projected_normal,
        precondition_violated
    };
    ProjectionError(Kind k, const std::string& what) : std::domain_error(what), kind(k) {}
    Kind kind;
};

/// Hyperboloid (upper sheet) to Poincare ball.
Vec3 to_poincare(const Vec4& x, double tol = 1e-9);
/// Poincare ball to hyperboloid.
Vec4 from_poincare(const Vec3& p);

/// Generalized framed surface in the Poincare 3-disc.
struct DiscFramedSurface {
    ParametricMap3 x, nu1, nu2;
    Domain domain;
    std::string name;
};

/// Disc-side framed identity at one point.
struct DiscFrameCheck {
    double radius = 0.0;        ///< |x|
    double unit = 0.0;          ///< max(| |nu1| - 1 |, | |nu2| - 1 |)
    double orthogonality = 0.0; ///< |nu1 . nu2|
    double off_span = 0.0;      ///< |(x_u x x_v) . (nu1 x nu2)|
    double alpha = 0.0, beta = 0.0;  ///< (x_u x x_v) . nu1, (x_u x x_v) . nu2
};

DiscFrameCheck check_disc_frame(const DiscFramedSurface& d, double u, double v);

/// Unnormalized disc frame vectors (p, q, r) for nu1 and nu2 at one point.
std::array<Vec3, 2> disc_frame_numerators(const Vec4& x, const Vec4& nu1, const Vec4& nu2);

/// x -> pi(x), nu_i -> normalized (p_i, q_i, r_i). Disc base partials by the chain rule.
DiscFramedSurface transport_to_disc(const FramedSurface& fs);

/// Unnormalized H^3 frame vectors (p, q, r, s) for nu1 and nu2 at one point.
std::array<Vec4, 2> h3_frame_numerators(const Vec3& x, const Vec3& nu1, const Vec3& nu2);

/// x -> pi^-1(x), nu_i -> (p, q, r, s)_i normalized by sqrt(-p^2 + q^2 + r^2 + s^2).
FramedSurface transport_to_h3(const DiscFramedSurface& d);

/// Coordinate dropped by the projection H^3 -> R^3_1; the first coordinate is always kept.
enum class Axis { x2 = 1, x3 = 2, x4 = 3 };

std::string to_string(Axis a);
Axis parse_axis(const std::string& s);

Vec3 drop_axis(const Vec4& x, Axis a);
/// Inserts `value` at the position of `a`.
Vec4 insert_axis(const Vec3& x, double value, Axis a);

/// Projected base surface with the unit spacelike field t.
struct LightconeCandidate {
    ParametricMap3 x, t;
    Domain domain;
    Axis axis = Axis::x4;
};

/// Checks that the projected nu3 is spacelike at every grid point and throws
/// ProjectionError(nonspacelike_projected_normal) naming the first offending point otherwise.
LightconeCandidate project_to_r31(const FramedSurface& fs, Axis axis, const Domain& grid,
                                  double tol = 1e-10);

/// Grid points where the projected nu3 is spacelike (v-major flags).
std::vector<bool> spacelike_mask(const FramedSurface& fs, Axis axis, const Domain& grid,
                                 double tol = 1e-10);

/// max |<x_u ^ x_v, t>| over the grid.
double lightcone_residual(const LightconeCandidate& c, const Domain& grid);

/// Lightlike pair with <l+, l-> = -2 spanning the orthogonal complement of unit spacelike t.
std::array<Vec3, 2> lightcone_frame_from_t(const Vec3& t);

struct LightconePair {
    ParametricMap3 plus, minus;
};

/// Lifted surface with a unit normal-type field nu.
struct LiftedSurface {
    ParametricMap4 x, nu;
    Domain domain;
    Axis axis = Axis::x4;
    bool from_lightcone_frame = false;
};

/// Inserts sqrt(-1 + x1^2 - x2^2 - x3^2) at `axis`. With a lightcone frame the normal comes from
/// the explicit lightcone formula, otherwise from a tangent direction of the lift.
LiftedSurface lift_from_r31(const ParametricMap3& xt, Axis axis, const Domain& grid,
                            const std::optional<LightconePair>& frame = std::nullopt,
                            double tol = 1e-10);

struct LiftCheck {
    double on_h3 = 0.0;        ///< max |<x,x> + 1|
    double nu_unit = 0.0;      ///< max |<nu,nu> - 1|
    double nu_x = 0.0;         ///< max |<x, nu>|
    double nu_wedge = 0.0;     ///< max |<x ^ x_u ^ x_v, nu>|
};

LiftCheck check_lift(const LiftedSurface& l, const Domain& grid);

/// Full framed surface from a lift via the spherical construction.
FramedSurface framed_from_lift(const LiftedSurface& l, double tol = 1e-8);

}  // namespace hgfs
