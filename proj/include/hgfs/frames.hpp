#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgfs/minkowski.hpp"
#include "hgfs/surface.hpp"

namespace hgfs {

/// Base surface x together with the frame pair (nu1, nu2).
struct FramedSurface {
    ParametricMap4 x, nu1, nu2;
    Domain domain;
    /// Period in u when the parametrization closes up (ruled surfaces).
    std::optional<double> u_period;
    std::string name;
};

/// Frame data at one parameter point. nu3 = wedge3(x, nu1, nu2).
struct FrameAt {
    double u = 0.0, v = 0.0;
    Vec4 x, xu, xv;
    Vec4 nu1, nu1u, nu1v;
    Vec4 nu2, nu2u, nu2v;
    Vec4 nu3;
};

/// Largest deviation of (x, nu1, nu2, nu3) from a pseudo-orthonormal frame.
double gram_residual(const Vec4& x, const Vec4& nu1, const Vec4& nu2, const Vec4& nu3);

class DegenerateFrameError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The twelve basic invariants; index 1 belongs to d/du, index 2 to d/dv.
struct Invariants {
    double a1 = 0, b1 = 0, c1 = 0, e1 = 0, f1 = 0, g1 = 0;
    double a2 = 0, b2 = 0, c2 = 0, e2 = 0, f2 = 0, g2 = 0;

    double alpha() const { return b1 * c2 - b2 * c1; }
    double beta() const { return c1 * a2 - c2 * a1; }
    double constraint() const { return a1 * b2 - a2 * b1; }

    /// Order a1 a2 b1 b2 c1 c2 e1 e2 f1 f2 g1 g2 (the CSV column order).
    std::array<double, 12> as_array() const;
    static Invariants from_array(const std::array<double, 12>& a);
};

using InvariantField = std::function<Invariants(double, double)>;

/// Componentwise linear combination s*p + t*q, used for difference quotients of fields.
Invariants combine(double s, const Invariants& p, double t, const Invariants& q);
double max_abs_diff(const Invariants& p, const Invariants& q);

FrameAt frame_at(const FramedSurface& fs, double u, double v);

/// Throws DegenerateFrameError when the frame's Gram residual exceeds frame_tol.
Invariants basic_invariants(const FrameAt& f, double frame_tol = 1e-4);
Invariants invariants_at(const FramedSurface& fs, double u, double v, double frame_tol = 1e-4);
InvariantField invariant_field(const FramedSurface& fs, double frame_tol = 1e-4);

struct GridSample {
    double u = 0.0, v = 0.0;
    Invariants inv;
};

/// Samples in v-major order: index = j * nu + i.
std::vector<GridSample> invariant_grid(const InvariantField& field, const Domain& grid);
std::vector<GridSample> invariant_grid(const FramedSurface& fs, const Domain& grid);

struct FramedResidualSummary {
    double gram = 0.0;          ///< worst Gram deviation of (x, nu1, nu2, nu3)
    double x_component = 0.0;   ///< |<x^x_u^x_v, x>|
    double off_span = 0.0;      ///< |<x^x_u^x_v, nu3>|
    double alpha_beta = 0.0;    ///< |<x^x_u^x_v, nu_i>| against alpha, beta
    double constraint = 0.0;    ///< |a1 b2 - a2 b1|
    double worst_u = 0.0, worst_v = 0.0;
    bool ok = false;
};

FramedResidualSummary verify_framed(const FramedSurface& fs, const Domain& grid,
                                    double tol = 1e-8);

/// Six compatibility residuals per sample plus their maxima over the grid.
struct IntegrabilityResiduals {
    std::vector<std::array<double, 6>> per_sample;  ///< v-major
    std::array<double, 6> max_abs{};
    double max() const;
};

IntegrabilityResiduals integrability_residuals(const InvariantField& field, const Domain& grid,
                                               double h = 1e-5);
IntegrabilityResiduals integrability_residuals(const FramedSurface& fs, const Domain& grid,
                                               double h = 1e-5);
/// Residuals at one point from the invariants and their partials.
std::array<double, 6> integrability_at(const Invariants& inv, const Invariants& inv_u,
                                       const Invariants& inv_v);

enum class Reflection { negate_nu1, negate_both, swap };

Invariants reflect(const Invariants& inv, Reflection r);
FramedSurface reflect_frame(const FramedSurface& fs, Reflection r);

/// nu1' = cos t nu1 - sin t nu2, nu2' = sin t nu1 + cos t nu2.
FramedSurface rotate_frame(const FramedSurface& fs, const ScalarField& theta);
Invariants rotated_invariants(const Invariants& inv, double theta, double theta_u,
                              double theta_v);

/// Jacobian of (p,q) -> (u,v): rows are d/dp and d/dq.
struct Jacobian2 {
    double u_p = 1, v_p = 0, u_q = 0, v_q = 1;
    double det() const { return u_p * v_q - v_p * u_q; }
};

Invariants reparametrize_invariants(const Invariants& inv, const Jacobian2& jac);

struct Reparametrization {
    std::function<std::array<double, 2>(double, double)> map;  ///< (p,q) -> (u,v)
    std::function<Jacobian2(double, double)> jacobian;
};

/// Pull back through (p,q) -> (u,v); partials by the chain rule.
FramedSurface reparametrize(const FramedSurface& fs, const Reparametrization& r,
                            const Domain& new_domain);

class FrameConstructionError : public std::domain_error {
public:
    enum class Kind { precondition_violated, degenerate_angles };
    FrameConstructionError(Kind k, const std::string& what) : std::domain_error(what), kind(k) {}
    Kind kind;
};

enum class PolePolicy {
    /// At nu_2 = nu_3 = 0 the azimuth is undefined; use 0 and flag it.
    zero_azimuth,
    /// Refuse with degenerate_angles instead.
    reject
};

struct NormalFrame {
    Vec4 nu1, nu2;
    bool azimuth_defaulted = false;
};

/// Builds (nu1, nu2) from x and a unit spacelike nu with <x,nu> = 0 and <x^x_u^x_v, nu> = 0,
/// through the spherical parametrization of nu and Gram-Schmidt against x.
NormalFrame construct_frame_from_normal(const Jet1x4& x, const Vec4& nu, double tol = 1e-8,
                                        PolePolicy pole = PolePolicy::zero_azimuth);

/// Whole-surface version with the frame maps in finite-difference mode.
FramedSurface framed_surface_from_normal(const ParametricMap4& x, const ParametricMap4& nu,
                                         const Domain& domain, double tol = 1e-8,
                                         PolePolicy pole = PolePolicy::zero_azimuth);

enum class ReductionTag {
    framed_a_zero,
    framed_b_zero,
    family_u,
    family_v,
    rotatable_to_framed,
    generic
};

std::string to_string(ReductionTag t);

struct ReductionResult {
    ReductionTag tag = ReductionTag::generic;
    std::optional<double> theta;        ///< only for rotatable_to_framed
    std::vector<ReductionTag> satisfied;  ///< every reduction that holds at the point
};

ReductionResult reduction_type(const Invariants& inv, double tol = 1e-8);

/// Shifts each angle by a multiple of pi so consecutive entries differ by at most pi/2.
void unwrap_rotation_angles(std::vector<double>& row);

enum class Direction { u, v };

/// Curvatures of the one-parameter family of framed curves along `dir`.
struct FamilyCurvatures {
    double m = 0, n = 0, a = 0, b = 0;  ///< along the curve
    double P = 0, Q = 0, M = 0, N = 0, A = 0, B = 0;  ///< across the family
};

class NotAFamilyError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

FamilyCurvatures family_curvatures(const Invariants& inv, Direction dir, double tol = 1e-8);

/// x, nu1, nu2, nu3 as one state.
struct FrameState {
    Vec4 x, nu1, nu2, nu3;
};

FrameState frame_state(const FrameAt& f);

struct LineSpec {
    Direction dir = Direction::v;  ///< the parameter that varies
    double fixed = 0.0;            ///< value of the other parameter
    double start = 0.0;
    double span = 1.0;  ///< may be negative
    double step = 1e-3;
    int reorthonormalize_every = 0;  ///< 0 disables
};

struct LineTrajectory {
    std::vector<double> t;
    std::vector<FrameState> states;
    double gram_drift = 0.0;  ///< worst Gram residual along the line
};

/// Coefficients (a, b, c, e, f, g) of the frame derivative along one direction.
using FrameCoefficients = std::array<double, 6>;
FrameCoefficients coefficients(const Invariants& inv, Direction dir);

/// d/dt of the state for the coefficient row k.
FrameState frame_derivative(const FrameState& s, const FrameCoefficients& k);

/// Fixed-step RK4 for the frame equations along a coordinate line.
LineTrajectory integrate_frame_along_line(const InvariantField& field, const FrameState& init,
                                          const LineSpec& line);

/// Same integrator with an arbitrary coefficient function of the line parameter.
LineTrajectory integrate_frame(const std::function<FrameCoefficients(double)>& coeffs,
                               const FrameState& init, double start, double span, double step,
                               int reorthonormalize_every = 0);

/// Modified Gram-Schmidt in R^4_1 on (x, nu1, nu2); nu3 rebuilt by wedge3.
FrameState reorthonormalize(const FrameState& s);

}  // namespace hgfs
