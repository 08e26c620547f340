#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgfs/frames.hpp"

namespace hgfs {

struct SingularityOptions {
    double converge_tol = 1e-10;  ///< Newton stops when |alpha| + |beta| < converge_tol
    int max_iterations = 50;
    double derivative_step = 1e-5;  ///< central differences of invariants
    double hessian_step = 1e-3;     ///< outer stencil of the Hessian of phi
    double hessian_inner_step = 1e-4;  ///< derivative step inside phi for the Hessian stencil
    double corank_tol = 1e-6;
    double d_threshold = 1e-4;
    double hessian_threshold = 1e-3;
    double candidate_factor = 10.0;
};

struct SingularPoint {
    double u = 0.0, v = 0.0;
    double residual = 0.0;  ///< |alpha| + |beta| at the refined point
    int iterations = 0;
};

struct SingularScan {
    std::vector<SingularPoint> points;
    std::size_t candidates = 0;
    std::size_t not_converged = 0;
};

/// Grid scan of (alpha, beta) followed by damped Newton refinement and deduplication.
/// When `u_period` is set, roots are wrapped into (u_max - period, u_max].
SingularScan find_singular_points(const InvariantField& field, const Domain& grid,
                                  const SingularityOptions& opt = {},
                                  std::optional<double> u_period = std::nullopt);
SingularScan find_singular_points(const FramedSurface& fs, const Domain& grid,
                                  const SingularityOptions& opt = {});

/// Refines one starting point; nullopt when Newton does not converge.
std::optional<SingularPoint> refine_singular_point(const InvariantField& field, double u0,
                                                   double v0, const SingularityOptions& opt = {});

enum class SingularityType { cross_cap, s1_plus, s1_minus, not_corank_one, unclassified };

std::string to_string(SingularityType t);

struct SingularityDiagnostics {
    double alpha = 0.0, beta = 0.0;
    std::array<double, 4> ab{};  ///< a1 a2 b1 b2
    std::array<double, 2> c{};   ///< c1 c2
    double d_value = 0.0;        ///< det(b_u c) det(a_v c) - det(b_v c) det(a_u c)
    double phi = 0.0;
    std::array<double, 2> dphi{};         ///< central differences of phi
    std::array<double, 2> dphi_closed{};  ///< c_i (c1^2 + c2^2)(alpha_v beta_u - alpha_u beta_v)
    std::array<double, 3> hessian{};      ///< phi_uu, phi_uv, phi_vv by differences of phi
    double det_hessian = 0.0;
    std::array<double, 3> hessian_closed{};  ///< from second partials of alpha, beta
    double det_hessian_closed = 0.0;
    std::array<double, 2> independence{};  ///< coefficients of eta eta x on nu1, nu2
    std::array<double, 2> xi{};            ///< (c1, c2)
    std::array<double, 2> eta{};           ///< (c2, -c1)
    std::string reason;
};

struct SingularityReport {
    double u = 0.0, v = 0.0;
    SingularityType type = SingularityType::unclassified;
    SingularityDiagnostics diagnostics;
};

/// Corank screen, then the D test, then the sign of det Hess phi.
SingularityReport classify_singularity(const InvariantField& field, double u, double v,
                                       const SingularityOptions& opt = {});
SingularityReport classify_singularity(const FramedSurface& fs, double u, double v,
                                       const SingularityOptions& opt = {});

class DegenerateDirectionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// det(x, xi x, eta x, eta eta x) written in the invariants; alpha, beta partials use step h.
/// Throws DegenerateDirectionError when (c1, c2) vanishes.
double phi(const InvariantField& field, double u, double v, double h = 1e-5);

/// (phi_uu, phi_uv, phi_vv) by central differences of phi; steps from the options.
std::array<double, 3> phi_hessian(const InvariantField& field, double u, double v,
                                  const SingularityOptions& opt = {});

/// The D quantity at (u, v) with invariant partials by central differences of step h.
double d_value(const InvariantField& field, double u, double v, double h = 1e-5);

}  // namespace hgfs
