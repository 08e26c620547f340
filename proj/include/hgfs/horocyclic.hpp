#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hgfs/frames.hpp"
#include "hgfs/singularities.hpp"

namespace hgfs {

/// The six curvature functions h1..h6 on [u_min, u_max].
struct HProfile {
    std::array<std::function<double(double)>, 6> h;
    double u_min = 0.0, u_max = 1.0;

    std::array<double, 6> at(double u) const;
};

HProfile constant_profile(const std::array<double, 6>& h, double u_min, double u_max);

class ProfileFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses `u,h1,h2,h3,h4,h5,h6` rows (strictly increasing u) and interpolates with natural
/// cubic splines. Lines starting with '#' are ignored.
HProfile parse_h_profile_csv(const std::string& text);
HProfile load_h_profile_csv(const std::string& path);

/// Curve frame (a0, a1, a2, a3) with pseudo-orthonormality <a0,a0> = -1.
struct CurveFrame {
    std::function<std::array<Vec4, 4>(double)> value;
    std::function<std::array<Vec4, 4>(double)> derivative;
    double u_min = 0.0, u_max = 1.0;
};

/// Curve frame from closed-form value and derivative.
CurveFrame closed_form_curve_frame(std::function<std::array<Vec4, 4>(double)> value,
                                   std::function<std::array<Vec4, 4>(double)> derivative,
                                   double u_min, double u_max);

/// Integrates a0' = h1 a1 + h2 a2 + h3 a3, a1' = h1 a0 + h4 a2 + h5 a3,
/// a2' = h2 a0 - h4 a1 + h6 a3, a3' = h3 a0 - h5 a1 - h6 a2 from u_min with fixed-step RK4,
/// re-orthonormalizing every `reorthonormalize_every` steps. Values between nodes use cubic
/// Hermite interpolation; derivatives come from the equations themselves.
CurveFrame integrate_curve_frame(const HProfile& profile, const std::array<Vec4, 3>& initial,
                                 double step = 1e-3, int reorthonormalize_every = 100);

/// Standard initial frame a0 = e1, a1 = e2, a2 = e3.
std::array<Vec4, 3> standard_initial_frame();

/// x = a0 + v a1 + (v^2/2)(a0 + a2), nu1 = a3, nu2 = -(v^2/2) a0 - v a1 + (1 - v^2/2) a2.
FramedSurface build_horocyclic(const CurveFrame& frame, double v_min = -2.0, double v_max = 2.0,
                               int nu = 21, int nv = 21);
FramedSurface build_horocyclic(const HProfile& profile, double v_min = -2.0, double v_max = 2.0,
                               int nu = 21, int nv = 21);

/// h1..h6 recovered from the curve frame, derivatives by central differences of step h.
std::array<double, 6> extract_h(const CurveFrame& frame, double u, double h = 1e-5);

/// Closed forms of the basic invariants of a horocyclic surface in terms of h1..h6.
Invariants horocyclic_invariants(const std::array<double, 6>& h, double v);

enum class HorocyclicClass {
    conical_horosphere,
    two_vertices,
    single_vertex,
    generalized_horo_cone,
    horo_flat,
    generic
};

std::string to_string(HorocyclicClass c);

struct HorocyclicClassification {
    HorocyclicClass tag = HorocyclicClass::generic;
    std::optional<double> lambda;  ///< h5 = lambda h6 for two_vertices
};

/// Uses the vanishing pattern of h1..h6 at every sample.
HorocyclicClassification classify_horocyclic(const std::vector<std::array<double, 6>>& h_samples,
                                             double tol = 1e-7);

class NotHorocyclicError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Same classes from the basic invariants over (u, v) samples.
HorocyclicClassification invariant_form_classify(const std::vector<GridSample>& samples,
                                                 double tol = 1e-7);

/// Cross cap / S1+ / S1- test at a singular point of a horocyclic surface (a1 = b1 = 0).
SingularityReport horocyclic_classify_singularity(const InvariantField& field, double u,
                                                  double v, const SingularityOptions& opt = {});

}  // namespace hgfs
