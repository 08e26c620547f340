#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgfs/frames.hpp"
#include "hgfs/singularities.hpp"

namespace hgfs {

/// Value and partials up to order two of a scalar function of (u, v).
struct ScalarJet {
    double val = 0, du = 0, dv = 0, duu = 0, duv = 0, dvv = 0;
};

using ScalarJetFn = std::function<ScalarJet(double, double)>;

struct KnownSingularity {
    double u = 0.0, v = 0.0;
    SingularityType type = SingularityType::unclassified;
};

using AlphaBetaFn = std::function<std::array<double, 2>(double, double)>;

struct Example {
    std::string name;
    std::string description;
    FramedSurface surface;  ///< closed-form partials; default domain in surface.domain
    std::optional<InvariantField> invariants_oracle;
    std::optional<AlphaBetaFn> alpha_beta_oracle;
    std::vector<KnownSingularity> known_singularities;
    std::string singular_set;  ///< short text description, empty when isolated or none
};

class UnknownExampleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Built-in names plus `horocyclic:<profile.csv>`.
Example get_example(const std::string& name);
std::vector<std::string> list_examples();

/// Corank-one family x = (sqrt(u^2 + f^2 + g^2 + 1), u, f, g); requires f_v(0,0) = g_v(0,0) = 0.
Example corank_one(const ScalarJetFn& f, const ScalarJetFn& g, const std::string& name = "corank_one");

/// alpha, beta of the corank-one family from the jets of f and g.
std::array<double, 2> corank_one_alpha_beta(const ScalarJet& f, const ScalarJet& g, double u);

Invariants cross_cap_invariants(double u, double v);
Invariants ruled_a_invariants(double u, double v);
Invariants ruled_b_invariants(double u, double v);

}  // namespace hgfs
