#pragma once

// Counterexample pairs for Gabor phase retrieval on lattices.
//
// Base pair:        f_{+/-}(t) = e^{-pi t^2} (cos(pi t / a) +/- sin(pi t / a))
// Transformed pair: f_{+/-}^{alpha,lambda} = T_{x0} M_{w0} F_{-alpha} f_{+/-}
//
// |V_phi f_+^{alpha,lambda}| and |V_phi f_-^{alpha,lambda}| coincide on
// R_alpha(a Z x R) + lambda although the two signals differ by more than a
// global phase.

#include <optional>
#include <string>

#include "gaborcx/frft.hpp"
#include "gaborcx/gabor.hpp"
#include "gaborcx/tf_core.hpp"

namespace gaborcx {

/// f_{+/-} from the closed formula (cos/sin form), independent of the
/// modulated-Gaussian representation.
double eval_fpm(double a, Sign sign, double t);

/// Two-term decomposition ((1 -/+ i)/2) M_{1/2a} phi + ((1 +/- i)/2) M_{-1/2a} phi.
ModulatedGaussianSum fpm_terms(double a, Sign sign);

struct GridPolicy {
    GridSpec grid = default_grid();
    /// Off-grid time shifts are refused unless this is set; then they are
    /// realized by band-limited interpolation through the FrFT quadrature.
    bool allow_interpolation = false;
    FrftMethod frft_method = FrftMethod::DirectQuadrature;
};

enum class ShiftMethod { None, GridAligned, Interpolated };

const char* to_string(ShiftMethod m);

struct TransformProvenance {
    GridSpec grid;
    FrftMethod frft_method = FrftMethod::BranchExact;
    bool frft_decomposed = false;
    ShiftMethod shift = ShiftMethod::None;
    /// Signed sample offset for a grid-aligned shift.
    long shift_samples = 0;

    friend bool operator==(const TransformProvenance&, const TransformProvenance&) = default;
};

struct CounterexamplePair {
    double a = 1.0;
    RotationAngle alpha;
    TFPoint lambda;
    /// Present for the base pair and whenever alpha is a multiple of pi
    /// (the FrFT then stays inside the modulated-Gaussian family).
    std::optional<ModulatedGaussianSum> plus_symbolic;
    std::optional<ModulatedGaussianSum> minus_symbolic;
    SampledSignal plus_sampled;
    SampledSignal minus_sampled;
    TransformProvenance provenance;

    bool is_base() const { return alpha.radians() == 0.0 && lambda == TFPoint{}; }
    const SampledSignal& sampled(Sign s) const { return s == Sign::Plus ? plus_sampled : minus_sampled; }
    const std::optional<ModulatedGaussianSum>& symbolic(Sign s) const {
        return s == Sign::Plus ? plus_symbolic : minus_symbolic;
    }
};

/// Throws ParameterError unless a > 0.
CounterexamplePair make_base_pair(double a, const GridSpec& grid = default_grid());

/// Sample the base pair, apply F_{-alpha}, then shift by x0 and modulate by
/// w0 on the grid. Throws AlignmentError for an off-grid x0 unless the policy
/// allows interpolation. Samples shifted in from outside the grid are zero.
CounterexamplePair make_transformed_pair(double a, double alpha, TFPoint lambda,
                                         const GridPolicy& policy = {});

/// |V_phi f_{+/-}^{alpha,lambda}(p)| = |V_phi f_{+/-}(R_{-alpha}(p - lambda))|, exact.
double mag_oracle(double a, Sign sign, double alpha, TFPoint lambda, TFPoint p);

/// Intermediate majorant
///   e^{-pi/8a^2} e^{(pi/2a)(|x-x0| + |w-w0|)} e^{-(pi/2)((x-x0)^2 + (w-w0)^2)}.
/// Throws ParameterError unless a > 0 and epsilon > 0.
double decay_bound(double a, TFPoint lambda, double epsilon, TFPoint p);

/// e^{-(pi/2 - epsilon)(x^2 + w^2)}.
double decay_envelope_shape(double epsilon, TFPoint p);

struct DecayEnvelope {
    double a = 1.0;
    TFPoint lambda;
    double epsilon = 0.1;
    double C_epsilon = 1.0;

    /// Throws ParameterError unless a > 0, epsilon > 0 and C_epsilon >= 1.
    void validate() const;
    double operator()(TFPoint p) const { return C_epsilon * decay_envelope_shape(epsilon, p); }
};

/// Square sampling region [lo, hi]^2 with the given step (endpoints included).
struct SquareGrid {
    double lo = -6.0;
    double hi = 6.0;
    double step = 0.05;

    std::vector<double> axis() const;
};

/// Smallest C >= 1 with decay_bound <= C e^{-(pi/2-eps)|p|^2} on `region`,
/// times `safety`.
DecayEnvelope fit_C_epsilon(double a, TFPoint lambda, double epsilon, const SquareGrid& region = {},
                            double safety = 1.05);

/// Global supremum of decay_bound / e^{-(pi/2-eps)|p|^2} over the whole plane
/// (maximized coordinate-wise in closed form), clamped below at 1.
double sup_C_epsilon(double a, TFPoint lambda, double epsilon);

}  // namespace gaborcx
