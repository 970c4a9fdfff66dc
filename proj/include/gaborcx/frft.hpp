#pragma once

// Fractional Fourier transform on uniformly sampled signals:
//
//   F_a f(w) = c_a e^{pi i w^2 cot a} \int f(t) e^{pi i t^2 cot a} e^{-2 pi i t w / sin a} dt
//
// with F_{2 pi k} f = f and F_{(2k+1) pi} f(w) = f(-w). The output lives on the
// input grid. Angles with |sin a| < kSinFloor are evaluated as
// F_{a - pi/2} o F_{pi/2} so the chirp kernel stays well conditioned.

#include <span>

#include "gaborcx/tf_core.hpp"

namespace gaborcx {

inline constexpr double kSinFloor = 0.1;

enum class FrftMethod { DirectQuadrature, ChirpFft, BranchExact };

const char* to_string(FrftMethod m);

/// Square root of 1 - i cot(alpha) with positive real part. Throws
/// BranchError when alpha is an exact multiple of pi.
cplx c_alpha(double alpha);

struct FrftPlan {
    RotationAngle alpha;
    GridSpec grid;
    /// BranchExact iff alpha is within the exactness threshold of k pi.
    FrftMethod method = FrftMethod::DirectQuadrature;
    /// Generic angle with |sin alpha| < kSinFloor, run as two quarter-turn-offset stages.
    bool decomposed = false;
};

/// `generic` picks the kernel used for non-branch angles (DirectQuadrature
/// or ChirpFft).
FrftPlan plan_frft(const GridSpec& grid, double alpha, FrftMethod generic = FrftMethod::DirectQuadrature);

SampledSignal execute(const FrftPlan& plan, const SampledSignal& f);

SampledSignal frft(const SampledSignal& f, double alpha, FrftMethod generic = FrftMethod::DirectQuadrature);

/// Single-stage chirp quadrature evaluated at arbitrary output points. Throws
/// NearSingularAngleError when |sin alpha| < kSinFloor; callers wanting those
/// angles go through frft / frft_at.
std::vector<cplx> frft_kernel_at(const SampledSignal& f, double alpha, std::span<const double> out_points);

/// F_alpha f at arbitrary (possibly off-grid) points. Branch and near-singular
/// angles are routed through the classical transform, which doubles as
/// band-limited interpolation of the samples.
std::vector<cplx> frft_at(const SampledSignal& f, double alpha, std::span<const double> out_points);

/// max |F_beta(F_alpha f) - F_{alpha+beta} f| over the central 80% of the grid.
double frft_additivity_check(const SampledSignal& f, double alpha, double beta,
                             FrftMethod generic = FrftMethod::DirectQuadrature);

}  // namespace gaborcx
