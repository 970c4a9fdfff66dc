#include "gaborcx/frft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <utility>

#include "fft.hpp"
#include "gaborcx/errors.hpp"

namespace gaborcx {
namespace {

std::vector<double> trapezoid_weights(std::size_t n, double dt) {
    std::vector<double> w(n, dt);
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

void require_floor(double alpha) {
    if (std::abs(std::sin(alpha)) < kSinFloor) {
        std::ostringstream msg;
        msg << "|sin(" << alpha << ")| < " << kSinFloor
            << "; decompose as F_{alpha - pi/2} o F_{pi/2}";
        throw NearSingularAngleError(msg.str());
    }
}

// Chirp-premultiplied samples g_n = w_n f_n e^{pi i t_n^2 cot a}.
std::vector<cplx> premultiply(const SampledSignal& f, double cot) {
    const auto w = trapezoid_weights(f.size(), f.grid.dt);
    std::vector<cplx> g(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) {
        const double t = f.t(n);
        g[n] = w[n] * f.values[n] * std::polar(1.0, kPi * t * t * cot);
    }
    return g;
}

// On-grid output via Bluestein: with t_n = t0 + n d and w_m = t0 + m d,
//   t_n w_m = t0^2 + t0 d (n + m) + d^2 (n^2 + m^2 - (m - n)^2) / 2
// turns the chirp-modulated DFT into a linear convolution with e^{i beta j^2},
// beta = pi d^2 / sin a.
std::vector<cplx> kernel_chirp_fft(const SampledSignal& f, double alpha) {
    const double s = std::sin(alpha);
    const double cot = std::cos(alpha) / s;
    const double t0 = f.grid.t_start;
    const double d = f.grid.dt;
    const std::size_t n = f.size();
    const double beta = kPi * d * d / s;

    auto g = premultiply(f, cot);
    const std::size_t len = std::bit_ceil(2 * n - 1);
    std::vector<cplx> h(len, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        h[k] = g[k] * std::polar(1.0, -2.0 * kPi * t0 * d * kk / s - beta * kk * kk);
    }
    std::vector<cplx> chirp(len, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        const double jj = static_cast<double>(j);
        const cplx c = std::polar(1.0, beta * jj * jj);
        chirp[j] = c;
        if (j != 0) chirp[len - j] = c;
    }
    h = detail::cyclic_convolution(std::move(h), std::move(chirp));

    const cplx c_a = c_alpha(alpha);
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double mm = static_cast<double>(m);
        const double w = f.t(m);
        const double phase = kPi * w * w * cot - 2.0 * kPi * (t0 * t0 + t0 * d * mm) / s - beta * mm * mm;
        out[m] = c_a * std::polar(1.0, phase) * h[m];
    }
    return out;
}

SampledSignal generic_stage(const SampledSignal& f, double alpha, FrftMethod method) {
    std::vector<double> pts(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) pts[i] = f.t(i);
    SampledSignal out{f.grid, {}};
    if (method == FrftMethod::ChirpFft) {
        require_floor(alpha);
        out.values = kernel_chirp_fft(f, alpha);
    } else {
        out.values = frft_kernel_at(f, alpha, pts);
    }
    return out;
}

}  // namespace

const char* to_string(FrftMethod m) {
    switch (m) {
        case FrftMethod::DirectQuadrature: return "direct-quadrature";
        case FrftMethod::ChirpFft: return "chirp-fft";
        case FrftMethod::BranchExact: return "branch-exact";
    }
    return "unknown";
}

cplx c_alpha(double alpha) {
    if (RotationAngle(alpha).is_multiple_of_pi()) {
        throw BranchError("c_alpha is undefined at multiples of pi; use the exact branches");
    }
    const double cot = std::cos(alpha) / std::sin(alpha);
    // principal root has Re >= 0; Re = 0 only for a non-positive radicand, excluded here
    return std::sqrt(cplx{1.0, -cot});
}

std::vector<cplx> frft_kernel_at(const SampledSignal& f, double alpha, std::span<const double> out_points) {
    f.validate();
    if (RotationAngle(alpha).is_multiple_of_pi()) {
        throw BranchError("generic kernel called at a multiple of pi");
    }
    require_floor(alpha);
    const double s = std::sin(alpha);
    const double cot = std::cos(alpha) / s;
    const cplx c_a = c_alpha(alpha);
    const auto g = premultiply(f, cot);

    std::vector<double> ts(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) ts[n] = f.t(n);

    std::vector<cplx> out;
    out.reserve(out_points.size());
    for (double w : out_points) {
        const double rate = -2.0 * kPi * w / s;
        cplx sum{0.0, 0.0};
        for (std::size_t n = 0; n < g.size(); ++n) sum += g[n] * std::polar(1.0, rate * ts[n]);
        out.push_back(c_a * std::polar(1.0, kPi * w * w * cot) * sum);
    }
    return out;
}

FrftPlan plan_frft(const GridSpec& grid, double alpha, FrftMethod generic) {
    grid.validate();
    if (generic == FrftMethod::BranchExact) {
        throw ParameterError("branch-exact is selected by the angle, not requested");
    }
    FrftPlan plan{RotationAngle(alpha), grid, generic, false};
    if (plan.alpha.is_multiple_of_pi()) {
        plan.method = FrftMethod::BranchExact;
        if (plan.alpha.classify() == AngleClass::OddMultipleOfPi && !grid.is_symmetric()) {
            throw AlignmentError("reflection branch needs a grid symmetric about t = 0");
        }
    } else {
        plan.decomposed = std::abs(std::sin(alpha)) < kSinFloor;
    }
    return plan;
}

SampledSignal execute(const FrftPlan& plan, const SampledSignal& f) {
    f.validate();
    if (!(f.grid == plan.grid)) throw ParameterError("signal grid does not match the FrFT plan");
    const double alpha = plan.alpha.radians();
    switch (plan.alpha.classify()) {
        case AngleClass::MultipleOfTwoPi:
            return f;
        case AngleClass::OddMultipleOfPi: {
            SampledSignal out = f;
            std::reverse(out.values.begin(), out.values.end());
            return out;
        }
        case AngleClass::Generic:
            break;
    }
    if (plan.decomposed) {
        return generic_stage(generic_stage(f, kPi / 2.0, plan.method), alpha - kPi / 2.0, plan.method);
    }
    return generic_stage(f, alpha, plan.method);
}

SampledSignal frft(const SampledSignal& f, double alpha, FrftMethod generic) {
    return execute(plan_frft(f.grid, alpha, generic), f);
}

std::vector<cplx> frft_at(const SampledSignal& f, double alpha, std::span<const double> out_points) {
    const RotationAngle angle(alpha);
    if (!angle.is_multiple_of_pi() && std::abs(std::sin(alpha)) >= kSinFloor) {
        return frft_kernel_at(f, alpha, out_points);
    }
    const SampledSignal inner = generic_stage(f, kPi / 2.0, FrftMethod::DirectQuadrature);
    return frft_kernel_at(inner, alpha - kPi / 2.0, out_points);
}

double frft_additivity_check(const SampledSignal& f, double alpha, double beta, FrftMethod generic) {
    const SampledSignal two_step = frft(frft(f, alpha, generic), beta, generic);
    const SampledSignal one_step = frft(f, alpha + beta, generic);
    const std::size_t n = f.size();
    const auto lo = static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(n)));
    const auto hi = static_cast<std::size_t>(std::floor(0.9 * static_cast<double>(n)));
    double worst = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        worst = std::max(worst, std::abs(two_step.values[i] - one_step.values[i]));
    }
    return worst;
}

}  // namespace gaborcx
