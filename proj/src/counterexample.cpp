#include "gaborcx/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gaborcx/errors.hpp"

namespace gaborcx {
namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be positive");
}

double log_decay_bound(double a, TFPoint lambda, TFPoint p) {
    const TFPoint d = p - lambda;
    return -kPi / (8.0 * a * a) + (kPi / (2.0 * a)) * (std::abs(d.x) + std::abs(d.omega)) -
           0.5 * kPi * (d.x * d.x + d.omega * d.omega);
}

std::optional<ModulatedGaussianSum> transformed_symbolic(const ModulatedGaussianSum& base,
                                                         const RotationAngle& minus_alpha, TFPoint lambda) {
    switch (minus_alpha.classify()) {
        case AngleClass::MultipleOfTwoPi:
            return shift_modulate(base, lambda.x, lambda.omega);
        case AngleClass::OddMultipleOfPi:
            return shift_modulate(reflect(base), lambda.x, lambda.omega);
        case AngleClass::Generic:
            break;
    }
    return std::nullopt;
}

}  // namespace

const char* to_string(ShiftMethod m) {
    switch (m) {
        case ShiftMethod::None: return "none";
        case ShiftMethod::GridAligned: return "grid-aligned";
        case ShiftMethod::Interpolated: return "interpolated";
    }
    return "unknown";
}

double eval_fpm(double a, Sign sign, double t) {
    require_positive(a, "a");
    const double arg = kPi * t / a;
    return std::exp(-kPi * t * t) * (std::cos(arg) + sign_value(sign) * std::sin(arg));
}

ModulatedGaussianSum fpm_terms(double a, Sign sign) {
    require_positive(a, "a");
    const double s = sign_value(sign);
    const double xi = 1.0 / (2.0 * a);
    // 1/2 +/- 1/(2i) = (1 -/+ i)/2
    return {{GaussianTerm{cplx{0.5, -0.5 * s}, 0.0, xi}, GaussianTerm{cplx{0.5, 0.5 * s}, 0.0, -xi}}};
}

CounterexamplePair make_base_pair(double a, const GridSpec& grid) {
    require_positive(a, "a");
    grid.validate();
    CounterexamplePair pair;
    pair.a = a;
    pair.plus_symbolic = fpm_terms(a, Sign::Plus);
    pair.minus_symbolic = fpm_terms(a, Sign::Minus);
    pair.plus_sampled = sample(*pair.plus_symbolic, grid);
    pair.minus_sampled = sample(*pair.minus_symbolic, grid);
    pair.provenance = TransformProvenance{grid, FrftMethod::BranchExact, false, ShiftMethod::None, 0};
    return pair;
}

CounterexamplePair make_transformed_pair(double a, double alpha, TFPoint lambda, const GridPolicy& policy) {
    require_positive(a, "a");
    make_point(lambda.x, lambda.omega);
    const GridSpec& grid = policy.grid;
    const CounterexamplePair base = make_base_pair(a, grid);
    const RotationAngle angle(alpha);
    const FrftPlan plan = plan_frft(grid, -alpha, policy.frft_method);

    CounterexamplePair pair;
    pair.a = a;
    pair.alpha = angle;
    pair.lambda = lambda;
    pair.provenance = TransformProvenance{grid, plan.method, plan.decomposed, ShiftMethod::None, 0};

    const double q = lambda.x / grid.dt;
    const double q_round = std::round(q);
    const bool aligned = std::abs(q - q_round) <= 1e-9 * std::max(1.0, std::abs(q));
    if (!aligned && !policy.allow_interpolation) {
        std::ostringstream msg;
        msg << "x0 = " << lambda.x << " is not a multiple of dt = " << grid.dt
            << " and interpolation is disabled";
        throw AlignmentError(msg.str());
    }

    std::vector<double> shifted_t(grid.length);
    for (std::size_t n = 0; n < grid.length; ++n) shifted_t[n] = grid.t(n) - lambda.x;

    auto transform_one = [&](const SampledSignal& f) {
        SampledSignal out{grid, std::vector<cplx>(grid.length, cplx{0.0, 0.0})};
        if (aligned) {
            const SampledSignal rotated = execute(plan, f);
            const auto shift = static_cast<long>(q_round);
            const auto len = static_cast<long>(grid.length);
            for (long n = 0; n < len; ++n) {
                const long src = n - shift;
                if (src >= 0 && src < len) out.values[static_cast<std::size_t>(n)] = rotated.values[static_cast<std::size_t>(src)];
            }
        } else {
            out.values = frft_at(f, -alpha, shifted_t);
        }
        if (lambda.omega != 0.0) {
            for (std::size_t n = 0; n < grid.length; ++n) {
                out.values[n] *= std::polar(1.0, 2.0 * kPi * lambda.omega * shifted_t[n]);
            }
        }
        return out;
    };

    pair.plus_sampled = transform_one(base.plus_sampled);
    pair.minus_sampled = transform_one(base.minus_sampled);

    if (aligned) {
        pair.provenance.shift_samples = static_cast<long>(q_round);
        pair.provenance.shift = pair.provenance.shift_samples == 0 ? ShiftMethod::None : ShiftMethod::GridAligned;
    } else {
        pair.provenance.shift = ShiftMethod::Interpolated;
        pair.provenance.frft_method = FrftMethod::DirectQuadrature;
        pair.provenance.frft_decomposed = angle.is_multiple_of_pi() || std::abs(std::sin(alpha)) < kSinFloor;
    }

    pair.plus_symbolic = transformed_symbolic(*base.plus_symbolic, -angle, lambda);
    pair.minus_symbolic = transformed_symbolic(*base.minus_symbolic, -angle, lambda);
    return pair;
}

double mag_oracle(double a, Sign sign, double alpha, TFPoint lambda, TFPoint p) {
    require_positive(a, "a");
    const TFPoint y = rotate_tf(p - lambda, RotationAngle(-alpha));
    return std::abs(vphi_fpm_closed(a, sign, y.x, y.omega));
}

double decay_bound(double a, TFPoint lambda, double epsilon, TFPoint p) {
    require_positive(a, "a");
    require_positive(epsilon, "epsilon");
    return std::exp(log_decay_bound(a, lambda, p));
}

double decay_envelope_shape(double epsilon, TFPoint p) {
    return std::exp(-(0.5 * kPi - epsilon) * (p.x * p.x + p.omega * p.omega));
}

void DecayEnvelope::validate() const {
    require_positive(a, "a");
    require_positive(epsilon, "epsilon");
    if (!(C_epsilon >= 1.0)) throw ParameterError("C_epsilon must be at least 1");
}

std::vector<double> SquareGrid::axis() const {
    require_positive(step, "grid step");
    if (!(hi >= lo)) throw ParameterError("grid upper bound below lower bound");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
    return v;
}

DecayEnvelope fit_C_epsilon(double a, TFPoint lambda, double epsilon, const SquareGrid& region, double safety) {
    require_positive(a, "a");
    require_positive(epsilon, "epsilon");
    require_positive(safety, "safety factor");
    const auto axis = region.axis();
    double worst = -std::numeric_limits<double>::infinity();
    for (double x : axis) {
        for (double w : axis) {
            const TFPoint p{x, w};
            const double log_ratio = log_decay_bound(a, lambda, p) + (0.5 * kPi - epsilon) * (x * x + w * w);
            worst = std::max(worst, log_ratio);
        }
    }
    DecayEnvelope env{a, lambda, epsilon, std::max(1.0, safety * std::exp(worst))};
    return env;
}

// Per coordinate u = x - x0 the log-ratio is
//   s|u| - eps u^2 + (pi - 2 eps) x0 u + (pi/2 - eps) x0^2,  s = pi / 2a,
// whose maximum over u is (s + |pi - 2 eps| |x0|)^2 / (4 eps) + (pi/2 - eps) x0^2.
double sup_C_epsilon(double a, TFPoint lambda, double epsilon) {
    require_positive(a, "a");
    require_positive(epsilon, "epsilon");
    const double s = kPi / (2.0 * a);
    auto coord = [&](double c) {
        const double lin = s + std::abs(kPi - 2.0 * epsilon) * std::abs(c);
        return lin * lin / (4.0 * epsilon) + (0.5 * kPi - epsilon) * c * c;
    };
    const double log_sup = -kPi / (8.0 * a * a) + coord(lambda.x) + coord(lambda.omega);
    return std::max(1.0, std::exp(log_sup));
}

}  // namespace gaborcx
