#include "gaborcx/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaborcx/errors.hpp"

namespace gaborcx {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_positive_a(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("a must be positive");
}

void require_sorted_nonempty(std::span<const double> values, const char* name) {
    if (values.empty()) throw ParameterError(std::string(name) + " must be non-empty");
    if (!std::is_sorted(values.begin(), values.end())) {
        throw ParameterError(std::string(name) + " must be sorted");
    }
}

}  // namespace

cplx vphi_phi_closed(double x, double omega) {
    return kInvSqrt2 * std::exp(-0.5 * kPi * (x * x + omega * omega)) * std::polar(1.0, -kPi * x * omega);
}

cplx vphi_mgs_closed(const ModulatedGaussianSum& f, double x, double omega) {
    cplx sum{0.0, 0.0};
    for (const auto& term : f.terms) {
        sum += term.coeff * std::polar(1.0, -2.0 * kPi * term.shift * omega) *
               vphi_phi_closed(x - term.shift, omega - term.modulation);
    }
    return sum;
}

cplx vphi_fpm_closed(double a, Sign sign, double x, double omega) {
    require_positive_a(a);
    const double s = sign_value(sign);
    const cplx i{0.0, 1.0};
    const cplx z = (kPi / (2.0 * a)) * cplx{omega, x};
    const cplx bracket = (1.0 - s * i) * std::exp(z) + (1.0 + s * i) * std::exp(-z);
    const double envelope = std::exp(-kPi / (8.0 * a * a)) / (2.0 * std::sqrt(2.0)) *
                            std::exp(-0.5 * kPi * (x * x + omega * omega));
    return envelope * std::polar(1.0, -kPi * x * omega) * bracket;
}

cplx vphi_fpm_coshsinh(double a, Sign sign, double x, double omega) {
    require_positive_a(a);
    const double s = sign_value(sign);
    const cplx i{0.0, 1.0};
    const cplx z = (kPi / (2.0 * a)) * cplx{omega, x};
    const double envelope = std::exp(-kPi / (8.0 * a * a)) * kInvSqrt2 *
                            std::exp(-0.5 * kPi * (x * x + omega * omega));
    return envelope * std::polar(1.0, -kPi * x * omega) * (std::cosh(z) - s * i * std::sinh(z));
}

std::vector<cplx> stft_gaussian(const SampledSignal& f, std::span<const TFPoint> points,
                                const StftOptions& options) {
    f.validate();
    const GridSpec& g = f.grid;
    const double r = options.window_radius;
    const double nyquist = 0.5 / g.dt;
    const double slack = 1e-9 * g.dt;

    std::vector<cplx> out;
    out.reserve(points.size());
    for (const TFPoint& p : points) {
        if (p.x - r < g.t_start - slack || p.x + r > g.t_end() + slack) {
            std::ostringstream msg;
            msg << "window [" << p.x - r << ", " << p.x + r << "] around x = " << p.x
                << " exceeds grid [" << g.t_start << ", " << g.t_end() << "]";
            throw ResolutionError(msg.str());
        }
        if (std::abs(p.omega) + options.nyquist_margin > nyquist) {
            std::ostringstream msg;
            msg << "|omega| + margin = " << std::abs(p.omega) + options.nyquist_margin
                << " exceeds Nyquist frequency 1/(2 dt) = " << nyquist;
            throw ResolutionError(msg.str());
        }
        const auto lo = static_cast<std::size_t>(std::max(0.0, std::ceil((p.x - r - g.t_start) / g.dt)));
        const auto hi = std::min(g.length - 1,
                                 static_cast<std::size_t>(std::floor((p.x + r - g.t_start) / g.dt)));
        cplx sum{0.0, 0.0};
        for (std::size_t n = lo; n <= hi; ++n) {
            const double t = g.t(n);
            const double u = t - p.x;
            sum += f.values[n] * std::exp(-kPi * u * u) * std::polar(1.0, -2.0 * kPi * t * p.omega);
        }
        out.push_back(sum * g.dt);
    }
    return out;
}

cplx stft_gaussian(const SampledSignal& f, TFPoint point, const StftOptions& options) {
    return stft_gaussian(f, std::span<const TFPoint>(&point, 1), options).front();
}

std::vector<double> SpectrogramGrid::magnitudes() const {
    std::vector<double> m(data.size());
    std::transform(data.begin(), data.end(), m.begin(), [](cplx v) { return std::abs(v); });
    return m;
}

namespace {

std::vector<TFPoint> grid_points(std::span<const double> xs, std::span<const double> ws) {
    std::vector<TFPoint> pts;
    pts.reserve(xs.size() * ws.size());
    for (double x : xs)
        for (double w : ws) pts.push_back({x, w});
    return pts;
}

}  // namespace

SpectrogramGrid spectrogram(const ModulatedGaussianSum& f, std::span<const double> x_values,
                            std::span<const double> omega_values, SpectrogramMode mode,
                            const GridSpec& grid) {
    if (mode == SpectrogramMode::Numeric) {
        return spectrogram(sample(f, grid), x_values, omega_values, mode);
    }
    require_sorted_nonempty(x_values, "x_values");
    require_sorted_nonempty(omega_values, "omega_values");
    SpectrogramGrid out{{x_values.begin(), x_values.end()}, {omega_values.begin(), omega_values.end()}, {}};
    out.data.reserve(x_values.size() * omega_values.size());
    for (double x : x_values)
        for (double w : omega_values) out.data.push_back(vphi_mgs_closed(f, x, w));
    return out;
}

SpectrogramGrid spectrogram(const SampledSignal& f, std::span<const double> x_values,
                            std::span<const double> omega_values, SpectrogramMode mode) {
    if (mode == SpectrogramMode::ClosedForm) {
        throw ModeError("closed-form spectrogram needs a symbolic signal, got a sampled signal");
    }
    require_sorted_nonempty(x_values, "x_values");
    require_sorted_nonempty(omega_values, "omega_values");
    const auto pts = grid_points(x_values, omega_values);
    return {{x_values.begin(), x_values.end()},
            {omega_values.begin(), omega_values.end()},
            stft_gaussian(f, pts)};
}

}  // namespace gaborcx
