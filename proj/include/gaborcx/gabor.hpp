#pragma once

// Gabor transform V_phi f(x, w) = \int f(t) phi(t - x) e^{-2 pi i t w} dt with
// the Gaussian window phi(t) = e^{-pi t^2}. Closed forms cover phi itself,
// modulated Gaussian sums and the counterexample pair f_{+/-}; the numeric
// path discretizes the integral on a sampled signal. The two paths are meant
// to cross-validate each other.

#include <span>
#include <vector>

#include "gaborcx/tf_core.hpp"

namespace gaborcx {

enum class Sign { Plus, Minus };

inline double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

/// V_phi phi(x, w) = 2^{-1/2} e^{-pi i x w} e^{-pi (x^2 + w^2) / 2}.
cplx vphi_phi_closed(double x, double omega);

/// Sum over terms of coeff * e^{-2 pi i tau w} V_phi phi(x - tau, w - xi).
/// Exact under the anchored term convention of ModulatedGaussianSum.
cplx vphi_mgs_closed(const ModulatedGaussianSum& f, double x, double omega);

/// Factored closed form of V_phi f_{+/-} with the common Gaussian pulled out.
/// Throws ParameterError unless a > 0.
cplx vphi_fpm_closed(double a, Sign sign, double x, double omega);

/// Same quantity written with cosh / sinh of (pi / 2a)(w + i x).
cplx vphi_fpm_coshsinh(double a, Sign sign, double x, double omega);

/// Numeric Gabor transform settings. Samples farther than `window_radius`
/// from the window centre are dropped; e^{-pi r^2} < 1e-12 for r = 3.
struct StftOptions {
    double window_radius = 3.0;
    /// Minimal distance between |w| and the Nyquist frequency 1/(2 dt).
    double nyquist_margin = 4.0;
};

/// Riemann-sum Gabor transform of sampled `f` at each point. Throws
/// ResolutionError when the truncated window leaves the grid or a frequency
/// crowds the Nyquist limit.
std::vector<cplx> stft_gaussian(const SampledSignal& f, std::span<const TFPoint> points,
                                const StftOptions& options = {});

cplx stft_gaussian(const SampledSignal& f, TFPoint point, const StftOptions& options = {});

/// Dense evaluation, data indexed [x][w] row-major.
struct SpectrogramGrid {
    std::vector<double> x_values;
    std::vector<double> omega_values;
    std::vector<cplx> data;

    const cplx& at(std::size_t ix, std::size_t iw) const { return data[ix * omega_values.size() + iw]; }
    cplx& at(std::size_t ix, std::size_t iw) { return data[ix * omega_values.size() + iw]; }
    std::vector<double> magnitudes() const;
};

enum class SpectrogramMode { ClosedForm, Numeric };

/// Closed form evaluates vphi_mgs_closed; numeric samples `f` on `grid` first.
SpectrogramGrid spectrogram(const ModulatedGaussianSum& f, std::span<const double> x_values,
                            std::span<const double> omega_values, SpectrogramMode mode,
                            const GridSpec& grid = default_grid());

/// Sampled input only supports the numeric mode; ClosedForm throws ModeError.
SpectrogramGrid spectrogram(const SampledSignal& f, std::span<const double> x_values,
                            std::span<const double> omega_values, SpectrogramMode mode);

}  // namespace gaborcx
