#pragma once

// Domain types of the time-frequency plane: points, rotation angles,
// lattices, modulated Gaussian sums and uniformly sampled signals, together
// with the elementary operators (rotation, time shift, modulation).
//
// Throughout, phi(t) = exp(-pi t^2) is the unit-width Gaussian window.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace gaborcx {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// |alpha - k*pi| below this counts as an exact multiple of pi.
inline constexpr double kAngleExactness = 1e-12;

struct TFPoint {
    double x = 0.0;      // time
    double omega = 0.0;  // frequency

    friend TFPoint operator+(TFPoint p, TFPoint q) { return {p.x + q.x, p.omega + q.omega}; }
    friend TFPoint operator-(TFPoint p, TFPoint q) { return {p.x - q.x, p.omega - q.omega}; }
    friend bool operator==(const TFPoint&, const TFPoint&) = default;

    double norm() const;
};

/// Throws ParameterError if either coordinate is not finite.
TFPoint make_point(double x, double omega);

enum class AngleClass { Generic, MultipleOfTwoPi, OddMultipleOfPi };

class RotationAngle {
public:
    RotationAngle() = default;
    /// Throws ParameterError for non-finite input.
    explicit RotationAngle(double radians);

    double radians() const { return value_; }
    AngleClass classify() const;
    bool is_multiple_of_pi() const { return classify() != AngleClass::Generic; }

    RotationAngle operator-() const { return RotationAngle(-value_); }

private:
    double value_ = 0.0;
};

/// R_alpha(x, w) = (x cos a - w sin a, x sin a + w cos a).
TFPoint rotate_tf(TFPoint p, RotationAngle alpha);

/// Inclusive integer interval [lo, hi]; empty when hi < lo.
struct IndexRange {
    long lo = 0;
    long hi = -1;

    bool empty() const { return hi < lo; }
    std::size_t size() const { return empty() ? 0 : static_cast<std::size_t>(hi - lo + 1); }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Finite window { R_alpha(a j, b k) + lambda : j in j_range, k in k_range }.
struct TFLattice {
    double a = 1.0;
    double b = 1.0;
    RotationAngle alpha;
    TFPoint lambda;
    IndexRange j_range;
    IndexRange k_range;

    /// Throws ParameterError unless a > 0 and b > 0.
    void validate() const;
    std::size_t size() const { return j_range.size() * k_range.size(); }
};

/// Row-major in (j, k): j outer, k inner. Throws EmptyLatticeError on an
/// empty index range.
std::vector<TFPoint> enumerate_lattice(const TFLattice& lattice);

/// One term coeff * exp(-pi (t - shift)^2) * exp(2 pi i modulation (t - shift)),
/// i.e. coeff * T_shift M_modulation phi.
struct GaussianTerm {
    cplx coeff{1.0, 0.0};
    double shift = 0.0;
    double modulation = 0.0;

    friend bool operator==(const GaussianTerm&, const GaussianTerm&) = default;
};

struct ModulatedGaussianSum {
    std::vector<GaussianTerm> terms;

    friend bool operator==(const ModulatedGaussianSum&, const ModulatedGaussianSum&) = default;
};

/// The unit Gaussian phi as a one-term sum.
ModulatedGaussianSum gaussian();

cplx eval_mgs(const ModulatedGaussianSum& f, double t);

/// T_x0 f.
ModulatedGaussianSum time_shift(const ModulatedGaussianSum& f, double x0);
/// M_omega0 f.
ModulatedGaussianSum modulate(const ModulatedGaussianSum& f, double omega0);
/// T_x0 M_omega0 f, exactly (no leftover global phase).
ModulatedGaussianSum shift_modulate(const ModulatedGaussianSum& f, double x0, double omega0);
/// t -> f(-t).
ModulatedGaussianSum reflect(const ModulatedGaussianSum& f);
ModulatedGaussianSum scale(const ModulatedGaussianSum& f, cplx c);
ModulatedGaussianSum concat(const ModulatedGaussianSum& f, const ModulatedGaussianSum& g);

/// Uniform grid t_i = t_start + i dt, i = 0 .. length-1.
struct GridSpec {
    double t_start = -8.0;
    double dt = 1.0 / 128.0;
    std::size_t length = 2049;

    double t(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }
    double t_end() const { return t(length - 1); }
    /// Throws ParameterError unless dt > 0, length >= 2 and all finite.
    void validate() const;
    /// Grid mirrors onto itself under t -> -t.
    bool is_symmetric() const;
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Default verification grid [-8, 8] with dt = 1/128.
GridSpec default_grid();

struct SampledSignal {
    GridSpec grid;
    std::vector<cplx> values;

    /// Throws ParameterError on a malformed grid, a size mismatch or
    /// non-finite samples.
    void validate() const;
    std::size_t size() const { return values.size(); }
    double t(std::size_t i) const { return grid.t(i); }
};

SampledSignal sample(const ModulatedGaussianSum& f, const GridSpec& grid);

/// Trapezoidal-rule inner product sum f conj(g) w_i on a shared grid.
cplx inner_product(const SampledSignal& f, const SampledSignal& g);
double l2_norm(const SampledSignal& f);

}  // namespace gaborcx
