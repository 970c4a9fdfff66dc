#include "gaborcx/tf_core.hpp"

#include <cmath>
#include <string>

#include "gaborcx/errors.hpp"

namespace gaborcx {

double TFPoint::norm() const { return std::hypot(x, omega); }

TFPoint make_point(double x, double omega) {
    if (!std::isfinite(x) || !std::isfinite(omega)) {
        throw ParameterError("time-frequency point coordinates must be finite");
    }
    return {x, omega};
}

RotationAngle::RotationAngle(double radians) : value_(radians) {
    if (!std::isfinite(radians)) {
        throw ParameterError("rotation angle must be finite");
    }
}

AngleClass RotationAngle::classify() const {
    const double k = std::round(value_ / kPi);
    if (std::abs(value_ - k * kPi) >= kAngleExactness) {
        return AngleClass::Generic;
    }
    return std::fmod(std::abs(k), 2.0) == 0.0 ? AngleClass::MultipleOfTwoPi
                                              : AngleClass::OddMultipleOfPi;
}

TFPoint rotate_tf(TFPoint p, RotationAngle alpha) {
    const double c = std::cos(alpha.radians());
    const double s = std::sin(alpha.radians());
    return {p.x * c - p.omega * s, p.x * s + p.omega * c};
}

void TFLattice::validate() const {
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("a must be positive");
    if (!(b > 0.0) || !std::isfinite(b)) throw ParameterError("b must be positive");
    make_point(lambda.x, lambda.omega);
}

std::vector<TFPoint> enumerate_lattice(const TFLattice& lattice) {
    lattice.validate();
    if (lattice.j_range.empty() || lattice.k_range.empty()) {
        throw EmptyLatticeError("lattice index range is empty");
    }
    std::vector<TFPoint> points;
    points.reserve(lattice.size());
    for (long j = lattice.j_range.lo; j <= lattice.j_range.hi; ++j) {
        for (long k = lattice.k_range.lo; k <= lattice.k_range.hi; ++k) {
            const TFPoint base{lattice.a * static_cast<double>(j), lattice.b * static_cast<double>(k)};
            points.push_back(rotate_tf(base, lattice.alpha) + lattice.lambda);
        }
    }
    return points;
}

ModulatedGaussianSum gaussian() { return {{GaussianTerm{}}}; }

cplx eval_mgs(const ModulatedGaussianSum& f, double t) {
    cplx sum{0.0, 0.0};
    for (const auto& term : f.terms) {
        const double u = t - term.shift;
        sum += term.coeff * std::exp(-kPi * u * u) * std::polar(1.0, 2.0 * kPi * term.modulation * u);
    }
    return sum;
}

// Terms are anchored at their shift: c phi(t - tau) e^{2 pi i xi (t - tau)}.
//
//   M_w [c T_tau M_xi phi](t) = c phi(t - tau) e^{2 pi i xi (t - tau)} e^{2 pi i w t}
//                             = (c e^{2 pi i w tau}) phi(t - tau) e^{2 pi i (xi + w)(t - tau)}
//
// so modulation maps (c, tau, xi) -> (c e^{2 pi i w tau}, tau, xi + w), and
//
//   T_x [c T_tau M_xi phi] = c T_{tau + x} M_xi phi
//
// maps (c, tau, xi) -> (c, tau + x, xi) with no extra phase.

ModulatedGaussianSum time_shift(const ModulatedGaussianSum& f, double x0) {
    ModulatedGaussianSum g = f;
    for (auto& term : g.terms) term.shift += x0;
    return g;
}

ModulatedGaussianSum modulate(const ModulatedGaussianSum& f, double omega0) {
    ModulatedGaussianSum g = f;
    for (auto& term : g.terms) {
        if (omega0 == 0.0) continue;
        term.coeff *= std::polar(1.0, 2.0 * kPi * omega0 * term.shift);
        term.modulation += omega0;
    }
    return g;
}

ModulatedGaussianSum shift_modulate(const ModulatedGaussianSum& f, double x0, double omega0) {
    return time_shift(modulate(f, omega0), x0);
}

// c phi(-t - tau) e^{2 pi i xi (-t - tau)} = c phi(t + tau) e^{2 pi i (-xi)(t + tau)}
ModulatedGaussianSum reflect(const ModulatedGaussianSum& f) {
    ModulatedGaussianSum g = f;
    for (auto& term : g.terms) {
        term.shift = -term.shift;
        term.modulation = -term.modulation;
    }
    return g;
}

ModulatedGaussianSum scale(const ModulatedGaussianSum& f, cplx c) {
    ModulatedGaussianSum g = f;
    for (auto& term : g.terms) term.coeff *= c;
    return g;
}

ModulatedGaussianSum concat(const ModulatedGaussianSum& f, const ModulatedGaussianSum& g) {
    ModulatedGaussianSum h = f;
    h.terms.insert(h.terms.end(), g.terms.begin(), g.terms.end());
    return h;
}

void GridSpec::validate() const {
    if (!std::isfinite(t_start)) throw ParameterError("grid start must be finite");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("grid dt must be positive");
    if (length < 2) throw ParameterError("grid length must be at least 2");
}

bool GridSpec::is_symmetric() const {
    return std::abs(t_start + t_end()) <= 1e-9 * dt;
}

GridSpec default_grid() { return GridSpec{}; }

void SampledSignal::validate() const {
    grid.validate();
    if (values.size() != grid.length) {
        throw ParameterError("sample count " + std::to_string(values.size()) +
                             " does not match grid length " + std::to_string(grid.length));
    }
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ParameterError("sampled signal contains non-finite values");
        }
    }
}

SampledSignal sample(const ModulatedGaussianSum& f, const GridSpec& grid) {
    grid.validate();
    SampledSignal s{grid, std::vector<cplx>(grid.length)};
    for (std::size_t i = 0; i < grid.length; ++i) s.values[i] = eval_mgs(f, grid.t(i));
    return s;
}

cplx inner_product(const SampledSignal& f, const SampledSignal& g) {
    f.validate();
    g.validate();
    if (!(f.grid == g.grid)) throw ParameterError("inner product requires a shared grid");
    const std::size_t n = f.size();
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        sum += w * f.values[i] * std::conj(g.values[i]);
    }
    return sum * f.grid.dt;
}

double l2_norm(const SampledSignal& f) { return std::sqrt(std::abs(inner_product(f, f).real())); }

}  // namespace gaborcx
