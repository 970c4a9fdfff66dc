#include "gaborcx/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "gaborcx/errors.hpp"

namespace gaborcx {
namespace {

bool close(double u, double v, double tol) { return std::abs(u - v) <= tol * std::max(1.0, std::abs(u)); }

std::vector<double> linspace(double lo, double hi, double spacing) {
    if (hi <= lo) return {lo};
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / spacing - 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

}  // namespace

const char* to_string(Evaluator e) {
    switch (e) {
        case Evaluator::Oracle: return "oracle";
        case Evaluator::Numeric: return "numeric";
        case Evaluator::Both: return "both";
    }
    return "unknown";
}

Evaluator parse_evaluator(const std::string& s) {
    if (s == "oracle") return Evaluator::Oracle;
    if (s == "numeric") return Evaluator::Numeric;
    if (s == "both") return Evaluator::Both;
    throw ParameterError("unknown evaluator '" + s + "' (expected oracle, numeric or both)");
}

MagnitudeReport check_lattice_agreement(const CounterexamplePair& pair, const TFLattice& lattice, double tol,
                                        Evaluator evaluator, bool enforce_contract) {
    if (enforce_contract) {
        constexpr double eps = 1e-12;
        if (!close(pair.a, lattice.a, eps) || !close(pair.alpha.radians(), lattice.alpha.radians(), eps) ||
            !close(pair.lambda.x, lattice.lambda.x, eps) || !close(pair.lambda.omega, lattice.lambda.omega, eps)) {
            std::ostringstream msg;
            msg << "lattice (a=" << lattice.a << ", alpha=" << lattice.alpha.radians() << ", lambda=("
                << lattice.lambda.x << ", " << lattice.lambda.omega << ")) does not belong to the pair (a=" << pair.a
                << ", alpha=" << pair.alpha.radians() << ", lambda=(" << pair.lambda.x << ", " << pair.lambda.omega
                << "))";
            throw ContractError(msg.str());
        }
    }
    const auto points = enumerate_lattice(lattice);

    MagnitudeReport report;
    report.lattice = lattice;
    report.evaluator = evaluator;
    report.tolerance = tol;

    std::vector<cplx> num_plus, num_minus;
    if (evaluator != Evaluator::Oracle) {
        num_plus = stft_gaussian(pair.plus_sampled, points);
        num_minus = stft_gaussian(pair.minus_sampled, points);
    }

    const double alpha = pair.alpha.radians();
    report.records.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        MagnitudeRecord rec;
        rec.point = points[i];
        if (evaluator == Evaluator::Numeric) {
            rec.plus = std::abs(num_plus[i]);
            rec.minus = std::abs(num_minus[i]);
            rec.abs_diff = std::abs(rec.plus - rec.minus);
        } else {
            rec.plus = mag_oracle(pair.a, Sign::Plus, alpha, pair.lambda, points[i]);
            rec.minus = mag_oracle(pair.a, Sign::Minus, alpha, pair.lambda, points[i]);
            rec.abs_diff = std::abs(rec.plus - rec.minus);
            if (evaluator == Evaluator::Both) {
                rec.numeric_plus = std::abs(num_plus[i]);
                rec.numeric_minus = std::abs(num_minus[i]);
                rec.abs_diff = std::max(rec.abs_diff, std::abs(*rec.numeric_plus - *rec.numeric_minus));
                const double cross =
                    std::max(std::abs(*rec.numeric_plus - rec.plus), std::abs(*rec.numeric_minus - rec.minus));
                report.max_cross_deviation = std::max(report.max_cross_deviation, cross);
            }
        }
        report.max_abs_diff = std::max(report.max_abs_diff, rec.abs_diff);
        report.records.push_back(rec);
    }
    report.max_abs_diff = std::max(report.max_abs_diff, report.max_cross_deviation);
    report.passed = report.max_abs_diff < tol;
    return report;
}

SeparationReport check_offlattice_separation(const CounterexamplePair& pair, const Region& region, double min_gap,
                                             std::optional<double> spacing) {
    if (!(region.x_hi >= region.x_lo) || !(region.omega_hi >= region.omega_lo) || !std::isfinite(region.x_lo) ||
        !std::isfinite(region.x_hi) || !std::isfinite(region.omega_lo) || !std::isfinite(region.omega_hi)) {
        throw ParameterError("separation region must be a bounded box with lo <= hi");
    }
    SeparationReport report;
    report.region = region;
    report.min_gap = min_gap;
    report.spacing = spacing.value_or(std::min(pair.a, 1.0) / 64.0);
    if (!(report.spacing > 0.0)) throw ParameterError("search spacing must be positive");

    const auto xs = linspace(region.x_lo, region.x_hi, report.spacing);
    const auto ws = linspace(region.omega_lo, region.omega_hi, report.spacing);
    report.gap = -1.0;
    for (double x : xs) {
        for (double w : ws) {
            const double g = separation_gap_at(pair, {x, w}, Evaluator::Oracle);
            if (g > report.gap) {
                report.gap = g;
                report.argmax = {x, w};
            }
        }
    }
    report.passed = report.gap >= min_gap;
    return report;
}

double separation_gap_at(const CounterexamplePair& pair, TFPoint p, Evaluator evaluator) {
    switch (evaluator) {
        case Evaluator::Oracle:
            return std::abs(mag_oracle(pair.a, Sign::Plus, pair.alpha.radians(), pair.lambda, p) -
                            mag_oracle(pair.a, Sign::Minus, pair.alpha.radians(), pair.lambda, p));
        case Evaluator::Numeric:
            return std::abs(std::abs(stft_gaussian(pair.plus_sampled, p)) -
                            std::abs(stft_gaussian(pair.minus_sampled, p)));
        case Evaluator::Both:
            break;
    }
    throw ParameterError("separation gap needs a single evaluator");
}

DistinctnessReport check_global_phase_distinct(const SampledSignal& f, const SampledSignal& g, double tol_phase) {
    DistinctnessReport r;
    r.tol_phase = tol_phase;
    r.norm_f = l2_norm(f);
    r.norm_g = l2_norm(g);
    if (r.norm_f <= 1e-10 || r.norm_g <= 1e-10) {
        throw DegenerateInputError("global-phase test needs two nonzero signals");
    }
    r.inner_product_modulus = std::abs(inner_product(f, g));
    r.cosine_similarity = std::min(1.0, r.inner_product_modulus / (r.norm_f * r.norm_g));
    r.phase_equivalent = r.cosine_similarity > 1.0 - tol_phase;
    return r;
}

DistinctnessReport check_global_phase_distinct(const CounterexamplePair& pair, double tol_phase) {
    DistinctnessReport r = check_global_phase_distinct(pair.plus_sampled, pair.minus_sampled, tol_phase);
    if (pair.is_base()) {
        const double t = pair.a / 4.0;
        r.witness = PointWitness{t, eval_fpm(pair.a, Sign::Plus, t), eval_fpm(pair.a, Sign::Minus, t)};
    }
    return r;
}

DecayReport check_decay(const CounterexamplePair& pair, const DecayEnvelope& envelope, const SquareGrid& grid) {
    envelope.validate();
    if (!close(envelope.a, pair.a, 1e-12) || !close(envelope.lambda.x, pair.lambda.x, 1e-12) ||
        !close(envelope.lambda.omega, pair.lambda.omega, 1e-12)) {
        throw ContractError("decay envelope was fitted for a different (a, lambda)");
    }
    return check_decay(pair, envelope.epsilon, envelope.C_epsilon, grid);
}

DecayReport check_decay(const CounterexamplePair& pair, double epsilon, double C, const SquareGrid& grid) {
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    if (!(C > 0.0)) throw ParameterError("envelope constant must be positive");
    DecayReport r;
    r.epsilon = epsilon;
    r.C_epsilon = C;
    r.grid = grid;
    const auto axis = grid.axis();
    const double alpha = pair.alpha.radians();
    for (double x : axis) {
        for (double w : axis) {
            const TFPoint p{x, w};
            const double bound = C * decay_envelope_shape(epsilon, p);
            for (Sign s : {Sign::Plus, Sign::Minus}) {
                const double m = mag_oracle(pair.a, s, alpha, pair.lambda, p);
                ++r.points_checked;
                r.worst_ratio = std::max(r.worst_ratio, m / bound);
                if (m > bound) {
                    if (r.violation_count == 0) r.first_violation = p;
                    ++r.violation_count;
                }
            }
        }
    }
    r.passed = r.violation_count == 0;
    return r;
}

// ---------------------------------------------------------------------------
// Property battery

namespace {

struct Property {
    const char* name;
    double tolerance;
    std::function<PropertyResult(std::mt19937_64&, const BatteryConfig&)> run;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double max_abs_diff(const SampledSignal& f, const SampledSignal& g) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.values[i] - g.values[i]));
    return m;
}

ModulatedGaussianSum random_gaussian_sum(std::mt19937_64& rng) {
    ModulatedGaussianSum f;
    for (int i = 0; i < 3; ++i) {
        f.terms.push_back({cplx{uniform(rng, -1, 1), uniform(rng, -1, 1)}, uniform(rng, -1, 1), uniform(rng, -1, 1)});
    }
    return f;
}

PropertyResult result(double residual, std::string detail) { return {"", residual, 0.0, false, std::move(detail)}; }

const std::vector<Property>& registry() {
    static const std::vector<Property> props = {
        {"rotation-composition", 1e-12,
         [](std::mt19937_64& rng, const BatteryConfig&) {
             double worst = 0.0;
             for (int i = 0; i < 100; ++i) {
                 const TFPoint p{uniform(rng, -5, 5), uniform(rng, -5, 5)};
                 const double a = uniform(rng, -2 * kPi, 2 * kPi);
                 const double b = uniform(rng, -2 * kPi, 2 * kPi);
                 const TFPoint two = rotate_tf(rotate_tf(p, RotationAngle(a)), RotationAngle(b));
                 const TFPoint one = rotate_tf(p, RotationAngle(a + b));
                 worst = std::max({worst, std::abs(two.x - one.x), std::abs(two.omega - one.omega)});
             }
             return result(worst, "max |R_b R_a p - R_{a+b} p| over 100 random (p, a, b)");
         }},
        {"rotation-isometry", 1e-12,
         [](std::mt19937_64& rng, const BatteryConfig&) {
             double worst = 0.0;
             for (int i = 0; i < 100; ++i) {
                 const TFPoint p{uniform(rng, -5, 5), uniform(rng, -5, 5)};
                 const TFPoint q = rotate_tf(p, RotationAngle(uniform(rng, -2 * kPi, 2 * kPi)));
                 worst = std::max(worst, std::abs(q.norm() - p.norm()) / p.norm());
             }
             return result(worst, "max relative change of |p| under rotation, 100 samples");
         }},
        {"gabor-radial", 1e-13,
         [](std::mt19937_64& rng, const BatteryConfig&) {
             double worst = 0.0;
             for (int i = 0; i < 100; ++i) {
                 const TFPoint p{uniform(rng, -3, 3), uniform(rng, -3, 3)};
                 const TFPoint q = rotate_tf(p, RotationAngle(uniform(rng, 0, 2 * kPi)));
                 worst = std::max(worst, std::abs(std::abs(vphi_phi_closed(p.x, p.omega)) -
                                                  std::abs(vphi_phi_closed(q.x, q.omega))));
             }
             return result(worst, "| |V phi(p)| - |V phi(R p)| |, 100 random rotations");
         }},
        {"gabor-covariance", 1e-12,
         [](std::mt19937_64& rng, const BatteryConfig&) {
             const double u = uniform(rng, -2, 2);
             const double eta = uniform(rng, -2, 2);
             const auto g = shift_modulate(gaussian(), u, eta);
             double worst = 0.0;
             for (int i = 0; i < 25; ++i) {
                 const double x = uniform(rng, -3, 3);
                 const double w = uniform(rng, -3, 3);
                 worst = std::max(worst, std::abs(std::abs(vphi_mgs_closed(g, x, w)) -
                                                  std::abs(vphi_phi_closed(x - u, w - eta))));
             }
             return result(worst, "| |V T_u M_eta phi| - |V phi(. - (u, eta))| | at 25 probes");
         }},
        {"fpm-line-identity", 1e-12,
         [](std::mt19937_64& rng, const BatteryConfig&) {
             double worst = 0.0;
             for (double a : {0.5, 1.0, 2.0}) {
                 for (int k = -3; k <= 3; ++k) {
                     for (int i = 0; i < 64; ++i) {
                         const double w = uniform(rng, -4, 4);
                         const double p = std::abs(vphi_fpm_closed(a, Sign::Plus, a * k, w));
                         const double m = std::abs(vphi_fpm_closed(a, Sign::Minus, a * k, w));
                         worst = std::max(worst, std::abs(p - m) / std::max(p, m));
                     }
                 }
             }
             return result(worst, "relative | |V f+| - |V f-| | on x = a k, a in {0.5,1,2}, k in [-3,3]");
         }},
        {"fpm-two-forms", 1e-12,
         [](std::mt19937_64&, const BatteryConfig&) {
             double worst = 0.0;
             for (double a : {0.5, 1.0, 2.0}) {
                 for (Sign s : {Sign::Plus, Sign::Minus}) {
                     for (int ix = 0; ix <= 50; ++ix) {
                         for (int iw = 0; iw <= 50; ++iw) {
                             const double x = -3.0 + 0.12 * ix;
                             const double w = -3.0 + 0.12 * iw;
                             const cplx u = vphi_fpm_closed(a, s, x, w);
                             const cplx v = vphi_fpm_coshsinh(a, s, x, w);
                             // scale: magnitude of the Gaussian envelope at this point
                             const double scale = std::max({std::abs(u), std::abs(v),
                                                            std::exp(-kPi / (8 * a * a) - 0.5 * kPi * (x * x + w * w))});
                             worst = std::max(worst, std::abs(u - v) / scale);
                         }
                     }
                 }
             }
             return result(worst, "relative |factored - cosh/sinh| on 51x51 grid over [-3,3]^2");
         }},
        {"closed-vs-numeric", 1e-6,
         [](std::mt19937_64&, const BatteryConfig& cfg) {
             double worst = 0.0;
             for (const auto& f : {gaussian(), fpm_terms(1.0, Sign::Plus), fpm_terms(1.0, Sign::Minus)}) {
                 const SampledSignal s = sample(f, cfg.grid);
                 for (int ix = 0; ix <= 32; ++ix) {
                     for (int iw = 0; iw <= 32; ++iw) {
                         const TFPoint p{-3.0 + 0.1875 * ix, -3.0 + 0.1875 * iw};
                         worst = std::max(worst, std::abs(stft_gaussian(s, p) - vphi_mgs_closed(f, p.x, p.omega)));
                     }
                 }
             }
             return result(worst, "max |numeric - closed| on 33x33 grid over [-3,3]^2 for phi, f+, f-");
         }},
        {"frft-unitarity", 1e-6,
         [](std::mt19937_64& rng, const BatteryConfig& cfg) {
             double worst = 0.0;
             for (int trial = 0; trial < 3; ++trial) {
                 const SampledSignal f = sample(random_gaussian_sum(rng), cfg.grid);
                 const SampledSignal g = sample(random_gaussian_sum(rng), cfg.grid);
                 const double alpha = uniform(rng, 0.2, kPi - 0.2) * (trial % 2 == 0 ? 1.0 : -1.0);
                 const cplx before = inner_product(f, g);
                 const cplx after = inner_product(frft(f, alpha), frft(g, alpha));
                 worst = std::max(worst, std::abs(after - before) / (l2_norm(f) * l2_norm(g)));
             }
             return result(worst, "|<F f, F g> - <f, g>| / (|f||g|), 3 random Gaussian-sum pairs");
         }},
        {"frft-gaussian-fixed-point", 1e-6,
         [](std::mt19937_64&, const BatteryConfig& cfg) {
             const SampledSignal phi = sample(gaussian(), cfg.grid);
             double worst = 0.0;
             for (int k = 0; k < 8; ++k) {
                 const double alpha = (k + 0.5) * 2.0 * kPi / 8.0;
                 worst = std::max(worst, max_abs_diff(frft(phi, alpha), phi));
             }
             return result(worst, "max |F_a phi - phi| for a = (k + 1/2) pi/4, k = 0..7");
         }},
        {"frft-additivity", 1e-5,
         [](std::mt19937_64&, const BatteryConfig& cfg) {
             const SampledSignal phi = sample(gaussian(), cfg.grid);
             const SampledSignal fp = sample(fpm_terms(1.0, Sign::Plus), cfg.grid);
             const double worst = std::max(frft_additivity_check(phi, kPi / 2, kPi / 2),
                                           frft_additivity_check(fp, kPi / 3, kPi / 6));
             return result(worst, "max |F_b F_a f - F_{a+b} f| on the central 80%");
         }},
        {"frft-branch-continuity", 1e-4,
         [](std::mt19937_64&, const BatteryConfig& cfg) {
             const SampledSignal f = sample(fpm_terms(1.0, Sign::Plus), cfg.grid);
             double worst = 0.0;
             for (double base : {0.0, 2.0 * kPi, kPi}) {
                 const SampledSignal exact = frft(f, base);
                 for (double d : {-1e-6, 1e-6}) worst = std::max(worst, max_abs_diff(frft(f, base + d), exact));
             }
             return result(worst, "generic path at k pi +/- 1e-6 vs exact branch");
         }},
        {"frft-tf-rotation", 1e-5,
         [](std::mt19937_64& rng, const BatteryConfig& cfg) {
             const SampledSignal f = sample(fpm_terms(1.0, Sign::Plus), cfg.grid);
             double worst = 0.0;
             for (double alpha : {kPi / 6, kPi / 3, 1.0, uniform(rng, -kPi, kPi)}) {
                 const SampledSignal rotated = frft(f, alpha);
                 for (int i = 0; i < 16; ++i) {
                     const TFPoint p{uniform(rng, -2, 2), uniform(rng, -2, 2)};
                     const TFPoint q = rotate_tf(p, RotationAngle(alpha));
                     worst = std::max(worst, std::abs(std::abs(stft_gaussian(rotated, p)) -
                                                      std::abs(vphi_fpm_closed(1.0, Sign::Plus, q.x, q.omega))));
                 }
             }
             return result(worst, "| |V F_a f+(p)| - |V f+(R_a p)| | at 16 random p per angle");
         }},
    };
    return props;
}

}  // namespace

std::vector<std::string> registered_properties() {
    std::vector<std::string> names;
    for (const auto& p : registry()) names.emplace_back(p.name);
    return names;
}

BatteryReport run_property_battery(const BatteryConfig& config) {
    const auto& props = registry();
    std::vector<std::size_t> selected;
    if (!config.properties) {
        for (std::size_t i = 0; i < props.size(); ++i) selected.push_back(i);
    } else {
        for (const auto& name : *config.properties) {
            const auto it = std::find_if(props.begin(), props.end(), [&](const Property& p) { return name == p.name; });
            if (it == props.end()) throw ParameterError("unknown property '" + name + "'");
            selected.push_back(static_cast<std::size_t>(it - props.begin()));
        }
    }

    BatteryReport report;
    if (selected.empty()) {
        report.passed = true;
        report.note = "no properties run";
        return report;
    }
    report.passed = true;
    for (std::size_t idx : selected) {
        // per-property stream so results do not depend on the selection
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(idx)};
        std::mt19937_64 rng(seq);
        PropertyResult r = props[idx].run(rng, config);
        r.name = props[idx].name;
        r.tolerance = config.tolerance_override.value_or(props[idx].tolerance);
        r.passed = r.residual < r.tolerance;
        report.passed = report.passed && r.passed;
        report.results.push_back(std::move(r));
    }
    return report;
}

}  // namespace gaborcx
