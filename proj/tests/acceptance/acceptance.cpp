// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gaborcx/counterexample.hpp"
#include "gaborcx/frft.hpp"
#include "gaborcx/gabor.hpp"
#include "gaborcx/verifier.hpp"
#include "oracles.hpp"

using namespace gaborcx;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const char* title, double time_limit, const std::function<void(Outcome&)>& body) {
    Outcome o;
    o.detail.precision(3);
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (time_limit > 0 && secs >= time_limit) {
        o.ok = false;
        o.detail << " [runtime " << secs << " s over " << time_limit << " s]";
    }
    if (!o.ok) ++failures;
    std::printf("%s criterion %d: %s (%.2f s)%s\n", o.ok ? "PASS" : "FAIL", id, title, secs, o.detail.str().c_str());
    std::fflush(stdout);
}

struct Config {
    double a, alpha;
    TFPoint lambda;
    double b;
};

const std::vector<Config> kRotatedConfigs{
    {1.0, kPi / 3, {0.7, -0.3}, 0.25},
    {0.5, kPi / 6, {0.0, 0.0}, 0.05},
    {2.0, kPi / 2, {1.0, 1.0}, 0.01},
};

TFLattice lattice_of(const Config& c) {
    return TFLattice{c.a, c.b, RotationAngle(c.alpha), c.lambda, {-4, 4}, {-4, 4}};
}

GridPolicy interpolating() { return GridPolicy{default_grid(), true, FrftMethod::DirectQuadrature}; }

double max_dev(const SampledSignal& f, const SampledSignal& g) {
    double m = 0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.values[i] - g.values[i]));
    return m;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int run_shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
    std::mt19937_64 rng(20210515);

    criterion(1, "magnitudes of f+ and f- agree on x = a k (closed form)", 1.0, [&](Outcome& o) {
        std::uniform_real_distribution<double> uw(-4, 4);
        std::vector<double> omegas(256);
        for (double& w : omegas) w = uw(rng);
        double worst = 0;
        for (double a : {0.5, 1.0, 2.0}) {
            for (int k = -4; k <= 4; ++k) {
                for (double w : omegas) {
                    const double p = std::abs(vphi_fpm_closed(a, Sign::Plus, a * k, w));
                    const double m = std::abs(vphi_fpm_closed(a, Sign::Minus, a * k, w));
                    worst = std::max(worst, std::abs(p - m));
                }
            }
        }
        o.detail << " max diff " << worst;
        o.require(worst < 1e-12, "max diff < 1e-12");
    });

    criterion(2, "rotated/shifted lattice agreement (closed form)", 1.0, [&](Outcome& o) {
        double worst = 0;
        for (const Config& c : kRotatedConfigs) {
            for (const TFPoint& p : enumerate_lattice(lattice_of(c))) {
                const double d = std::abs(mag_oracle(c.a, Sign::Plus, c.alpha, c.lambda, p) -
                                          mag_oracle(c.a, Sign::Minus, c.alpha, c.lambda, p));
                worst = std::max(worst, d);
            }
        }
        o.detail << " max diff " << worst;
        o.require(worst < 1e-12, "max diff < 1e-12");
    });

    criterion(3, "numeric pipeline reproduces the lattice agreement and the oracle", 60.0, [&](Outcome& o) {
        double lattice_worst = 0, probe_worst = 0;
        for (const Config& c : kRotatedConfigs) {
            const CounterexamplePair pair = make_transformed_pair(c.a, c.alpha, c.lambda, interpolating());
            const TFLattice L = lattice_of(c);
            const MagnitudeReport r = check_lattice_agreement(pair, L, 1e-5, Evaluator::Both);
            lattice_worst = std::max(lattice_worst, r.max_abs_diff);

            // 50 lattice points and 50 generic points
            const auto pts = enumerate_lattice(L);
            std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
            std::uniform_real_distribution<double> u(-3, 3);
            std::vector<TFPoint> probes;
            for (int i = 0; i < 50; ++i) probes.push_back(pts[pick(rng)]);
            for (int i = 0; i < 50; ++i) probes.push_back(TFPoint{c.lambda.x + u(rng), c.lambda.omega + u(rng)});
            for (Sign s : {Sign::Plus, Sign::Minus}) {
                const auto values = stft_gaussian(pair.sampled(s), probes);
                for (std::size_t i = 0; i < probes.size(); ++i) {
                    const double d = std::abs(std::abs(values[i]) - mag_oracle(c.a, s, c.alpha, c.lambda, probes[i]));
                    probe_worst = std::max(probe_worst, d);
                }
            }
        }
        o.detail << " lattice " << lattice_worst << ", probes " << probe_worst;
        o.require(lattice_worst < 1e-5, "lattice agreement within 1e-5");
        o.require(probe_worst < 1e-5, "oracle agreement within 1e-5");
    });

    criterion(4, "f+ and f- are not equal up to a global phase", 0.0, [&](Outcome& o) {
        const CounterexamplePair pair = make_base_pair(1.0);
        const DistinctnessReport d = check_global_phase_distinct(pair, 1e-8);

        auto fp = [](double t) { return oracle::cplx{oracle::fpm(1, 1, t), 0}; };
        auto fm = [](double t) { return oracle::cplx{oracle::fpm(1, -1, t), 0}; };
        const double npp = oracle::inner(fp, fp).real();
        const double nmm = oracle::inner(fm, fm).real();
        const double cos_ref = std::abs(oracle::inner(fp, fm)) / std::sqrt(npp * nmm);

        const double expected = std::exp(-kPi / 2);
        const double half = 1 / std::sqrt(2.0);
        o.detail << " cosine " << d.cosine_similarity << " (quadrature " << cos_ref << ")";
        o.require(std::abs(d.cosine_similarity - expected) < 1e-5, "cosine = e^{-pi/2} +/- 1e-5");
        o.require(std::abs(cos_ref - expected) < 1e-5, "quadrature cosine = e^{-pi/2} +/- 1e-5");
        o.require(!d.phase_equivalent, "not phase equivalent");
        o.require(std::abs(d.norm_f * d.norm_f - half) < 1e-6 && std::abs(d.norm_g * d.norm_g - half) < 1e-6,
                  "|f+-|^2 = 2^{-1/2} +/- 1e-6");
        o.require(std::abs(npp - half) < 1e-6 && std::abs(nmm - half) < 1e-6, "quadrature norms");

        const double w_plus = eval_fpm(1, Sign::Plus, 0.25);
        const double w_minus = eval_fpm(1, Sign::Minus, 0.25);
        o.require(std::abs(w_plus - std::sqrt(2.0) * std::exp(-kPi / 16)) < 1e-10, "f+(1/4) = sqrt2 e^{-pi/16}");
        o.require(std::abs(w_plus - 1.16210) < 1e-5, "f+(1/4) ~ 1.16210 to five decimals");
        o.require(std::abs(w_minus) < 1e-12, "|f-(1/4)| < 1e-12");
        o.require(d.witness && std::abs(d.witness->g_value) < 1e-12, "report witness");
    });

    criterion(5, "off-lattice separation at (a/2, 0)", 0.0, [&](Outcome& o) {
        const CounterexamplePair pair = make_base_pair(1.0);
        const double target = std::exp(-kPi / 4);
        const double closed = separation_gap_at(pair, {0.5, 0.0}, Evaluator::Oracle);
        const double numeric = separation_gap_at(pair, {0.5, 0.0}, Evaluator::Numeric);
        o.detail << " closed " << std::abs(closed - target) << ", numeric " << std::abs(numeric - target) << " from e^{-pi/4}";
        o.require(std::abs(closed - target) < 1e-10, "closed form within 1e-10");
        o.require(std::abs(numeric - target) < 1e-5, "numeric within 1e-5");
    });

    criterion(6, "fractional Fourier transform battery", 30.0, [&](Outcome& o) {
        const GridSpec g = default_grid();
        const SampledSignal phi = sample(gaussian(), g);

        double fixed = 0;
        for (int k = 0; k < 8; ++k) fixed = std::max(fixed, max_dev(frft(phi, (k + 0.5) * kPi / 4), phi));

        double fourier = 0;
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            const double sv = s == Sign::Plus ? 1.0 : -1.0;
            const SampledSignal F = frft(sample(fpm_terms(1, s), g), kPi / 2);
            for (std::size_t i = 0; i < g.length; i += 8) {
                const oracle::cplx ref =
                    oracle::fourier([&](double t) { return oracle::cplx{oracle::fpm(1, sv, t), 0}; }, g.t(i), 8000);
                fourier = std::max(fourier, std::abs(F.values[i] - ref));
            }
        }

        const SampledSignal fp = sample(fpm_terms(1, Sign::Plus), g);
        const double additivity = std::max({frft_additivity_check(fp, kPi / 3, kPi / 6),
                                            frft_additivity_check(phi, kPi / 2, kPi / 2),
                                            frft_additivity_check(fp, 0.7, -1.9)});

        std::uniform_real_distribution<double> c(-1, 1), sh(-1.5, 1.5), ang(0.2, 6.0);
        double unitarity = 0;
        for (int trial = 0; trial < 3; ++trial) {
            ModulatedGaussianSum f, h;
            for (int i = 0; i < 3; ++i) f.terms.push_back({cplx{c(rng), c(rng)}, sh(rng), sh(rng)});
            for (int i = 0; i < 3; ++i) h.terms.push_back({cplx{c(rng), c(rng)}, sh(rng), sh(rng)});
            const SampledSignal fs_ = sample(f, g), hs = sample(h, g);
            const double alpha = ang(rng);
            const cplx before = inner_product(fs_, hs);
            const cplx after = inner_product(frft(fs_, alpha), frft(hs, alpha));
            unitarity = std::max(unitarity, std::abs(after - before) / (l2_norm(fs_) * l2_norm(hs)));
        }

        o.detail << " fixed point " << fixed << ", Fourier " << fourier << ", additivity " << additivity
                 << ", inner product " << unitarity;
        o.require(fixed < 1e-6, "Gaussian fixed point within 1e-6");
        o.require(fourier < 1e-6, "quarter turn vs quadrature Fourier transform within 1e-6");
        o.require(additivity < 1e-5, "additivity within 1e-5");
        o.require(unitarity < 1e-6, "inner product preserved within 1e-6");
    });

    criterion(7, "fractional Fourier transform rotates the time-frequency plane", 0.0, [&](Outcome& o) {
        const GridSpec g = default_grid();
        const SampledSignal fp = sample(fpm_terms(1, Sign::Plus), g);
        std::uniform_real_distribution<double> u(-2.5, 2.5);
        double rotation = 0, matched = 0, literal = 0;
        for (double alpha : {kPi / 6, kPi / 3, 1.0}) {
            const SampledSignal forward = frft(fp, alpha);
            const SampledSignal backward = frft(fp, -alpha);
            for (int i = 0; i < 16; ++i) {
                const TFPoint p{u(rng), u(rng)};
                const TFPoint ccw = rotate_tf(p, RotationAngle(alpha));
                const TFPoint cw = rotate_tf(p, RotationAngle(-alpha));
                const double fwd = std::abs(stft_gaussian(forward, p));
                const double bwd = std::abs(stft_gaussian(backward, p));
                const double at_ccw = std::abs(vphi_fpm_closed(1, Sign::Plus, ccw.x, ccw.omega));
                const double at_cw = std::abs(vphi_fpm_closed(1, Sign::Plus, cw.x, cw.omega));
                rotation = std::max(rotation, std::abs(fwd - at_ccw));
                matched = std::max(matched, std::abs(bwd - at_cw));
                literal = std::max(literal, std::abs(fwd - at_cw));
            }
        }
        o.detail << " |V F_a f|(p) vs |V f|(R_a p): " << rotation << "; |V F_-a f|(p) vs |V f|(R_-a p): " << matched
                 << "; info: |V F_a f|(p) vs |V f|(R_-a p) differs by " << literal;
        o.require(rotation < 1e-5, "rotation identity within 1e-5");
        o.require(matched < 1e-5, "inverse-angle identity within 1e-5");
    });

    criterion(8, "Gaussian decay envelope", 0.0, [&](Outcome& o) {
        const SquareGrid grid{-5.0, 5.0, 0.1};
        const std::vector<std::pair<double, TFPoint>> cases{{1.0, {0, 0}}, {1.0, {0.7, -0.3}}, {0.5, {0, 0}}};
        std::size_t violations = 0, checked = 0;
        for (const auto& [a, lambda] : cases) {
            const DecayEnvelope env = fit_C_epsilon(a, lambda, 0.1);
            for (double alpha : {0.0, kPi / 3}) {
                const CounterexamplePair pair = make_transformed_pair(a, alpha, lambda, interpolating());
                const DecayReport r = check_decay(pair, env, grid);
                violations += r.violation_count;
                checked += r.points_checked;
                o.require(r.passed, "envelope holds");
            }
            o.detail << " C(a=" << a << ", lambda=(" << lambda.x << "," << lambda.omega << "))=" << env.C_epsilon;
        }
        o.detail << "; " << violations << " violations in " << checked << " checks";
        o.require(violations == 0, "zero violations");
    });

    criterion(9, "verify is deterministic and exits 0 with defaults", 0.0, [&](Outcome& o) {
        const fs::path dir = fs::path(GABORCX_TEST_TMP) / "determinism";
        fs::remove_all(dir);
        fs::create_directories(dir);
        const std::string cmd = std::string("\"") + GABORCX_CLI + "\" verify --out \"" + dir.string() + "\" > \"" +
                                (dir / "log.txt").string() + "\" 2>&1";
        const int first = run_shell(cmd);
        const std::string report1 = slurp(dir / "report.json");
        fs::rename(dir / "report.json", dir / "report.first.json");
        const int second = run_shell(cmd);
        const std::string report2 = slurp(dir / "report.json");
        o.detail << " exit codes " << first << "/" << second << ", report " << report1.size() << " bytes";
        o.require(first == 0 && second == 0, "exit code 0");
        o.require(!report1.empty() && report1 == report2, "byte-identical report.json");
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
