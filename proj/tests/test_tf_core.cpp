#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gaborcx/errors.hpp"
#include "gaborcx/tf_core.hpp"

using namespace gaborcx;
using Catch::Approx;

TEST_CASE("rotate_tf examples", "[tf_core]") {
    const TFPoint id = rotate_tf({1, 0}, RotationAngle(0.0));
    CHECK(id.x == 1.0);
    CHECK(id.omega == 0.0);

    const TFPoint q = rotate_tf({1, 0}, RotationAngle(kPi / 2));
    CHECK(q.x == Approx(0.0).margin(1e-15));
    CHECK(q.omega == Approx(1.0).margin(1e-15));

    const TFPoint d = rotate_tf({1, 1}, RotationAngle(kPi / 4));
    CHECK(d.x == Approx(0.0).margin(1e-15));
    CHECK(d.omega == Approx(1.41421356).margin(1e-8));
}

TEST_CASE("rotation composition, inverse and isometry", "[tf_core]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-10, 10), ang(-7, 7);
    for (int i = 0; i < 500; ++i) {
        const TFPoint p{coord(rng), coord(rng)};
        const double a = ang(rng), b = ang(rng);
        const TFPoint two = rotate_tf(rotate_tf(p, RotationAngle(a)), RotationAngle(b));
        const TFPoint one = rotate_tf(p, RotationAngle(a + b));
        REQUIRE(std::abs(two.x - one.x) < 1e-12);
        REQUIRE(std::abs(two.omega - one.omega) < 1e-12);

        const TFPoint back = rotate_tf(rotate_tf(p, RotationAngle(a)), RotationAngle(-a));
        REQUIRE(std::abs(back.x - p.x) < 1e-13);
        REQUIRE(std::abs(back.omega - p.omega) < 1e-13);

        REQUIRE(std::abs(rotate_tf(p, RotationAngle(a)).norm() - p.norm()) <= 1e-12 * p.norm());
    }
}

TEST_CASE("angle classification uses the 1e-12 threshold", "[tf_core]") {
    CHECK(RotationAngle(0.0).classify() == AngleClass::MultipleOfTwoPi);
    CHECK(RotationAngle(2 * kPi).classify() == AngleClass::MultipleOfTwoPi);
    CHECK(RotationAngle(-4 * kPi + 5e-13).classify() == AngleClass::MultipleOfTwoPi);
    CHECK(RotationAngle(kPi).classify() == AngleClass::OddMultipleOfPi);
    CHECK(RotationAngle(-3 * kPi).classify() == AngleClass::OddMultipleOfPi);
    CHECK(RotationAngle(kPi + 1e-11).classify() == AngleClass::Generic);
    CHECK(RotationAngle(1e-6).classify() == AngleClass::Generic);
    CHECK_THROWS_AS(RotationAngle(std::nan("")), ParameterError);
    CHECK_THROWS_AS(make_point(INFINITY, 0.0), ParameterError);
}

TEST_CASE("enumerate_lattice", "[tf_core]") {
    SECTION("unrotated unit lattice") {
        TFLattice l{1, 1, RotationAngle(0), {0, 0}, {0, 1}, {0, 0}};
        const auto pts = enumerate_lattice(l);
        REQUIRE(pts.size() == 2);
        CHECK(pts[0] == TFPoint{0, 0});
        CHECK(pts[1] == TFPoint{1, 0});
    }
    SECTION("pure offset") {
        TFLattice l{1, 0.5, RotationAngle(0), {2, 3}, {0, 0}, {0, 1}};
        const auto pts = enumerate_lattice(l);
        REQUIRE(pts.size() == 2);
        CHECK(pts[0] == TFPoint{2, 3});
        CHECK(pts[1] == TFPoint{2, 3.5});
    }
    SECTION("quarter turn") {
        TFLattice l{1, 1, RotationAngle(kPi / 2), {0, 0}, {1, 1}, {0, 0}};
        const auto pts = enumerate_lattice(l);
        REQUIRE(pts.size() == 1);
        CHECK(pts[0].x == Approx(0.0).margin(1e-15));
        CHECK(pts[0].omega == Approx(1.0));
    }
    SECTION("row-major order and size") {
        TFLattice l{0.7, 0.2, RotationAngle(0.4), {0.1, -0.2}, {-2, 3}, {-1, 1}};
        const auto pts = enumerate_lattice(l);
        REQUIRE(pts.size() == 18);
        std::size_t i = 0;
        for (long j = -2; j <= 3; ++j) {
            for (long k = -1; k <= 1; ++k, ++i) {
                const TFPoint e = rotate_tf({0.7 * j, 0.2 * k}, RotationAngle(0.4)) + TFPoint{0.1, -0.2};
                CHECK(pts[i] == e);
            }
        }
    }
    SECTION("errors") {
        TFLattice empty{1, 1, RotationAngle(0), {0, 0}, {1, 0}, {0, 0}};
        CHECK_THROWS_AS(enumerate_lattice(empty), EmptyLatticeError);
        TFLattice bad{0, 1, RotationAngle(0), {0, 0}, {0, 0}, {0, 0}};
        CHECK_THROWS_AS(enumerate_lattice(bad), ParameterError);
        bad.a = 1;
        bad.b = -1;
        CHECK_THROWS_AS(enumerate_lattice(bad), ParameterError);
    }
}

TEST_CASE("eval_mgs examples", "[tf_core]") {
    CHECK(eval_mgs(gaussian(), 0.0) == cplx{1.0, 0.0});
    CHECK(std::abs(eval_mgs(gaussian(), 1.0) - 0.04321391826377226) < 1e-16);

    // f_+ for a = 1 as its two-term decomposition
    const ModulatedGaussianSum fplus{{{cplx{0.5, -0.5}, 0, 0.5}, {cplx{0.5, 0.5}, 0, -0.5}}};
    const cplx v = eval_mgs(fplus, 0.25);
    CHECK(v.real() == Approx(std::sqrt(2.0) * std::exp(-kPi / 16)).epsilon(1e-14));
    CHECK(v.real() == Approx(1.16210).epsilon(0).margin(1e-5));
    CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("eval_mgs is linear in the term list", "[tf_core]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 50; ++trial) {
        ModulatedGaussianSum f, g;
        for (int i = 0; i < 3; ++i) f.terms.push_back({cplx{u(rng), u(rng)}, u(rng), u(rng)});
        for (int i = 0; i < 2; ++i) g.terms.push_back({cplx{u(rng), u(rng)}, u(rng), u(rng)});
        const double t = u(rng);
        const cplx lhs = eval_mgs(concat(f, g), t);
        const cplx rhs = eval_mgs(f, t) + eval_mgs(g, t);
        REQUIRE(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("shift_modulate examples", "[tf_core]") {
    const auto phi = gaussian();
    CHECK(shift_modulate(phi, 0, 0) == phi);

    const auto shifted = shift_modulate(phi, 1, 0);
    REQUIRE(shifted.terms.size() == 1);
    CHECK(shifted.terms[0] == GaussianTerm{cplx{1, 0}, 1, 0});
    CHECK(eval_mgs(shifted, 1.0) == cplx{1.0, 0.0});

    const cplx v = eval_mgs(shift_modulate(phi, 0, 0.5), 1.0);
    CHECK(v.real() == Approx(-0.04321391826377226).epsilon(1e-13));
    CHECK(std::abs(v.imag()) < 1e-16);
}

TEST_CASE("shift_modulate realizes T_x0 M_w0 exactly", "[tf_core]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        ModulatedGaussianSum f;
        for (int i = 0; i < 3; ++i) f.terms.push_back({cplx{u(rng), u(rng)}, u(rng), u(rng)});
        const double x0 = u(rng), w0 = u(rng);
        const auto g = shift_modulate(f, x0, w0);
        // inverse: M_{-w0} T_{-x0}
        const auto back = modulate(time_shift(g, -x0), -w0);
        for (int i = 0; i < 64; ++i) {
            const double t = -4.0 + 8.0 * i / 63.0;
            const cplx expected = std::polar(1.0, 2 * kPi * w0 * (t - x0)) * eval_mgs(f, t - x0);
            REQUIRE(std::abs(eval_mgs(g, t) - expected) < 1e-12);
            REQUIRE(std::abs(eval_mgs(back, t) - eval_mgs(f, t)) < 1e-12);
        }
        // T_{-x0} M_{-w0} undoes it up to the constant e^{-2 pi i w0 x0}
        const auto other = shift_modulate(g, -x0, -w0);
        const cplx c = std::polar(1.0, -2 * kPi * w0 * x0);
        for (double t : {-1.0, 0.0, 0.3, 1.7}) {
            REQUIRE(std::abs(eval_mgs(other, t) - c * eval_mgs(f, t)) < 1e-12);
        }
    }
}

TEST_CASE("reflect", "[tf_core]") {
    const ModulatedGaussianSum f{{{cplx{0.3, -1.1}, 0.4, 0.9}, {cplx{-0.2, 0.5}, -1.0, 0.1}}};
    const auto r = reflect(f);
    for (double t : {-2.0, -0.5, 0.0, 0.7, 1.9}) CHECK(std::abs(eval_mgs(r, t) - eval_mgs(f, -t)) < 1e-14);
}

TEST_CASE("grids and sampled signals", "[tf_core]") {
    const GridSpec g = default_grid();
    CHECK(g.t(0) == -8.0);
    CHECK(g.t_end() == 8.0);
    CHECK(g.is_symmetric());
    CHECK_FALSE(GridSpec{-8, 1.0 / 128, 2048}.is_symmetric());
    CHECK_THROWS_AS(GridSpec({0, 0.0, 10}).validate(), ParameterError);
    CHECK_THROWS_AS(GridSpec({0, 0.1, 1}).validate(), ParameterError);

    SampledSignal s{g, std::vector<cplx>(10)};
    CHECK_THROWS_AS(s.validate(), ParameterError);
    SampledSignal n = sample(gaussian(), g);
    n.values[3] = cplx{NAN, 0};
    CHECK_THROWS_AS(n.validate(), ParameterError);

    // |phi|^2 integrates to 1/sqrt(2)
    const auto phi = sample(gaussian(), g);
    CHECK(l2_norm(phi) * l2_norm(phi) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
}
