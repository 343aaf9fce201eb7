#include <doctest.h>

#include "test_util.hpp"

using namespace wkbflow;
using namespace wkbflow::test;

TEST_CASE("spectral derivative of a constant vanishes") {
    TorusGrid g = TorusGrid::line(two_pi, 32, 8);
    ScalarField f(g, 3.7);
    CHECK(linf(spectral_deriv(f, 0)) < 1e-13);
}

TEST_CASE("spectral derivative resolves a single harmonic exactly") {
    const double L = 5.0;
    TorusGrid g = TorusGrid::line(L, 32, 8);
    ScalarField f = ScalarField::sample(g, [&](double x, double) {
        return std::sin(two_pi * x / L);
    });
    ScalarField expect = ScalarField::sample(g, [&](double x, double) {
        return two_pi / L * std::cos(two_pi * x / L);
    });
    CHECK(max_abs_diff(spectral_deriv(f, 0), expect) < 1e-12);
}

TEST_CASE("spectral derivative agrees with centered differences at O(dx^2)") {
    auto fd_error = [](int n) {
        TorusGrid g = TorusGrid::line(two_pi, n, 8);
        ScalarField f = random_scalar(g, 42, 5);
        ScalarField d = spectral_deriv(f, 0);
        double err = 0.0;
        const double dx = g.dx(0);
        for (int i = 0; i < n; ++i) {
            const double fd =
                (f.at((i + 1) % n) - f.at((i - 1 + n) % n)) / (2.0 * dx);
            err = std::max(err, std::abs(fd - d.at(i)));
        }
        return err;
    };
    const double e1 = fd_error(64), e2 = fd_error(128);
    CHECK(e1 / e2 > 2.5); // second order: ratio ~ 4
    CHECK(e1 / e2 < 6.0);
}

TEST_CASE("derivative axis out of range is rejected") {
    TorusGrid g = TorusGrid::line(two_pi, 16, 8);
    ScalarField f(g, 1.0);
    CHECK_THROWS_AS(spectral_deriv(f, 1), ConfigError);
}

TEST_CASE("mixed spatial derivatives commute") {
    TorusGrid g = TorusGrid::plane(two_pi, 4.0, 32, 24, 8);
    ScalarField f = random_scalar(g, 7, 4);
    ScalarField dxy = spectral_deriv(spectral_deriv(f, 0), 1);
    ScalarField dyx = spectral_deriv(spectral_deriv(f, 1), 0);
    CHECK(max_abs_diff(dxy, dyx) < 1e-11);
}

TEST_CASE("theta average picks out the constant harmonic") {
    TorusGrid g = TorusGrid::line(two_pi, 16, 16);

    LoopField c = LoopField::sample(g, [](double, double, double) { return 2.5; });
    CHECK(max_abs_diff(theta_average(c), ScalarField(g, 2.5)) < 1e-14);

    LoopField osc = LoopField::sample(g, [](double x, double, double th) {
        return (1.0 + std::sin(x)) * std::cos(th);
    });
    CHECK(linf(theta_average(osc)) < 1e-14);

    LoopField sq = LoopField::sample(g, [](double x, double, double th) {
        return (2.0 + std::cos(x)) * std::cos(th) * std::cos(th);
    });
    ScalarField half = ScalarField::sample(g, [](double x, double) {
        return 0.5 * (2.0 + std::cos(x));
    });
    CHECK(max_abs_diff(theta_average(sq), half) < 1e-14);
}

TEST_CASE("theta antiderivative inverts the angle derivative") {
    TorusGrid g = TorusGrid::line(two_pi, 16, 32);

    SUBCASE("sin -> -cos, cos -> sin") {
        LoopField s = LoopField::sample(g, [](double, double, double th) {
            return std::sin(th);
        });
        LoopField expect_s = LoopField::sample(g, [](double, double, double th) {
            return -std::cos(th);
        });
        CHECK(max_abs_diff(theta_antiderivative(s), expect_s) < 1e-13);

        LoopField c = LoopField::sample(g, [](double, double, double th) {
            return std::cos(th);
        });
        LoopField expect_c = LoopField::sample(g, [](double, double, double th) {
            return std::sin(th);
        });
        CHECK(max_abs_diff(theta_antiderivative(c), expect_c) < 1e-13);
    }

    SUBCASE("round trip on a random zero-mean field") {
        LoopField f = random_loop(g, 11, 3, 8);
        LoopField back = theta_antiderivative(theta_derivative(f));
        CHECK(max_abs_diff(back, f) < 1e-12);
    }

    SUBCASE("antiderivative of d_theta recovers the fluctuating part") {
        LoopField f = random_loop(g, 12, 3, 8, 1.0, /*include_mean=*/true);
        LoopField recon = theta_antiderivative(theta_derivative(f));
        LoopField fluct = f;
        for (int ix = 0; ix < g.points(); ++ix) fluct.coeff(ix, 0) = 0.0;
        CHECK(max_abs_diff(recon, fluct) < 1e-12);
    }

    SUBCASE("nonzero mean is rejected") {
        LoopField f = LoopField::sample(g, [](double, double, double th) {
            return 0.1 + std::cos(th);
        });
        CHECK_THROWS_AS(theta_antiderivative(f), MeanNotZero);
    }

    SUBCASE("theta average of an angle derivative is exactly zero") {
        LoopField f = random_loop(g, 13, 4, 8, 1.0, true);
        ScalarField mean = theta_average(theta_derivative(f));
        CHECK(linf(mean) == 0.0);
    }
}

TEST_CASE("phase shift") {
    TorusGrid g = TorusGrid::line(two_pi, 32, 16);
    LoopField f = random_loop(g, 21, 4, 5, 1.0, true);

    SUBCASE("zero phase is the identity") {
        PhaseField S(g);
        CHECK(max_abs_diff(phase_shift(f, S, 1.0), f) < 1e-15);
    }

    SUBCASE("shift followed by inverse shift is the identity") {
        PhaseField S(g, {2, 0});
        S.periodic = random_scalar(g, 22, 3, 0.3);
        LoopField round = phase_shift(phase_shift(f, S, 16.0), S, -16.0);
        CHECK(max_abs_diff(round, f) < 1e-12);
    }

    SUBCASE("single harmonic picks up the phase") {
        LoopField c = LoopField::sample(g, [](double, double, double th) {
            return std::cos(th);
        });
        PhaseField S(g, {3, 0}); // S = 3 x on a 2 pi circle
        LoopField shifted = phase_shift(c, S, 1.0);
        LoopField expect = LoopField::sample(g, [](double x, double, double th) {
            return std::cos(th + 3.0 * x);
        });
        CHECK(max_abs_diff(shifted, expect) < 1e-12);
    }

    SUBCASE("the angle average is preserved exactly") {
        PhaseField S(g, {1, 0});
        S.periodic = random_scalar(g, 23, 2, 0.5);
        ScalarField before = theta_average(f);
        ScalarField after = theta_average(phase_shift(f, S, 8.0));
        CHECK(max_abs_diff(before, after) == 0.0);
    }
}

TEST_CASE("shifted gradient") {
    TorusGrid g = TorusGrid::line(two_pi, 128, 32);
    const double eps = 1.0 / 16.0;

    SUBCASE("theta-independent fields reduce to the plain gradient") {
        ScalarField s = random_scalar(g, 31, 4);
        LoopField f = LoopField::from_scalar(s);
        PhaseField S(g, {1, 0});
        VectorLoopField gs = grad_s(f, S, eps);
        CHECK(max_abs_diff(theta_average(gs[0]), spectral_deriv(s, 0)) < 1e-12);
        CHECK(fluctuation_norm(gs[0]) < 1e-14);
    }

    SUBCASE("pure angle dependence gives (k/eps) g'") {
        LoopField f = LoopField::sample(g, [](double, double, double th) {
            return std::sin(2.0 * th);
        });
        PhaseField S(g, {1, 0}); // grad S = 1
        VectorLoopField gs = grad_s(f, S, eps);
        LoopField expect = LoopField::sample(g, [&](double, double, double th) {
            return 2.0 / eps * std::cos(2.0 * th);
        });
        CHECK(max_abs_diff(gs[0], expect) < 1e-11);
    }

    SUBCASE("chain rule against shift-differentiate-unshift") {
        LoopField f = random_loop(g, 32, 3, 3, 1.0, true);
        PhaseField S(g, {1, 0});
        S.periodic = random_scalar(g, 33, 2, 0.03);
        LoopField shifted = phase_shift(f, S, 1.0 / eps);
        LoopField dx_shifted = x_deriv(shifted, 0);
        LoopField chain = phase_shift(dx_shifted, S, -1.0 / eps);
        VectorLoopField direct = grad_s(f, S, eps);
        CHECK(max_abs_diff(direct[0], chain) < 1e-10);
    }

    SUBCASE("angle mean of the shifted gradient is the gradient of the mean") {
        LoopField f = random_loop(g, 34, 4, 6, 1.0, true);
        PhaseField S(g, {2, 0});
        S.periodic = random_scalar(g, 35, 3, 0.2);
        VectorLoopField gs = grad_s(f, S, eps);
        CHECK(max_abs_diff(theta_average(gs[0]),
                           spectral_deriv(theta_average(f), 0)) < 1e-12);
    }
}

TEST_CASE("loop collocation round trip and dealiasing") {
    TorusGrid g = TorusGrid::line(two_pi, 24, 16);
    LoopField f = random_loop(g, 41, 4, 4, 1.0, true);

    LoopField round = LoopField::from_values(g, f.values());
    CHECK(max_abs_diff(round, f) < 1e-13);

    // Modes inside the 2/3 band survive the truncation untouched.
    LoopField cut = dealias(f);
    CHECK(max_abs_diff(cut, f) < 1e-13);

    // A product of two in-band fields showing up beyond the band is removed.
    LoopField prod = multiply(f, f);
    const int cut_t = dealias_cutoff(g.n_theta);
    for (int ix = 0; ix < g.points(); ++ix)
        for (int m = cut_t + 1; m < g.harmonics(); ++m)
            CHECK(std::abs(prod.coeff(ix, m)) == 0.0);
}

TEST_CASE("loop fields on a two-dimensional torus") {
    TorusGrid g = TorusGrid::plane(two_pi, 4.0, 24, 16, 16);

    SUBCASE("spatial derivative of a sampled harmonic") {
        LoopField f = LoopField::sample(g, [&](double x, double y, double th) {
            return std::sin(x + two_pi * y / 4.0) * std::cos(th);
        });
        LoopField expect = LoopField::sample(g, [&](double x, double y, double th) {
            return two_pi / 4.0 * std::cos(x + two_pi * y / 4.0) * std::cos(th);
        });
        CHECK(max_abs_diff(x_deriv(f, 1), expect) < 1e-12);
    }

    SUBCASE("in-band fields pass the truncation unchanged") {
        LoopField f = random_loop(g, 51, 3, 4, 1.0, true);
        CHECK(max_abs_diff(dealias(f), f) < 1e-13);
    }

    SUBCASE("shifted gradient reduces to the chain rule") {
        const double eps = 0.25;
        LoopField f = LoopField::sample(g, [](double x, double, double th) {
            return std::cos(th + x);
        });
        PhaseField S(g, {1, 1});
        VectorLoopField gs = grad_s(f, S, eps);
        // d/dy + (grad_y S / eps) d_theta with grad_y S = 2 pi / L_y.
        LoopField expect = LoopField::sample(g, [&](double x, double, double th) {
            return -(two_pi / 4.0 / eps) * std::sin(th + x);
        });
        CHECK(max_abs_diff(gs[1], expect) < 1e-11);
    }
}

TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS_AS(TorusGrid::line(two_pi, 6, 8), ConfigError);   // too coarse
    CHECK_THROWS_AS(TorusGrid::line(two_pi, 17, 8), ConfigError);  // odd
    CHECK_THROWS_AS(TorusGrid::line(-1.0, 16, 8), ConfigError);    // bad length
    CHECK_THROWS_AS(TorusGrid::line(two_pi, 16, 4), ConfigError);  // theta too coarse
}
