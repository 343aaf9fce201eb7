#include <doctest.h>

#include <complex>

#include "test_util.hpp"
#include "wkbflow/base_solver.hpp"
#include "wkbflow/fft.hpp"

using namespace wkbflow;
using namespace wkbflow::test;

namespace {

BaseState smooth_state(const TorusGrid& g, unsigned seed, double amp) {
    BaseState s(g);
    ScalarField bump = random_scalar(g, seed, 3, amp);
    for (int k = 0; k < g.points(); ++k) s.rho[k] = 1.0 + bump[k];
    s.p[0] = random_scalar(g, seed + 1, 3, amp);
    s.chi = random_scalar(g, seed + 2, 2, amp);
    s.h_disp[0] = random_scalar(g, seed + 3, 2, 0.05);
    return s;
}

/// Frequency of the dominant rotation of spatial mode k of (rho - mean),
/// from a least-squares fit of the unwrapped spectral phase.
double measured_frequency(BaseState s, const HamiltonianSpec& H, int mode,
                          double t_end) {
    const TorusGrid& g = s.grid();
    std::vector<double> times, phases;
    double prev_phase = 0.0;
    bool first = true;
    double offset = 0.0;
    while (s.t < t_end) {
        std::vector<std::complex<double>> hat(g.n[0] / 2 + 1);
        ScalarField delta = s.rho;
        fft::r2c(g.n[0], delta.data().data(), hat.data());
        double ph = std::arg(hat[mode]);
        if (!first) {
            while (ph + offset - prev_phase > 3.2) offset -= two_pi;
            while (ph + offset - prev_phase < -3.2) offset += two_pi;
        }
        prev_phase = ph + offset;
        first = false;
        times.push_back(s.t);
        phases.push_back(prev_phase);
        const double dt = std::min(cfl_limit_base(s, H), t_end - s.t);
        s = step_rk4(s, H, dt);
    }
    // Least-squares slope of phase vs time.
    const size_t n = times.size();
    double st = 0, sp = 0, stt = 0, stp = 0;
    for (size_t i = 0; i < n; ++i) {
        st += times[i];
        sp += phases[i];
        stt += times[i] * times[i];
        stp += times[i] * phases[i];
    }
    const double slope = (n * stp - st * sp) / (n * stt - st * st);
    return -slope;
}

} // namespace

TEST_CASE("uniform rest state is an equilibrium with linear chi drift") {
    TorusGrid g = TorusGrid::line(two_pi, 32, 8);
    const double cs = 1.3, rho0 = 0.9;
    HamiltonianSpec H = isothermal_hamiltonian({cs, rho0});
    BaseState s(g);
    s.rho = ScalarField(g, rho0);

    BaseTangent k = rhs_base(s, H);
    CHECK(linf(k.rho) < 1e-13);
    CHECK(linf(k.p[0]) < 1e-13);
    CHECK(linf(k.h_disp[0]) < 1e-13);
    // dt chi = dH/drho = c_s^2 at the reference density.
    CHECK(max_abs_diff(k.chi, ScalarField(g, cs * cs)) < 1e-13);

    const double dt = 0.5 * cfl_limit_base(s, H);
    BaseState s2 = step_rk4(s, H, dt);
    CHECK(max_abs_diff(s2.rho, s.rho) < 1e-14);
    CHECK(linf(s2.p[0]) < 1e-14);
    CHECK(max_abs_diff(s2.chi, ScalarField(g, cs * cs * dt)) < 1e-14);
}

TEST_CASE("still fluid accelerates down the density gradient") {
    TorusGrid g = TorusGrid::line(two_pi, 64, 8);
    const double cs = 2.0;
    HamiltonianSpec H = isothermal_hamiltonian({cs, 1.0});
    BaseState s(g);
    s.rho = ScalarField::sample(g, [](double x, double) {
        return 1.0 + 0.2 * std::sin(3.0 * x);
    });
    BaseTangent k = rhs_base(s, H);
    ScalarField expect = spectral_deriv(s.rho, 0);
    expect *= -cs * cs;
    CHECK(max_abs_diff(k.p[0], expect) < 1e-11);
}

TEST_CASE("momentum tendency integrates to zero on a random smooth state") {
    TorusGrid g = TorusGrid::line(two_pi, 64, 8);
    HamiltonianSpec H = isothermal_hamiltonian({1.0, 1.0});
    BaseState s = smooth_state(g, 101, 0.2);
    BaseTangent k = rhs_base(s, H);
    CHECK(std::abs(integral(k.p[0])) < 1e-11);
    CHECK(std::abs(integral(k.rho)) < 1e-13);
}

TEST_CASE("mass and momentum are conserved step by step") {
    TorusGrid g = TorusGrid::line(two_pi, 64, 8);
    HamiltonianSpec H = isothermal_hamiltonian({1.0, 1.0});
    BaseState s = smooth_state(g, 202, 0.1);
    const double m0 = total_mass(s), p0 = total_momentum(s, 0);
    for (int i = 0; i < 20; ++i) {
        const double before_m = total_mass(s), before_p = total_momentum(s, 0);
        s = step_rk4(s, H, 0.9 * cfl_limit_base(s, H));
        CHECK(std::abs(total_mass(s) - before_m) < 1e-12 * std::abs(m0));
        CHECK(std::abs(total_momentum(s, 0) - before_p) < 1e-12 * std::max(1.0, std::abs(p0)));
    }
}

TEST_CASE("energy drift is small and fourth order in dt") {
    TorusGrid g = TorusGrid::line(two_pi, 64, 8);
    HamiltonianSpec H = isothermal_hamiltonian({1.0, 1.0});
    auto drift = [&](double dt_scale) {
        BaseState s = smooth_state(g, 303, 0.25);
        const double e0 = total_energy(s, H);
        const double dt = dt_scale * cfl_limit_base(s, H);
        const double t_end = 1.0;
        int steps = static_cast<int>(std::ceil(t_end / dt));
        for (int i = 0; i < steps; ++i) s = step_rk4(s, H, t_end / steps);
        return std::abs(total_energy(s, H) - e0) / std::abs(e0);
    };
    const double d1 = drift(0.8), d2 = drift(0.4);
    CHECK(d1 < 1e-8);
    const double order = std::log2(d1 / d2);
    CHECK(order > 3.0); // fourth-order convergence of the residual drift
    CHECK(order < 5.0);
}

TEST_CASE("circulation around the torus is invariant under the flow") {
    TorusGrid g = TorusGrid::line(two_pi, 128, 8);
    HamiltonianSpec H = isothermal_hamiltonian({1.0, 1.0});

    SUBCASE("still fluid has zero circulation") {
        BaseState s(g);
        CHECK(circulation_base(s) == 0.0);
    }
    SUBCASE("uniform flow has circulation u0 L") {
        BaseState s(g);
        s.rho = ScalarField(g, 2.0);
        s.p[0] = ScalarField(g, 2.0 * 0.7); // rho u0
        CHECK(circulation_base(s) == doctest::Approx(0.7 * two_pi).epsilon(1e-13));
    }
    SUBCASE("evolved smooth state keeps its circulation") {
        BaseState s = smooth_state(g, 404, 0.1);
        for (int k = 0; k < g.points(); ++k) s.p[0][k] += 0.3 * s.rho[k];
        const double c0 = circulation_base(s);
        while (s.t < 1.0) {
            const double dt = std::min(0.9 * cfl_limit_base(s, H), 1.0 - s.t);
            s = step_rk4(s, H, dt);
        }
        CHECK(std::abs(circulation_base(s) - c0) < 1e-10 * std::max(1.0, std::abs(c0)));
    }
}

TEST_CASE("density and momentum tendencies ignore the passive fields") {
    TorusGrid g = TorusGrid::line(two_pi, 64, 8);
    HamiltonianSpec H = isothermal_hamiltonian({1.0, 1.0});
    BaseState s = smooth_state(g, 505, 0.2);
    BaseTangent k1 = rhs_base(s, H);
    s.chi = random_scalar(g, 606, 3, 0.8);
    s.h_disp[0] = random_scalar(g, 607, 3, 0.1);
    BaseTangent k2 = rhs_base(s, H);
    CHECK(max_abs_diff(k1.rho, k2.rho) == 0.0);
    CHECK(max_abs_diff(k1.p[0], k2.p[0]) == 0.0);
}

TEST_CASE("acoustic wave oscillates at c_s k") {
    TorusGrid g = TorusGrid::line(two_pi, 128, 8);
    const double cs = 1.0;
    HamiltonianSpec H = isothermal_hamiltonian({cs, 1.0});
    const int mode = 2;
    const double amp = 1e-4;
    BaseState s(g);
    s.rho = ScalarField::sample(g, [&](double x, double) {
        return 1.0 + amp * std::cos(mode * x);
    });
    s.p[0] = ScalarField::sample(g, [&](double x, double) {
        return cs * amp * std::cos(mode * x);
    });
    const double omega = measured_frequency(s, H, mode, 3.0 * two_pi / (cs * mode));
    CHECK(rel_err(omega, cs * mode) < 0.01);
}

TEST_CASE("two-dimensional flow conserves its integrals") {
    TorusGrid g = TorusGrid::plane(two_pi, 4.0, 24, 16, 8);
    HamiltonianSpec H = isothermal_hamiltonian({1.0, 1.0});
    BaseState s(g);
    s.rho = ScalarField::sample(g, [](double x, double y) {
        return 1.0 + 0.1 * std::sin(x) + 0.05 * std::cos(two_pi * y / 4.0);
    });
    s.p[0] = ScalarField::sample(g, [](double, double y) {
        return 0.1 * std::cos(two_pi * y / 4.0);
    });
    s.p[1] = ScalarField::sample(g, [](double x, double) { return 0.05 * std::sin(x); });

    // Rest state first: uniform fields are an equilibrium in 2-d too.
    BaseState rest(g);
    BaseTangent kr = rhs_base(rest, H);
    CHECK(linf(kr.rho) < 1e-13);
    CHECK(linf(kr.p[0]) < 1e-13);
    CHECK(linf(kr.p[1]) < 1e-13);

    const double m0 = total_mass(s);
    const double px0 = total_momentum(s, 0), py0 = total_momentum(s, 1);
    const double e0 = total_energy(s, H);
    for (int i = 0; i < 20; ++i) s = step_rk4(s, H, 0.4 * cfl_limit_base(s, H));
    CHECK(std::abs(total_mass(s) - m0) < 1e-12 * std::abs(m0));
    CHECK(std::abs(total_momentum(s, 0) - px0) < 1e-12);
    CHECK(std::abs(total_momentum(s, 1) - py0) < 1e-12);
    CHECK(std::abs(total_energy(s, H) - e0) < 1e-8 * std::abs(e0));
}

TEST_CASE("steepening beyond the resolved regime fails loudly") {
    // Large-amplitude data steepens; once the solution leaves the smooth
    // regime the solver must raise a diagnostic rather than regularize.
    TorusGrid g = TorusGrid::line(two_pi, 64, 8);
    HamiltonianSpec H = isothermal_hamiltonian({1.0, 1.0});
    BaseState s(g);
    s.rho = ScalarField::sample(g, [](double x, double) {
        return 1.0 + 0.8 * std::cos(x);
    });
    s.p[0] = ScalarField::sample(g, [](double x, double) {
        return 0.8 * std::cos(x);
    });
    auto drive = [&]() {
        while (s.t < 10.0) s = step_rk4(s, H, 0.9 * cfl_limit_base(s, H));
    };
    CHECK_THROWS_AS(drive(), Error);
}

TEST_CASE("error paths") {
    TorusGrid g = TorusGrid::line(two_pi, 32, 8);
    HamiltonianSpec H = isothermal_hamiltonian({1.0, 1.0});

    SUBCASE("negative density is reported with its location") {
        BaseState s(g);
        s.rho[5] = -0.1;
        CHECK_THROWS_AS(rhs_base(s, H), NonPositiveDensity);
    }
    SUBCASE("too-large time step is rejected") {
        BaseState s = smooth_state(g, 707, 0.1);
        CHECK_THROWS_AS(step_rk4(s, H, 10.0 * cfl_limit_base(s, H)), StepRejected);
    }
    SUBCASE("folded label map is rejected") {
        BaseState s(g);
        s.h_disp[0] = ScalarField::sample(g, [](double x, double) {
            return -1.5 * std::sin(x); // 1 + d/dx crosses zero
        });
        CHECK_THROWS_AS(s.validate(), SingularLabelMap);
    }
}
