#include "wkbflow/hamiltonian.hpp"

#include <cmath>
#include <sstream>

namespace wkbflow {

HamiltonianSpec isothermal_hamiltonian(const IsothermalParams& params) {
    params.check();
    const double cs2 = params.c_s * params.c_s;
    const double rho0 = params.rho_ref;

    HamiltonianSpec spec;
    spec.grad_rho_inert = true;
    spec.wave_speed = params.c_s;
    spec.eval = [cs2, rho0](const Vec2& p, double rho, const Vec2&) {
        const double p2 = p[0] * p[0] + p[1] * p[1];
        return 0.5 * p2 / rho + cs2 * rho * std::log(rho / rho0);
    };
    spec.d_p = [](const Vec2& p, double rho, const Vec2&) {
        return Vec2{p[0] / rho, p[1] / rho};
    };
    spec.d_rho = [cs2, rho0](const Vec2& p, double rho, const Vec2&) {
        const double p2 = p[0] * p[0] + p[1] * p[1];
        return -0.5 * p2 / (rho * rho) + cs2 * (std::log(rho / rho0) + 1.0);
    };
    spec.d_grad_rho = [](const Vec2&, double, const Vec2&) { return Vec2{0.0, 0.0}; };
    return spec;
}

Vec2 legendre_velocity(const HamiltonianSpec& spec, const Vec2& p, double rho,
                       const Vec2& grad_rho) {
    if (!(rho > 0.0)) {
        std::ostringstream msg;
        msg << "legendre velocity needs rho > 0, got " << rho;
        throw NonPositiveDensity(msg.str());
    }
    return spec.d_p(p, rho, grad_rho);
}

} // namespace wkbflow
