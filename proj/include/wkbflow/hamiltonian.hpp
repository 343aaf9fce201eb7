#pragma once

#include <array>
#include <functional>

#include "wkbflow/errors.hpp"

namespace wkbflow {

/// Up to two momentum / gradient components; the unused slot is zero in 1-d.
using Vec2 = std::array<double, 2>;

struct IsothermalParams {
    double c_s = 1.0;     // sound speed
    double rho_ref = 1.0; // reference mass density

    void check() const {
        if (!(c_s > 0.0)) throw ConfigError("sound speed must be > 0");
        if (!(rho_ref > 0.0)) throw ConfigError("reference density must be > 0");
    }
};

/// Pointwise energy density H(p, rho, grad rho) with its three partial
/// derivatives, as a pluggable contract. Callables must be pure and
/// reentrant; specs are immutable value objects. rho > 0 is required by
/// every callable. grad rho is passed even when a particular instance
/// ignores it, so the solvers stay generic.
struct HamiltonianSpec {
    std::function<double(const Vec2& p, double rho, const Vec2& grad_rho)> eval;
    std::function<Vec2(const Vec2& p, double rho, const Vec2& grad_rho)> d_p;
    std::function<double(const Vec2& p, double rho, const Vec2& grad_rho)> d_rho;
    std::function<Vec2(const Vec2& p, double rho, const Vec2& grad_rho)> d_grad_rho;

    /// True when d_grad_rho is identically zero; lets solvers skip the
    /// corresponding flux terms.
    bool grad_rho_inert = false;

    /// Signal-speed estimate used by CFL limits.
    double wave_speed = 1.0;
};

/// H = |p|^2 / (2 rho) + c_s^2 rho ln(rho / rho_ref).
HamiltonianSpec isothermal_hamiltonian(const IsothermalParams& params);

/// v = dH/dp, the Legendre-transform velocity. Throws NonPositiveDensity.
Vec2 legendre_velocity(const HamiltonianSpec& spec, const Vec2& p, double rho,
                       const Vec2& grad_rho);

} // namespace wkbflow
