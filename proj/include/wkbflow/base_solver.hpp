#pragma once

#include "wkbflow/hamiltonian.hpp"
#include "wkbflow/spectral.hpp"

namespace wkbflow {

inline constexpr double rho_floor = 1e-10;

/// Dependent variables of the base model: mass density, momentum density,
/// the back-to-labels map stored as periodic displacement from the identity
/// (unit winding per axis, so the map stays a valid circle diffeomorphism),
/// and the continuity-equation multiplier.
struct BaseState {
    ScalarField rho;
    VectorField p;
    VectorField h_disp;
    ScalarField chi;
    double t = 0.0;

    BaseState() = default;
    explicit BaseState(const TorusGrid& g)
        : rho(g, 1.0), p(g), h_disp(g), chi(g) {}

    const TorusGrid& grid() const { return rho.grid(); }

    /// Throws when an invariant fails: positive density, finite values,
    /// orientation-preserving label map.
    void validate() const;
};

struct BaseTangent {
    ScalarField rho;
    VectorField p;
    VectorField h_disp;
    ScalarField chi;
};

/// Semi-discrete right-hand side. The (rho, p) block never reads (h, chi);
/// all products dealiased, all derivatives spectral, every flux in
/// divergence form so mass and total momentum are conserved exactly.
BaseTangent rhs_base(const BaseState& state, const HamiltonianSpec& H);

double cfl_limit_base(const BaseState& state, const HamiltonianSpec& H,
                      double cfl = default_cfl);

/// Classical four-stage Runge-Kutta update of all fields.
/// Throws StepRejected when dt exceeds the CFL limit or the post-state
/// violates invariants.
BaseState step_rk4(const BaseState& state, const HamiltonianSpec& H, double dt);

/// Loop integral of p / rho over the homology cycle of axis 0 (1-d only:
/// the material loop is the full circle).
double circulation_base(const BaseState& state);

double total_mass(const BaseState& state);
double total_momentum(const BaseState& state, int axis);
double total_energy(const BaseState& state, const HamiltonianSpec& H);

} // namespace wkbflow
