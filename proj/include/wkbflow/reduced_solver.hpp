#pragma once

#include "wkbflow/base_solver.hpp"
#include "wkbflow/loop_ops.hpp"
#include "wkbflow/phase_field.hpp"

namespace wkbflow {

/// Dependent variables of the reduced wave--mean-flow model: slow density,
/// momentum and multiplier, the wave action density, and the order-one phase
/// whose winding carries the wave train around the torus. eps enters the
/// dynamics only through the wave-stress prefactor.
struct MeanWaveState {
    ScalarField rho_bar;
    VectorField p_bar;
    ScalarField chi_bar;
    ScalarField action;
    PhaseField S;
    double eps = 1.0;
    double t = 0.0;

    MeanWaveState() = default;
    explicit MeanWaveState(const TorusGrid& g)
        : rho_bar(g, 1.0), p_bar(g), chi_bar(g), action(g), S(g) {}

    const TorusGrid& grid() const { return rho_bar.grid(); }
    bool wave_active() const { return linf(action) > 0.0; }
    void validate() const;
};

struct MeanWaveTangent {
    ScalarField rho_bar;
    VectorField p_bar;
    ScalarField chi_bar;
    ScalarField action;
    ScalarField S_periodic;
};

/// Semi-discrete right-hand side of the reduced system: mean continuity,
/// mean momentum with the quadratic wave stress, wave-action transport at
/// the group velocity p_bar/rho_bar + c_s e_k, the eikonal for S, and the
/// multiplier transport.
MeanWaveTangent rhs_reduced(const MeanWaveState& state, const IsothermalParams& params);

double cfl_limit_reduced(const MeanWaveState& state, const IsothermalParams& params,
                         double cfl = default_cfl);

/// RK4 update; the winding of S never changes, only its periodic part.
MeanWaveState step_reduced(const MeanWaveState& state, const IsothermalParams& params,
                           double dt);

/// Wave action density from density fluctuations:
/// I = fint rho_bar (c_s / |grad S|) (rho_hat / rho_bar)^2 dtheta,
/// evaluated exactly from the harmonics.
ScalarField wave_action_from_fluctuations(const ScalarField& rho_bar,
                                          const LoopField& rho_hat, const PhaseField& S,
                                          const IsothermalParams& params);

/// Wave-corrected circulation over the axis-0 cycle (1-d):
/// integral of p_bar/rho_bar - eps^2 (I/rho_bar) dS/dx.
double mean_circulation(const MeanWaveState& state);

double total_wave_action(const MeanWaveState& state);

} // namespace wkbflow
