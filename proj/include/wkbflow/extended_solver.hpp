#pragma once

#include "wkbflow/reduced_solver.hpp"
#include "wkbflow/slaving.hpp"

namespace wkbflow {

/// Dependent variables of the extended model on (space) x (phase circle).
/// The label map is stored as a loop of displacements from the identity.
/// The stored phase S is order one; the operators use S / eps.
struct ExtendedState {
    LoopField rho;
    VectorLoopField p;
    VectorLoopField h_disp;
    LoopField chi;
    PhaseField S;
    double eps = 1.0;
    double t = 0.0;

    ExtendedState() = default;
    explicit ExtendedState(const TorusGrid& g, double eps_ = 1.0)
        : rho(LoopField::from_scalar(ScalarField(g, 1.0))),
          p(g), h_disp(g), chi(g), S(g), eps(eps_) {}

    const TorusGrid& grid() const { return rho.grid(); }
    void validate() const;
};

struct ExtendedTangent {
    LoopField rho;
    VectorLoopField p;
    VectorLoopField h_disp;
    LoopField chi;
    ScalarField S_periodic;
};

/// Rule closing the evolution of the phase function from the angle-averaged
/// fields. The extension procedure alone leaves S gauge-free; the default is
/// the acoustic eikonal dS/dt = -(p_bar/rho_bar) . grad S - c_s |grad S|.
struct PhaseClosure {
    std::function<ScalarField(const ScalarField& rho_bar, const VectorField& p_bar,
                              const PhaseField& S)>
        rate;
};

PhaseClosure acoustic_eikonal_closure(double c_s);

/// Semi-discrete right-hand side of the extended system with the stiff
/// shifted transport expanded; the (rho, p, S) block never reads (h, chi).
ExtendedTangent rhs_extended(const ExtendedState& state, const HamiltonianSpec& H,
                             const PhaseClosure& closure);

double cfl_limit_extended(const ExtendedState& state, const HamiltonianSpec& H,
                          const PhaseClosure& closure, double cfl = default_cfl);

/// RK4 update of all fields including the periodic part of S (winding fixed).
ExtendedState step_extended(const ExtendedState& state, const HamiltonianSpec& H,
                            const PhaseClosure& closure, double dt);

/// Evaluation at theta = S(x)/eps; recovers the physical fields.
struct ReconstructedFields {
    ScalarField rho;
    VectorField p;
};
ReconstructedFields reconstruct(const ExtendedState& state);

/// Specific wave action density
/// rho d_theta chi + (p + rho gradS chi) . zeta, with
/// zeta = -(d_theta h) . (gradS h)^{-1}.
LoopField specific_wave_action(const ExtendedState& state);

/// Per-angle circulation of the phase-shifted velocity over the axis-0
/// cycle (1-d): one value per sampled angle.
std::vector<double> circulation_family(const ExtendedState& state, int n_theta_samples);

/// Places the extended state on the leading-order slow manifold:
///   rho = rho_bar + eps rho_hat, p = p_bar + eps p_hat*,
///   chi = chi_bar + eps^2 chi_hat*,
///   labels = (mean displacement) composed with (id + eps^2 alpha_hat*).
/// mean_disp may be null for identity mean labels.
ExtendedState init_slow_manifold(const MeanWaveState& mean, const LoopField& rho_hat,
                                 double eps, const IsothermalParams& params,
                                 const VectorField* mean_disp = nullptr);

double total_mass_extended(const ExtendedState& state);
double total_momentum_extended(const ExtendedState& state, int axis);
double total_energy_extended(const ExtendedState& state, const HamiltonianSpec& H);

} // namespace wkbflow
