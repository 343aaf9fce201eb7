#pragma once

#include "wkbflow/config.hpp"
#include "wkbflow/extended_solver.hpp"

namespace wkbflow {

/// Named closed-form initial conditions (see docs/config.md for the
/// parameters each one accepts). Amplitude guards are enforced by the state
/// validators: a wave amplitude that drives the density non-positive or a
/// flat phase under an active wave is rejected at construction.
BaseState make_base_preset(const RunConfig& cfg);
ExtendedState make_extended_preset(const RunConfig& cfg);
MeanWaveState make_reduced_preset(const RunConfig& cfg);

/// Mean fields + density fluctuation shared by the extended preset and the
/// cross-tier comparison harness.
struct WavePresetFields {
    MeanWaveState mean;
    LoopField rho_hat;
};
WavePresetFields make_wave_preset_fields(const RunConfig& cfg);

} // namespace wkbflow
