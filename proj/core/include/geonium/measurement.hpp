#pragma once

#include <cstdint>

#include "geonium/pulses.hpp"

namespace geonium {

// Magnetic bottle readout parameters. omega_tilde is the shift constant in
// rad/s multiplying (g s / 4 + n_c + 1/2).
struct BottleConfig {
    double omega_tilde = 1.0;
    double g_factor = kDefaultGFactor;
};

struct MeasurementRecord {
    std::uint64_t seed = 0;
    int n_c = 0;
    int s = 0; // sigma_z eigenvalue, -1 or +1
    double probability = 0.0;
    double shift = 0.0; // rad/s
    StateVector post_state;
};

// Sign acquired by the axial quantum when a full swap moves it into the
// cyclotron mode: |1>_z |0>_c -> kTransferSwapPhase * |0>_z |1>_c.
inline constexpr double kTransferSwapPhase = 1.0;

// First full-swap time (pi/2)/g of the beam-splitter transfer coupling.
double transfer_time(double g_strength);

// Applies the transfer coupling for one full swap, moving the axial qubit
// into the cyclotron mode. Inputs with axial population outside {0, 1} are
// reported as warnings with the residual.
StateVector readout_transfer(const StateVector& state, double g_strength,
                             RunDiagnostics* diag = nullptr);

// Bottle-induced axial frequency shift omega_tilde * (g s / 4 + n_c + 1/2).
double axial_shift(int n_c, int s, const BottleConfig& bottle);

// Samples (n_c, s) from the cyclotron x spin marginal by the Born rule,
// collapses the state, and attaches the bottle shift. Deterministic per seed.
MeasurementRecord projective_measure(const StateVector& state,
                                     std::uint64_t seed,
                                     const BottleConfig& bottle);

// Post-readout thermalization model: projects onto the axial ground state and
// renormalizes. Intended for states whose axial mode is already near ground.
StateVector reset_axial_ground(const StateVector& state);

} // namespace geonium
