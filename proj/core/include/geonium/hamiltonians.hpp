#pragma once

#include <Eigen/Dense>

#include "geonium/linalg.hpp"
#include "geonium/trap.hpp"

namespace geonium {

// All Hamiltonians are returned in angular-frequency units (H over hbar),
// so a propagator is exp(-i h t) with t in seconds.

enum class HamiltonianKind {
    FreeMotion,
    SpinDrive,
    SidebandMinus,
    SidebandPlus,
    CarrierAntinode,
    EffectiveCN,
    Transfer,
    FullLabFrame,
};

// omega_z n_z + omega_c n_c - omega_m n_m + (omega_s / 2) sigma_z.
// The magnetron term enters only on request; requesting it with a frozen
// magnetron mode is an error.
Operator free_motion(const HilbertSpec& spec, const ModeFrequencies& freqs,
                     bool include_magnetron = false);

// Resonant rotating-frame spin drive:
// (rabi_s / 2) (sigma_+ e^{-i theta} + sigma_- e^{i theta}).
Operator spin_drive(const HilbertSpec& spec, double rabi_s, double theta);

// Red-sideband (Jaynes-Cummings) coupling at Omega = omega_s - omega_z:
// eta (sigma_+ a_z e^{-i varphi} + sigma_- a_z^dag e^{i varphi}).
Operator sideband_minus(const HilbertSpec& spec, double eta, double varphi);

// Blue-sideband coupling at Omega = omega_s + omega_z:
// eta (sigma_+ a_z^dag e^{-i varphi} + sigma_- a_z e^{i varphi}).
Operator sideband_plus(const HilbertSpec& spec, double eta, double varphi);

// Resonant carrier with the electron at a standing-wave antinode:
// -2 zeta (sigma_+ e^{-i varphi} + sigma_- e^{i varphi})
//        x (1 - lamb_dicke^2/2 - lamb_dicke^2 n_z).
// The prefactor uses the gate-protocol normalization: the conditional rate
// equals kappa = 2 zeta lamb_dicke^2. A physical standing wave of spin rate
// zeta_lab produces this operator with zeta = zeta_lab / 2; the pulse layer
// owns that mapping.
Operator carrier_antinode(const HilbertSpec& spec, double zeta, double lamb_dicke,
                          double varphi);

// Conditional interaction that generates the controlled-NOT:
// kappa n_z sigma_x.
Operator effective_cn(const HilbertSpec& spec, double kappa);

// Axial-to-cyclotron quantum exchange at Omega = omega_c - omega_z:
// i g (a_c^dag a_z - a_c a_z^dag).
Operator transfer_coupling(const HilbertSpec& spec, double g_strength);

// Full time-dependent lab-frame Hamiltonian of trap plus standing wave:
// free motion (no magnetron), cyclotron drive through cos(k z + phi), spin
// drive through sin(k z + phi), both rotating at drv.Omega.
Operator full_lab_frame(const HilbertSpec& spec, const TrapConfig& trap,
                        const DriveConfig& drv, double t);

// Trig functions of the axial position, cos(k z + phi) and sin(k z + phi),
// as blocks on the axial mode. k z = lamb_dicke (a + a^dag).
struct AxialTrig {
    Matrix cos_block;
    Matrix sin_block;
};
AxialTrig axial_trig(int axial_dim, double lamb_dicke, double phi);

// Frame utility used for every rotating-wave comparison: the interaction
// picture generated by the free motion (magnetron excluded), i.e.
// exp(+i H_free t) applied to a lab-frame state. For a drive at Omega the
// operators of interest (sigma_+ a_z, sigma_+ a_z^dag, sigma_+, a_c^dag a_z)
// become stationary exactly when Omega hits the matching resonance.
StateVector to_rotating_frame(const StateVector& lab_state,
                              const ModeFrequencies& freqs, double t);

// Monochromatic circularly polarized drives satisfy
//   H(t) = e^{-i Omega t G} H(0) e^{+i Omega t G},  G = n_c + sigma_+ sigma_-,
// so the lab-frame propagator has the closed form
//   U(t0, t0+T) = e^{-i Omega (t0+T) G} exp(-i (H(0) - Omega G) T) e^{+i Omega t0 G}.
// This evolves the exact lab-frame model with no time-stepping error; it is
// used by the rotating-wave benchmarks and as an oracle for the midpoint
// integrator.
class LabFrameModel {
public:
    // Standing-wave drive with explicit rates; phases follow DriveConfig.
    static LabFrameModel standing_wave(const HilbertSpec& spec,
                                       const ModeFrequencies& freqs, double epsilon,
                                       double zeta, double lamb_dicke, double Omega,
                                       double phi, double varphi);

    // Rotating transverse magnetic field, resonant case Omega = omega_s.
    static LabFrameModel spin_field(const HilbertSpec& spec,
                                    const ModeFrequencies& freqs, double rabi_s,
                                    double theta);

    const HilbertSpec& spec() const { return spec_; }
    double drive_frequency() const { return omega_drive_; }

    // Lab-frame Hamiltonian sampled at absolute time t.
    Operator at(double t) const;

    // Exact propagation from absolute time t0 over the given duration.
    StateVector propagate(const StateVector& input, double t0, double duration) const;

private:
    LabFrameModel(HilbertSpec spec, Matrix h_free, Matrix v0, Eigen::VectorXd g_levels,
                  double omega_drive);

    HilbertSpec spec_;
    Matrix h_free_;               // static diagonal part
    Matrix v0_;                   // drive term at t = 0
    Eigen::VectorXd g_levels_;    // diagonal of G
    double omega_drive_;
    // Cached eigendecomposition of H(0) - Omega G.
    Eigen::VectorXd rot_evals_;
    Matrix rot_evecs_;
};

} // namespace geonium
