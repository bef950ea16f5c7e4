#pragma once

#include <cmath>

#include "geonium/errors.hpp"

namespace geonium {

// CODATA 2018 values; fields are mutable so tests and synthetic unit
// systems can override them.
inline constexpr double kElectronChargeMag = 1.602176634e-19; // C
inline constexpr double kElectronMass = 9.1093837015e-31;     // kg
inline constexpr double kHbar = 1.054571817e-34;              // J s
inline constexpr double kDefaultGFactor = 2.0023193;

struct TrapConfig {
    double B = 1.0;          // magnetic field, T
    double V0 = 10.0;        // ring-endcap potential, V
    double d = 3.3e-3;       // characteristic trap size, m
    double g_factor = kDefaultGFactor;
    double electron_charge_mag = kElectronChargeMag;
    double electron_mass = kElectronMass;
    double hbar = kHbar;
};

// Standing-wave drive: amplitude |alpha|, wavevector k along the trap axis,
// drive frequency Omega, standing-wave position phase phi (0 puts the
// electron at a node, -pi/2 at an antinode), polarization phase varphi.
struct DriveConfig {
    double alpha_mag = 0.0; // V s / m
    double k = 0.0;         // 1 / m
    double Omega = 0.0;     // rad / s
    double phi = 0.0;       // rad
    double varphi = 0.0;    // rad
};

// Rotating magnetic field that drives the spin directly.
struct SpinDriveConfig {
    double b = 0.0;     // T
    double theta = 0.0; // rad
};

// All values are angular frequencies in rad/s.
struct ModeFrequencies {
    double omega_z = 0.0;
    double omega_c = 0.0;
    double omega_m = 0.0;
    double omega_s = 0.0;

    // Expected ordering for a working trap: magnetron slowest, cyclotron fastest.
    bool hierarchy_ok() const { return omega_m < omega_z && omega_z < omega_c; }
};

struct Couplings {
    double epsilon = 0.0;    // cyclotron-drive rate, rad/s
    double zeta = 0.0;       // spin-drive rate of the standing wave, rad/s
    double eta = 0.0;        // sideband rate, eta = lamb_dicke * zeta
    double kappa = 0.0;      // conditional carrier rate, kappa = 2 zeta lamb_dicke^2
    double lamb_dicke = 0.0; // k * sqrt(hbar / (2 m omega_z))
    double rabi_s = 0.0;     // spin-drive Rabi rate from the rotating b field
};

ModeFrequencies derive_frequencies(const TrapConfig& cfg);

Couplings derive_couplings(const TrapConfig& cfg, const DriveConfig& drv,
                           const SpinDriveConfig& spin);

} // namespace geonium
