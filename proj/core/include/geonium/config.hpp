#pragma once

#include <cstdint>
#include <string>

#include "geonium/pulses.hpp"

namespace geonium {

struct SimSettings {
    int axial_dim = 12;
    int cyclotron_dim = 6;
    int magnetron_dim = 1;
    double step = 0.0;      // integration step for full-lab runs, 0 = unset
    int compensation_n = 0; // winding floor for the compensation pulse
};

// Pass/fail thresholds used by the command-line scenarios.
struct ThresholdConfig {
    double fidelity = 0.99;
    double leakage = 0.01;
};

struct FileConfig {
    TrapConfig trap;
    DriveConfig drive;
    SpinDriveConfig spin_drive;
    SimSettings sim;
    ThresholdConfig thresholds;
    double bottle_omega_tilde = 1.0;
    std::uint64_t hash = 0; // FNV-1a over the raw config bytes

    HilbertSpec spec() const;
    SimContext context() const;
};

std::uint64_t fnv1a(const std::string& bytes);

// Parses the sectioned key=value format:
//   [trap] B, V0, d, g_factor        (section required, B/V0/d required)
//   [drive] alpha, k, Omega, phi, varphi
//   [spin_drive] b, theta
//   [sim] axial_dim, cyclotron_dim, magnetron_dim, step, compensation_n
//   [constants] hbar, e, m
//   [thresholds] fidelity, leakage
//   [bottle] omega_tilde
// Errors carry the offending line number.
FileConfig parse_config(const std::string& text);

FileConfig load_config(const std::string& path);

} // namespace geonium
