#pragma once

#include <random>
#include <string>

#include <Eigen/Dense>

#include "geonium/config.hpp"
#include "geonium/gates.hpp"
#include "geonium/measurement.hpp"

namespace testutil {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

// Trap in a unit system with hbar = e = m = 1, so omega_c = B and
// omega_z = sqrt(V0) / d.
inline geonium::TrapConfig unit_trap(double B, double V0, double g_factor) {
    geonium::TrapConfig t;
    t.B = B;
    t.V0 = V0;
    t.d = 1.0;
    t.g_factor = g_factor;
    t.electron_charge_mag = 1.0;
    t.electron_mass = 1.0;
    t.hbar = 1.0;
    return t;
}

// Gate demo numbers: omega_z = 1, omega_c = 2, omega_s = 8, zeta = 0.01,
// lamb_dicke = 0.3, eta = 3e-3, kappa = 1.8e-3, rabi_s = 0.5.
inline geonium::SimContext cn_context(double step = 0.02) {
    geonium::HilbertSpec spec{2, 6, 3, 1};
    geonium::DriveConfig drv;
    drv.alpha_mag = 5.8925565098878960e-3;
    drv.k = 0.42426406871192851;
    geonium::SpinDriveConfig sd;
    sd.b = 0.125;
    return geonium::SimContext::make(spec, unit_trap(2.0, 1.0, 8.0), drv, sd,
                                     step);
}

// Overdriven variant: zeta = 0.05, lamb_dicke = 0.45, so full-lab runs are
// short enough for unit tests.
inline geonium::SimContext hot_context(double step = 0.02) {
    geonium::HilbertSpec spec{2, 6, 3, 1};
    geonium::DriveConfig drv;
    drv.alpha_mag = 1.9641855032959652e-2;
    drv.k = 0.63639610306789285;
    geonium::SpinDriveConfig sd;
    sd.b = 0.125;
    return geonium::SimContext::make(spec, unit_trap(2.0, 1.0, 8.0), drv, sd,
                                     step);
}

// Rotating-wave benchmark numbers: omega_z = 1, omega_c = 4, omega_s = 100,
// zeta = 1, lamb_dicke = 0.05.
inline geonium::SimContext rwa_context() {
    geonium::HilbertSpec spec{2, 8, 5, 1};
    geonium::DriveConfig drv;
    drv.alpha_mag = 0.5656854249492381;
    drv.k = 0.07071067811865475;
    geonium::SpinDriveConfig sd;
    sd.b = 0.04;
    return geonium::SimContext::make(spec, unit_trap(4.0, 1.0, 50.0), drv, sd,
                                     0.0);
}

inline std::string config_path(const char* name) {
    return std::string(GEONIUM_CONFIG_DIR) + "/" + name;
}

// Deterministic random complex unit vector.
inline geonium::Vector random_state(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    geonium::Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = geonium::Complex(n(rng), n(rng));
    v /= v.norm();
    return v;
}

inline geonium::Matrix random_hermitian(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    geonium::Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = geonium::Complex(n(rng), n(rng));
    return 0.5 * (m + m.adjoint().eval());
}

} // namespace testutil
