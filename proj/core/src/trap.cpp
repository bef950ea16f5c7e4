#include "geonium/trap.hpp"

#include <string>

namespace geonium {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidConfigError(std::string(name) + " must be positive and finite");
    }
}

} // namespace

ModeFrequencies derive_frequencies(const TrapConfig& cfg) {
    require_positive(cfg.B, "B");
    require_positive(cfg.V0, "V0");
    require_positive(cfg.d, "d");
    require_positive(cfg.g_factor, "g_factor");
    require_positive(cfg.electron_charge_mag, "electron_charge_mag");
    require_positive(cfg.electron_mass, "electron_mass");
    require_positive(cfg.hbar, "hbar");

    const double e = cfg.electron_charge_mag;
    const double m = cfg.electron_mass;

    ModeFrequencies f;
    f.omega_z = std::sqrt(e * cfg.V0 / (m * cfg.d * cfg.d));
    f.omega_c = e * cfg.B / m;
    f.omega_m = f.omega_z * f.omega_z / (2.0 * f.omega_c);
    f.omega_s = cfg.g_factor * e * cfg.B / (2.0 * m);
    return f;
}

Couplings derive_couplings(const TrapConfig& cfg, const DriveConfig& drv,
                           const SpinDriveConfig& spin) {
    const ModeFrequencies f = derive_frequencies(cfg);
    if (!(f.omega_z > 0.0)) {
        throw InvalidConfigError("omega_z must be positive to derive couplings");
    }
    if (drv.alpha_mag < 0.0 || drv.k < 0.0 || spin.b < 0.0) {
        throw InvalidConfigError("drive amplitudes and wavevector must be non-negative");
    }

    const double e = cfg.electron_charge_mag;
    const double m = cfg.electron_mass;
    const double ell = std::sqrt(cfg.hbar / (2.0 * m * f.omega_z));

    Couplings c;
    c.epsilon = std::sqrt(2.0 * e * e * e * cfg.B / (cfg.hbar * m * m)) * drv.alpha_mag;
    c.zeta = cfg.g_factor * e / (2.0 * m) * drv.alpha_mag * drv.k;
    c.lamb_dicke = drv.k * ell;
    c.eta = c.lamb_dicke * c.zeta;
    c.kappa = 2.0 * c.zeta * c.lamb_dicke * c.lamb_dicke;
    c.rabi_s = cfg.g_factor * e * spin.b / (2.0 * m);
    return c;
}

} // namespace geonium
