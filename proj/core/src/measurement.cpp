#include "geonium/measurement.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace geonium {

double transfer_time(double g_strength) {
    if (!(g_strength > 0.0) || !std::isfinite(g_strength)) {
        throw InvalidInputError("transfer_time: coupling must be positive");
    }
    return (M_PI / 2.0) / g_strength;
}

StateVector readout_transfer(const StateVector& state, double g_strength,
                             RunDiagnostics* diag) {
    state.spec.validate();
    if (state.spec.axial_dim < 2 || state.spec.cyclotron_dim < 2) {
        throw InvalidDimensionError(
            "readout_transfer: needs axial_dim >= 2 and cyclotron_dim >= 2");
    }
    if (std::abs(state.norm() - 1.0) > 1e-6) {
        throw InvalidInputError("readout_transfer: state must be normalized");
    }

    double residual = 0.0;
    for (int s = 0; s < state.spec.spin_dim; ++s) {
        for (int nz = 2; nz < state.spec.axial_dim; ++nz) {
            for (int nc = 0; nc < state.spec.cyclotron_dim; ++nc) {
                for (int nm = 0; nm < state.spec.magnetron_dim; ++nm) {
                    residual += std::norm(
                        state.amps(state.spec.index_of(s, nz, nc, nm)));
                }
            }
        }
    }
    char buf[160];
    if (residual > 1e-6 && diag != nullptr) {
        std::snprintf(buf, sizeof buf,
                      "readout_transfer: axial population outside {0,1} is "
                      "%.3e, transfer is not a clean swap",
                      residual);
        diag->warnings.emplace_back(buf);
    }

    const double t = transfer_time(g_strength);
    const Operator h = transfer_coupling(state.spec, g_strength);
    StateVector out = state;
    out.amps = apply_expm(-kI * t * h.mat, out.amps);

    double ground = 0.0;
    for (int s = 0; s < out.spec.spin_dim; ++s) {
        for (int nc = 0; nc < out.spec.cyclotron_dim; ++nc) {
            for (int nm = 0; nm < out.spec.magnetron_dim; ++nm) {
                ground += std::norm(out.amps(out.spec.index_of(s, 0, nc, nm)));
            }
        }
    }
    if (ground < 1.0 - 1e-6 && diag != nullptr) {
        std::snprintf(buf, sizeof buf,
                      "readout_transfer: axial mode not emptied, residual %.3e",
                      1.0 - ground);
        diag->warnings.emplace_back(buf);
    }
    return out;
}

double axial_shift(int n_c, int s, const BottleConfig& bottle) {
    if (n_c < 0 || (s != -1 && s != 1)) {
        throw InvalidInputError("axial_shift: n_c must be >= 0 and s must be "
                                "-1 or +1");
    }
    if (!(bottle.omega_tilde > 0.0)) {
        throw InvalidInputError("axial_shift: omega_tilde must be positive");
    }
    return bottle.omega_tilde *
           (bottle.g_factor * s / 4.0 + n_c + 0.5);
}

MeasurementRecord projective_measure(const StateVector& state,
                                     std::uint64_t seed,
                                     const BottleConfig& bottle) {
    state.spec.validate();
    if (std::abs(state.norm() - 1.0) > 1e-6) {
        throw InvalidInputError("projective_measure: state must be normalized");
    }

    // Joint (n_c, spin) marginal, enumerated in a fixed order so sampling is
    // reproducible: n_c ascending, spin index ascending.
    struct Outcome {
        int n_c;
        int spin_idx;
        double prob;
    };
    std::vector<Outcome> outcomes;
    double total = 0.0;
    for (int nc = 0; nc < state.spec.cyclotron_dim; ++nc) {
        for (int sp = 0; sp < state.spec.spin_dim; ++sp) {
            double p = 0.0;
            for (int nz = 0; nz < state.spec.axial_dim; ++nz) {
                for (int nm = 0; nm < state.spec.magnetron_dim; ++nm) {
                    p += std::norm(state.amps(state.spec.index_of(sp, nz, nc, nm)));
                }
            }
            outcomes.push_back({nc, sp, p});
            total += p;
        }
    }
    if (total < 1e-15) {
        throw MeasurementDegenerateError(
            "projective_measure: total outcome probability below 1e-15");
    }

    std::mt19937_64 rng(seed);
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double draw = u * total;
    double cum = 0.0;
    const Outcome* picked = &outcomes.back();
    for (const Outcome& o : outcomes) {
        cum += o.prob;
        if (draw < cum && o.prob > 0.0) {
            picked = &o;
            break;
        }
    }
    if (!(picked->prob > 0.0)) {
        // The tail rounding landed on an empty outcome; fall back to the last
        // populated one.
        for (auto it = outcomes.rbegin(); it != outcomes.rend(); ++it) {
            if (it->prob > 0.0) {
                picked = &*it;
                break;
            }
        }
    }

    MeasurementRecord rec;
    rec.seed = seed;
    rec.n_c = picked->n_c;
    rec.s = (picked->spin_idx == kSpinUp) ? 1 : -1;
    rec.probability = picked->prob / total;
    rec.shift = axial_shift(rec.n_c, rec.s, bottle);

    rec.post_state = state;
    for (int nc = 0; nc < state.spec.cyclotron_dim; ++nc) {
        for (int sp = 0; sp < state.spec.spin_dim; ++sp) {
            if (nc == picked->n_c && sp == picked->spin_idx) {
                continue;
            }
            for (int nz = 0; nz < state.spec.axial_dim; ++nz) {
                for (int nm = 0; nm < state.spec.magnetron_dim; ++nm) {
                    rec.post_state.amps(state.spec.index_of(sp, nz, nc, nm)) = 0.0;
                }
            }
        }
    }
    rec.post_state.normalize();
    return rec;
}

StateVector reset_axial_ground(const StateVector& state) {
    state.spec.validate();
    StateVector out = state;
    for (int sp = 0; sp < state.spec.spin_dim; ++sp) {
        for (int nz = 1; nz < state.spec.axial_dim; ++nz) {
            for (int nc = 0; nc < state.spec.cyclotron_dim; ++nc) {
                for (int nm = 0; nm < state.spec.magnetron_dim; ++nm) {
                    out.amps(state.spec.index_of(sp, nz, nc, nm)) = 0.0;
                }
            }
        }
    }
    if (out.norm() < 1e-7) {
        throw MeasurementDegenerateError(
            "reset_axial_ground: axial ground population is negligible");
    }
    out.normalize();
    return out;
}

} // namespace geonium
