#include "geonium/hamiltonians.hpp"

#include <cmath>
#include <utility>

namespace geonium {

namespace {

Matrix spin_phase_pair(double phase) {
    // sigma_+ e^{-i phase} + sigma_- e^{+i phase}
    return sigma_plus() * std::exp(-kI * phase) + sigma_minus() * std::exp(kI * phase);
}

} // namespace

Operator free_motion(const HilbertSpec& spec, const ModeFrequencies& freqs,
                     bool include_magnetron) {
    spec.validate();
    if (include_magnetron && spec.magnetron_dim == 1) {
        throw InvalidDimensionError(
            "magnetron term requested but the magnetron mode is frozen (dim 1)");
    }
    Matrix h = freqs.omega_z * embed(number_operator(spec.axial_dim), Mode::Axial, spec).mat;
    h += freqs.omega_c * embed(number_operator(spec.cyclotron_dim), Mode::Cyclotron, spec).mat;
    h += 0.5 * freqs.omega_s * embed(sigma_z(), Mode::Spin, spec).mat;
    if (include_magnetron) {
        h -= freqs.omega_m *
             embed(number_operator(spec.magnetron_dim), Mode::Magnetron, spec).mat;
    }
    return Operator(spec, std::move(h), true);
}

Operator spin_drive(const HilbertSpec& spec, double rabi_s, double theta) {
    Matrix h = 0.5 * rabi_s * embed(spin_phase_pair(theta), Mode::Spin, spec).mat;
    return Operator(spec, std::move(h), true);
}

Operator sideband_minus(const HilbertSpec& spec, double eta, double varphi) {
    const LadderPair az = ladder(spec.axial_dim);
    const Matrix term = embed(sigma_plus(), Mode::Spin, spec).mat *
                        embed(az.lowering, Mode::Axial, spec).mat *
                        std::exp(-kI * varphi);
    Matrix h = eta * (term + term.adjoint());
    return Operator(spec, std::move(h), true);
}

Operator sideband_plus(const HilbertSpec& spec, double eta, double varphi) {
    const LadderPair az = ladder(spec.axial_dim);
    const Matrix term = embed(sigma_plus(), Mode::Spin, spec).mat *
                        embed(az.raising, Mode::Axial, spec).mat *
                        std::exp(-kI * varphi);
    Matrix h = eta * (term + term.adjoint());
    return Operator(spec, std::move(h), true);
}

Operator carrier_antinode(const HilbertSpec& spec, double zeta, double lamb_dicke,
                          double varphi) {
    const double ld2 = lamb_dicke * lamb_dicke;
    const Matrix axial_factor =
        (1.0 - ld2 / 2.0) * identity_block(spec.axial_dim) -
        ld2 * number_operator(spec.axial_dim);
    Matrix h = -2.0 * zeta * embed(spin_phase_pair(varphi), Mode::Spin, spec).mat *
               embed(axial_factor, Mode::Axial, spec).mat;
    h = ((h + h.adjoint()) / 2.0).eval();
    return Operator(spec, std::move(h), true);
}

Operator effective_cn(const HilbertSpec& spec, double kappa) {
    Matrix h = kappa * embed(number_operator(spec.axial_dim), Mode::Axial, spec).mat *
               embed(sigma_x(), Mode::Spin, spec).mat;
    return Operator(spec, std::move(h), true);
}

Operator transfer_coupling(const HilbertSpec& spec, double g_strength) {
    const LadderPair az = ladder(spec.axial_dim);
    const LadderPair ac = ladder(spec.cyclotron_dim);
    const Matrix cross = embed(ac.raising, Mode::Cyclotron, spec).mat *
                         embed(az.lowering, Mode::Axial, spec).mat;
    Matrix h = kI * g_strength * (cross - cross.adjoint());
    h = ((h + h.adjoint()) / 2.0).eval();
    return Operator(spec, std::move(h), true);
}

AxialTrig axial_trig(int axial_dim, double lamb_dicke, double phi) {
    const LadderPair az = ladder(axial_dim);
    const Matrix kz = lamb_dicke * (az.lowering + az.raising);
    Eigen::SelfAdjointEigenSolver<Matrix> es(kz);
    if (es.info() != Eigen::Success) {
        throw ContractViolationError("axial_trig: eigendecomposition failed");
    }
    const Eigen::VectorXd& evals = es.eigenvalues();
    Eigen::VectorXd cos_vals(evals.size());
    Eigen::VectorXd sin_vals(evals.size());
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        cos_vals(i) = std::cos(evals(i) + phi);
        sin_vals(i) = std::sin(evals(i) + phi);
    }
    AxialTrig out;
    out.cos_block = es.eigenvectors() * cos_vals.asDiagonal() * es.eigenvectors().adjoint();
    out.sin_block = es.eigenvectors() * sin_vals.asDiagonal() * es.eigenvectors().adjoint();
    out.cos_block = ((out.cos_block + out.cos_block.adjoint()) / 2.0).eval();
    out.sin_block = ((out.sin_block + out.sin_block.adjoint()) / 2.0).eval();
    return out;
}

Operator full_lab_frame(const HilbertSpec& spec, const TrapConfig& trap,
                        const DriveConfig& drv, double t) {
    const ModeFrequencies freqs = derive_frequencies(trap);
    const Couplings coup = derive_couplings(trap, drv, SpinDriveConfig{});
    return LabFrameModel::standing_wave(spec, freqs, coup.epsilon, coup.zeta,
                                        coup.lamb_dicke, drv.Omega, drv.phi,
                                        drv.varphi)
        .at(t);
}

StateVector to_rotating_frame(const StateVector& lab_state, const ModeFrequencies& freqs,
                              double t) {
    const HilbertSpec& sp = lab_state.spec;
    StateVector out = lab_state;
    for (int s = 0; s < sp.spin_dim; ++s) {
        const double spin_sign = (s == kSpinUp) ? 1.0 : -1.0;
        for (int nz = 0; nz < sp.axial_dim; ++nz) {
            for (int nc = 0; nc < sp.cyclotron_dim; ++nc) {
                const double phase =
                    freqs.omega_z * nz + freqs.omega_c * nc + 0.5 * freqs.omega_s * spin_sign;
                for (int nm = 0; nm < sp.magnetron_dim; ++nm) {
                    out.amps(sp.index_of(s, nz, nc, nm)) *= std::exp(kI * phase * t);
                }
            }
        }
    }
    return out;
}

LabFrameModel::LabFrameModel(HilbertSpec spec, Matrix h_free, Matrix v0,
                             Eigen::VectorXd g_levels, double omega_drive)
    : spec_(spec),
      h_free_(std::move(h_free)),
      v0_(std::move(v0)),
      g_levels_(std::move(g_levels)),
      omega_drive_(omega_drive) {
    Matrix h_rot = h_free_ + v0_;
    h_rot -= omega_drive_ * Matrix(g_levels_.cast<Complex>().asDiagonal());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h_rot);
    if (es.info() != Eigen::Success) {
        throw ContractViolationError("LabFrameModel: eigendecomposition failed");
    }
    rot_evals_ = es.eigenvalues();
    rot_evecs_ = es.eigenvectors();
}

LabFrameModel LabFrameModel::standing_wave(const HilbertSpec& spec,
                                           const ModeFrequencies& freqs, double epsilon,
                                           double zeta, double lamb_dicke, double Omega,
                                           double phi, double varphi) {
    spec.validate();
    const Matrix h_free = free_motion(spec, freqs, false).mat;

    const AxialTrig trig = axial_trig(spec.axial_dim, lamb_dicke, phi);
    const Matrix cos_full = embed(trig.cos_block, Mode::Axial, spec).mat;
    const Matrix sin_full = embed(trig.sin_block, Mode::Axial, spec).mat;

    const LadderPair ac = ladder(spec.cyclotron_dim);
    const Matrix ac_low = embed(ac.lowering, Mode::Cyclotron, spec).mat;
    const Matrix sm = embed(sigma_minus(), Mode::Spin, spec).mat;

    // Drive at t = 0: epsilon (a_c e^{i varphi} + h.c.) cos(k z + phi)
    //               + zeta (sigma_- e^{i varphi} + h.c.) sin(k z + phi).
    Matrix cyc_term = epsilon * (ac_low * std::exp(kI * varphi));
    cyc_term = (cyc_term + cyc_term.adjoint()).eval();
    Matrix spin_term = zeta * (sm * std::exp(kI * varphi));
    spin_term = (spin_term + spin_term.adjoint()).eval();
    Matrix v0 = cyc_term * cos_full + spin_term * sin_full;
    v0 = ((v0 + v0.adjoint()) / 2.0).eval();

    Eigen::VectorXd g_levels(spec.dim());
    for (int s = 0; s < spec.spin_dim; ++s) {
        for (int nz = 0; nz < spec.axial_dim; ++nz) {
            for (int nc = 0; nc < spec.cyclotron_dim; ++nc) {
                for (int nm = 0; nm < spec.magnetron_dim; ++nm) {
                    g_levels(spec.index_of(s, nz, nc, nm)) =
                        nc + (s == kSpinUp ? 1.0 : 0.0);
                }
            }
        }
    }
    return LabFrameModel(spec, h_free, std::move(v0), std::move(g_levels), Omega);
}

LabFrameModel LabFrameModel::spin_field(const HilbertSpec& spec,
                                        const ModeFrequencies& freqs, double rabi_s,
                                        double theta) {
    spec.validate();
    const Matrix h_free = free_motion(spec, freqs, false).mat;
    Matrix v0 = 0.5 * rabi_s * embed(spin_phase_pair(theta), Mode::Spin, spec).mat;

    Eigen::VectorXd g_levels(spec.dim());
    for (int s = 0; s < spec.spin_dim; ++s) {
        for (int nz = 0; nz < spec.axial_dim; ++nz) {
            for (int nc = 0; nc < spec.cyclotron_dim; ++nc) {
                for (int nm = 0; nm < spec.magnetron_dim; ++nm) {
                    g_levels(spec.index_of(s, nz, nc, nm)) =
                        nc + (s == kSpinUp ? 1.0 : 0.0);
                }
            }
        }
    }
    return LabFrameModel(spec, h_free, std::move(v0), std::move(g_levels),
                         freqs.omega_s);
}

Operator LabFrameModel::at(double t) const {
    Matrix h = h_free_;
    const double wt = omega_drive_ * t;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
            if (v0_(i, j) != Complex(0.0, 0.0)) {
                h(i, j) += v0_(i, j) * std::exp(-kI * wt * (g_levels_(i) - g_levels_(j)));
            }
        }
    }
    h = ((h + h.adjoint()) / 2.0).eval();
    return Operator(spec_, std::move(h), true);
}

StateVector LabFrameModel::propagate(const StateVector& input, double t0,
                                     double duration) const {
    if (!(input.spec == spec_)) {
        throw InvalidDimensionError("LabFrameModel: state lives on a different space");
    }
    Vector v = input.amps;
    // e^{+i Omega t0 G}
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) *= std::exp(kI * omega_drive_ * t0 * g_levels_(i));
    }
    // exp(-i (H(0) - Omega G) T)
    Vector coeffs = rot_evecs_.adjoint() * v;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        coeffs(i) *= std::exp(-kI * rot_evals_(i) * duration);
    }
    v = rot_evecs_ * coeffs;
    // e^{-i Omega (t0 + T) G}
    const double t1 = t0 + duration;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) *= std::exp(-kI * omega_drive_ * t1 * g_levels_(i));
    }
    return StateVector(spec_, std::move(v));
}

} // namespace geonium
