#include <doctest.h>

#include <cmath>

#include "geonium/hamiltonians.hpp"
#include "helpers.hpp"

using namespace geonium;
using testutil::max_abs;

namespace {

const HilbertSpec kSpec{2, 6, 3, 1};

ModeFrequencies cn_freqs() { return testutil::cn_context().freqs; }
Couplings cn_couplings() { return testutil::cn_context().couplings; }

Complex amp(const StateVector& s, int spin, int nz, int nc = 0) {
    return s.amps(s.spec.index_of(spin, nz, nc));
}

StateVector evolve(const Operator& h, const StateVector& in, double t) {
    return apply(propagator(h, t), in);
}

} // namespace

TEST_SUITE("hamiltonians") {

TEST_CASE("every builder is hermitian") {
    const ModeFrequencies f = cn_freqs();
    const Couplings c = cn_couplings();
    CHECK(hermiticity_defect(free_motion(kSpec, f).mat) < 1e-12);
    CHECK(hermiticity_defect(spin_drive(kSpec, c.rabi_s, 0.9).mat) < 1e-12);
    CHECK(hermiticity_defect(sideband_minus(kSpec, c.eta, 1.3).mat) < 1e-12);
    CHECK(hermiticity_defect(sideband_plus(kSpec, c.eta, -0.4).mat) < 1e-12);
    CHECK(hermiticity_defect(
              carrier_antinode(kSpec, c.zeta, c.lamb_dicke, 0.7).mat) < 1e-12);
    CHECK(hermiticity_defect(effective_cn(kSpec, c.kappa).mat) < 1e-12);
    CHECK(hermiticity_defect(transfer_coupling(kSpec, 0.3).mat) < 1e-12);

    TrapConfig trap = testutil::unit_trap(2.0, 1.0, 8.0);
    DriveConfig drv;
    drv.alpha_mag = 5.8925565098878960e-3;
    drv.k = 0.42426406871192851;
    drv.Omega = 7.0;
    drv.phi = 0.4;
    drv.varphi = -0.7;
    CHECK(hermiticity_defect(full_lab_frame(kSpec, trap, drv, 0.37).mat) < 1e-12);
}

TEST_CASE("free motion spectrum") {
    const ModeFrequencies f = cn_freqs();
    const Operator h = free_motion(kSpec, f);
    for (int s = 0; s < 2; ++s)
        for (int nz = 0; nz < 6; ++nz)
            for (int nc = 0; nc < 3; ++nc) {
                const int i = kSpec.index_of(s, nz, nc);
                const double expected = f.omega_z * nz + f.omega_c * nc +
                                        0.5 * f.omega_s * (s == kSpinUp ? 1 : -1);
                CHECK(h.mat(i, i).real() ==
                      doctest::Approx(expected).epsilon(1e-14));
            }
    // diagonal only
    CHECK(max_abs(h.mat - Matrix(h.mat.diagonal().asDiagonal())) == 0.0);

    // magnetron term enters negatively and only when the mode is live
    CHECK_THROWS_AS(free_motion(kSpec, f, true), InvalidDimensionError);
    HilbertSpec with_mag{2, 2, 2, 3};
    const Operator hm = free_motion(with_mag, f, true);
    const int i0 = with_mag.index_of(kSpinDown, 0, 0, 0);
    const int i1 = with_mag.index_of(kSpinDown, 0, 0, 2);
    CHECK((hm.mat(i1, i1) - hm.mat(i0, i0)).real() ==
          doctest::Approx(-2.0 * f.omega_m).epsilon(1e-12));
}

TEST_CASE("spin drive closed form") {
    const double w = 0.5;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 6; ++trial) {
        const double theta = u(rng), t = std::abs(u(rng)) + 0.1;
        const Operator h = spin_drive(kSpec, w, theta);
        const StateVector out =
            evolve(h, StateVector::basis(kSpec, kSpinDown, 0, 0), t);
        const Complex up_expected =
            -kI * std::exp(-kI * theta) * std::sin(0.5 * w * t);
        CHECK(std::abs(amp(out, kSpinDown, 0) - std::cos(0.5 * w * t)) < 1e-12);
        CHECK(std::abs(amp(out, kSpinUp, 0) - up_expected) < 1e-12);
    }
}

TEST_CASE("sideband closed forms") {
    const double eta = 3e-3;
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> ang(-3.1, 3.1);
    std::uniform_real_distribution<double> dur(10.0, 900.0);
    for (int trial = 0; trial < 6; ++trial) {
        const double varphi = ang(rng), t = dur(rng);

        // red: |n down> <-> |n-1 up> at rate eta sqrt(n)
        const Operator hr = sideband_minus(kSpec, eta, varphi);
        StateVector out = evolve(hr, StateVector::basis(kSpec, kSpinDown, 1, 0), t);
        CHECK(std::abs(amp(out, kSpinDown, 1) - std::cos(eta * t)) < 1e-12);
        CHECK(std::abs(amp(out, kSpinUp, 0) +
                       kI * std::exp(-kI * varphi) * std::sin(eta * t)) < 1e-12);

        out = evolve(hr, StateVector::basis(kSpec, kSpinDown, 3, 0), t);
        const double r3 = eta * std::sqrt(3.0);
        CHECK(std::abs(amp(out, kSpinDown, 3) - std::cos(r3 * t)) < 1e-12);
        CHECK(std::abs(amp(out, kSpinUp, 2) +
                       kI * std::exp(-kI * varphi) * std::sin(r3 * t)) < 1e-12);

        // blue: |n down> <-> |n+1 up> at rate eta sqrt(n+1)
        const Operator hb = sideband_plus(kSpec, eta, varphi);
        out = evolve(hb, StateVector::basis(kSpec, kSpinDown, 0, 0), t);
        CHECK(std::abs(amp(out, kSpinDown, 0) - std::cos(eta * t)) < 1e-12);
        CHECK(std::abs(amp(out, kSpinUp, 1) +
                       kI * std::exp(-kI * varphi) * std::sin(eta * t)) < 1e-12);
    }

    // the red sideband annihilates the joint ground state
    const Operator hr = sideband_minus(kSpec, eta, 0.3);
    const StateVector g = StateVector::basis(kSpec, kSpinDown, 0, 0);
    CHECK((hr.mat * g.amps).norm() == 0.0);

    // blue from |1 down> also reaches |2 up>, the leakage path
    const Operator hb = sideband_plus(kSpec, eta, 0.0);
    const StateVector leak =
        evolve(hb, StateVector::basis(kSpec, kSpinDown, 1, 0), 40.0);
    CHECK(std::abs(amp(leak, kSpinUp, 2)) > 0.1);
}

TEST_CASE("carrier structure at the antinode") {
    const Couplings c = cn_couplings();
    const double varphi = 0.83;
    const Operator h = carrier_antinode(kSpec, c.zeta, c.lamb_dicke, varphi);

    Matrix expected = Matrix::Zero(kSpec.dim(), kSpec.dim());
    const double ld2 = c.lamb_dicke * c.lamb_dicke;
    for (int nz = 0; nz < 6; ++nz) {
        const double f = 1.0 - 0.5 * ld2 - ld2 * nz;
        for (int nc = 0; nc < 3; ++nc) {
            const int up = kSpec.index_of(kSpinUp, nz, nc);
            const int dn = kSpec.index_of(kSpinDown, nz, nc);
            expected(up, dn) = -2.0 * c.zeta * f * std::exp(-kI * varphi);
            expected(dn, up) = std::conj(expected(up, dn));
        }
    }
    CHECK(max_abs(h.mat - expected) < 1e-14);
}

TEST_CASE("conditional generator flops only the excited register level") {
    const Couplings c = cn_couplings();
    const Operator h = effective_cn(kSpec, c.kappa);
    const double t_star = M_PI / (2.0 * c.kappa);

    StateVector out = evolve(h, StateVector::basis(kSpec, kSpinDown, 0, 0), t_star);
    CHECK(std::abs(amp(out, kSpinDown, 0) - 1.0) < 1e-12);

    out = evolve(h, StateVector::basis(kSpec, kSpinDown, 1, 0), t_star);
    CHECK(std::abs(amp(out, kSpinUp, 1) + kI) < 1e-12);

    // n_z = 2 turns twice as fast and lands on -1
    out = evolve(h, StateVector::basis(kSpec, kSpinDown, 2, 0), t_star);
    CHECK(std::abs(amp(out, kSpinDown, 2) + 1.0) < 1e-12);
}

TEST_CASE("transfer beam splitter phases") {
    const double g = 0.05;
    const Operator h = transfer_coupling(kSpec, g);
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> dur(1.0, 60.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double t = dur(rng);
        StateVector out = evolve(h, StateVector::basis(kSpec, kSpinDown, 1, 0), t);
        CHECK(std::abs(amp(out, kSpinDown, 1, 0) - std::cos(g * t)) < 1e-12);
        CHECK(std::abs(amp(out, kSpinDown, 0, 1) - std::sin(g * t)) < 1e-12);

        out = evolve(h, StateVector::basis(kSpec, kSpinDown, 0, 1), t);
        CHECK(std::abs(amp(out, kSpinDown, 0, 1) - std::cos(g * t)) < 1e-12);
        CHECK(std::abs(amp(out, kSpinDown, 1, 0) + std::sin(g * t)) < 1e-12);
    }
    // both modes empty: nothing to exchange
    const StateVector vac = StateVector::basis(kSpec, kSpinUp, 0, 0);
    CHECK((h.mat * vac.amps).norm() == 0.0);
}

TEST_CASE("axial trig blocks") {
    const double ld = 0.3;
    const AxialTrig trig = axial_trig(8, ld, 0.0);

    // exact operator identity survives truncation by construction
    CHECK(max_abs(trig.cos_block * trig.cos_block +
                  trig.sin_block * trig.sin_block - identity_block(8)) < 1e-10);

    // ground state expectation values
    const double debye = std::exp(-0.5 * ld * ld);
    CHECK(trig.cos_block(0, 0).real() == doctest::Approx(debye).epsilon(1e-12));
    CHECK(std::abs(trig.sin_block(0, 0)) < 1e-14);
    CHECK(trig.sin_block(1, 0).real() ==
          doctest::Approx(ld * debye).epsilon(1e-10));

    // <2|cos|2> = exp(-ld^2/2) (1 - 2 x + x^2/2), x = ld^2
    const double x = ld * ld;
    CHECK(trig.cos_block(2, 2).real() ==
          doctest::Approx(debye * (1.0 - 2.0 * x + 0.5 * x * x)).epsilon(1e-8));

    // shifting the wave by a quarter period turns sin into cos
    const AxialTrig shifted = axial_trig(8, ld, M_PI / 2.0);
    CHECK(max_abs(shifted.sin_block - trig.cos_block) < 1e-12);

    CHECK_THROWS_AS(axial_trig(0, 0.3, 0.0), InvalidDimensionError);
}

TEST_CASE("excitation conservation") {
    const Couplings c = cn_couplings();
    const Matrix nz = embed(number_operator(6), Mode::Axial, kSpec).mat;
    const Matrix nc = embed(number_operator(3), Mode::Cyclotron, kSpec).mat;
    const Matrix pu =
        embed(sigma_plus() * sigma_minus(), Mode::Spin, kSpec).mat;

    const Matrix red = sideband_minus(kSpec, c.eta, 0.9).mat;
    CHECK(max_abs(red * (nz + pu) - (nz + pu) * red) < 1e-12);

    const Matrix blue = sideband_plus(kSpec, c.eta, -1.7).mat;
    CHECK(max_abs(blue * (nz - pu) - (nz - pu) * blue) < 1e-12);

    const Matrix xfer = transfer_coupling(kSpec, 0.07).mat;
    CHECK(max_abs(xfer * (nz + nc) - (nz + nc) * xfer) < 1e-12);

    const Matrix carrier = carrier_antinode(kSpec, c.zeta, c.lamb_dicke, 0.4).mat;
    CHECK(max_abs(carrier * nz - nz * carrier) < 1e-12);
}

TEST_CASE("lab model agrees with the standalone builder") {
    const SimContext ctx = testutil::cn_context();
    TrapConfig trap = testutil::unit_trap(2.0, 1.0, 8.0);
    DriveConfig drv;
    drv.alpha_mag = 5.8925565098878960e-3;
    drv.k = 0.42426406871192851;
    drv.Omega = ctx.freqs.omega_s - ctx.freqs.omega_z;
    drv.phi = 0.4;
    drv.varphi = -0.7;

    const LabFrameModel model = LabFrameModel::standing_wave(
        kSpec, ctx.freqs, ctx.couplings.epsilon, ctx.couplings.zeta,
        ctx.couplings.lamb_dicke, drv.Omega, drv.phi, drv.varphi);
    for (double t : {0.0, 0.37, 2.9}) {
        CHECK(max_abs(model.at(t).mat - full_lab_frame(kSpec, trap, drv, t).mat) <
              1e-12);
    }
    CHECK(model.drive_frequency() == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("exact propagation is unitary and composes") {
    const SimContext ctx = testutil::hot_context();
    const LabFrameModel model = LabFrameModel::standing_wave(
        kSpec, ctx.freqs, ctx.couplings.epsilon, 2.0 * ctx.couplings.zeta,
        ctx.couplings.lamb_dicke, ctx.freqs.omega_s, -M_PI / 2.0, 0.0);

    StateVector psi(kSpec, testutil::random_state(kSpec.dim(), 11));
    const StateVector one_hop = model.propagate(psi, 0.0, 5.0);
    CHECK(one_hop.norm() == doctest::Approx(1.0).epsilon(1e-12));

    const StateVector two_hop =
        model.propagate(model.propagate(psi, 0.0, 2.2), 2.2, 2.8);
    CHECK((one_hop.amps - two_hop.amps).norm() < 1e-11);
}

TEST_CASE("exact propagation matches the midpoint integrator") {
    const SimContext ctx = testutil::hot_context();
    const LabFrameModel model = LabFrameModel::standing_wave(
        kSpec, ctx.freqs, ctx.couplings.epsilon, ctx.couplings.zeta,
        ctx.couplings.lamb_dicke, ctx.freqs.omega_s - ctx.freqs.omega_z, 0.0,
        0.0);
    const StateVector psi = StateVector::basis(kSpec, kSpinUp, 0, 0);
    const double T = 2.0;
    const StateVector exact = model.propagate(psi, 0.0, T);
    const StateVector stepped = evolve_timedep(
        [&](double t) { return model.at(t); }, psi, 0.0, T, 1e-3);
    CHECK((exact.amps - stepped.amps).norm() < 1e-4);

    const StateVector stepped_fine = evolve_timedep(
        [&](double t) { return model.at(t); }, psi, 0.0, T, 5e-4);
    const double e1 = (exact.amps - stepped.amps).norm();
    const double e2 = (exact.amps - stepped_fine.amps).norm();
    CHECK(e1 / e2 > 3.2);
}

TEST_CASE("rotating frame undoes free motion") {
    const ModeFrequencies f = cn_freqs();
    StateVector psi(kSpec, testutil::random_state(kSpec.dim(), 23));
    const double T = 3.7;
    const StateVector lab = evolve(free_motion(kSpec, f), psi, T);
    const StateVector back = to_rotating_frame(lab, f, T);
    CHECK((back.amps - psi.amps).norm() < 1e-10);
}

} // TEST_SUITE
