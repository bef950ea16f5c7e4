#pragma once

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geonium/hamiltonians.hpp"
#include "geonium/linalg.hpp"
#include "geonium/trap.hpp"

namespace geonium {

// Sentinel meaning "resolve this field from the simulation context".
inline constexpr double kAutoParam = std::numeric_limits<double>::quiet_NaN();
bool is_auto(double v);

// One timed pulse. theta is the spin-drive phase, varphi the drive
// polarization phase, phi the standing-wave position phase and Omega the
// drive frequency; phi, Omega and strength default to values derived from
// the pulse kind and the context couplings. The meaning of strength depends
// on kind: rabi_s (SpinDrive), eta (sidebands), zeta (CarrierAntinode),
// kappa (EffectiveCN) or g (Transfer).
struct Pulse {
    HamiltonianKind kind = HamiltonianKind::SpinDrive;
    double duration = 0.0; // s
    double theta = 0.0;    // rad
    double varphi = 0.0;   // rad
    double phi = kAutoParam;
    double Omega = kAutoParam;
    double strength = kAutoParam;
};

struct PulseSequence {
    std::vector<Pulse> pulses;

    double total_duration() const;
};

enum class RunMode { Effective, FullLab };

// Derived quantities shared by every pulse of a run.
struct SimContext {
    HilbertSpec spec;
    ModeFrequencies freqs;
    Couplings couplings;
    double step = 0.0; // full-lab integration step, s

    static SimContext make(const HilbertSpec& spec, const TrapConfig& trap,
                           const DriveConfig& drv, const SpinDriveConfig& spin,
                           double step);
};

// The cyclotron and spin rates of one standing wave share the drive
// amplitude, so fixing zeta fixes epsilon. Ratio from the trap geometry:
// epsilon / zeta = (omega_c / omega_s) sqrt(omega_c / omega_z) / lamb_dicke.
double epsilon_for_zeta(const ModeFrequencies& freqs, double lamb_dicke,
                        double zeta);

struct RunDiagnostics {
    std::vector<std::string> warnings;
    double max_axial_tail = 0.0;
    double max_cyclotron_tail = 0.0;
};

// Applies the pulses left to right. Effective mode exponentiates each
// pulse's rotating-frame generator; full-lab mode integrates the
// time-dependent lab Hamiltonian across the whole sequence with drive
// phases referenced to global time, then maps the result back to the
// rotating frame. Tail population above 1e-6 on the axial or cyclotron
// mode is reported through diag.
StateVector run(const PulseSequence& seq, const StateVector& input, RunMode mode,
                const SimContext& ctx, RunDiagnostics* diag = nullptr);

// How the compensation pulse length was chosen.
struct CompensationPlan {
    double t_star = 0.0; // conditional pulse length
    double tau = 0.0;    // compensation pulse length
    long n = 0;          // winding integer actually used
    int sign = -1;       // sign of the 2 pi n term in tau rabi_s = angle +- 2 pi n
};

// Conditional carrier pulse for t* = pi / (2 kappa) followed by a SpinDrive
// (theta = 0) whose length tau unwinds the n_z-independent rotation:
// tau rabi_s = 4 zeta (1 - lamb_dicke^2 / 2) t* +- 2 pi n. Among n >=
// min_winding the shortest non-negative tau wins.
PulseSequence cn_sequence(const Couplings& c, int min_winding = 0,
                          CompensationPlan* plan = nullptr);

struct PrepareResult {
    PulseSequence sequence;
    bool reachable = false;
    double predicted_leakage = 0.0;
    double predicted_fidelity = 0.0;
    // Register amplitudes the sequence produces, order
    // {|0 down>, |0 up>, |1 down>, |1 up>}.
    Eigen::Vector4cd predicted_amplitudes = Eigen::Vector4cd::Zero();
};

// Plans a SpinDrive / SidebandMinus / SidebandPlus sequence turning the
// ground state |0>_z |down> into the target register amplitudes
// (alpha, beta, gamma, delta). Targets with both gamma and delta nonzero
// force the blue sideband to act on a populated |1 down> level, which
// leaks toward |2 up>; such targets are reported unreachable together
// with the leakage the emitted sequence will produce.
PrepareResult prepare_state(const Eigen::Vector4cd& target, const Couplings& c);

// Line-oriented text form, one pulse per line, exact round trip.
std::string serialize_sequence(const PulseSequence& seq);
PulseSequence parse_sequence(const std::string& text);

const char* kind_name(HamiltonianKind kind);
HamiltonianKind kind_from_name(const std::string& name);

} // namespace geonium
