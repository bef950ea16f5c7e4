#include "geonium/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>

namespace geonium {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kTailWarnLevel = 1e-6;
// Rotation angles below this produce no pulse; the fidelity cost of
// dropping them is below the planner's own 1e-6 guarantee.
constexpr double kAngleCut = 1e-9;

double require_rate(double w, const char* what) {
    if (!std::isfinite(w) || w < 0.0) {
        throw InvalidInputError(std::string("run: ") + what +
                                " rate must be finite and non-negative");
    }
    return w;
}

double resolved_strength(const Pulse& p, const SimContext& ctx) {
    if (!is_auto(p.strength)) {
        return p.strength;
    }
    switch (p.kind) {
        case HamiltonianKind::FreeMotion: return 0.0;
        case HamiltonianKind::SpinDrive: return ctx.couplings.rabi_s;
        case HamiltonianKind::SidebandMinus:
        case HamiltonianKind::SidebandPlus: return ctx.couplings.eta;
        case HamiltonianKind::CarrierAntinode:
        case HamiltonianKind::FullLabFrame: return ctx.couplings.zeta;
        case HamiltonianKind::EffectiveCN: return ctx.couplings.kappa;
        case HamiltonianKind::Transfer:
            return ctx.couplings.epsilon * ctx.couplings.lamb_dicke;
    }
    throw InvalidInputError("run: unknown pulse kind");
}

Operator effective_generator(const Pulse& p, const SimContext& ctx) {
    const double w = require_rate(resolved_strength(p, ctx), kind_name(p.kind));
    switch (p.kind) {
        case HamiltonianKind::FreeMotion:
            // Idle segments are absorbed into the rotating frame.
            return Operator(ctx.spec, Matrix::Zero(ctx.spec.dim(), ctx.spec.dim()),
                            true);
        case HamiltonianKind::SpinDrive:
            return spin_drive(ctx.spec, w, p.theta);
        case HamiltonianKind::SidebandMinus:
            return sideband_minus(ctx.spec, w, p.varphi);
        case HamiltonianKind::SidebandPlus:
            return sideband_plus(ctx.spec, w, p.varphi);
        case HamiltonianKind::CarrierAntinode:
            return carrier_antinode(ctx.spec, w, ctx.couplings.lamb_dicke, p.varphi);
        case HamiltonianKind::EffectiveCN:
            return effective_cn(ctx.spec, w);
        case HamiltonianKind::Transfer:
            return transfer_coupling(ctx.spec, w);
        case HamiltonianKind::FullLabFrame:
            throw InvalidInputError(
                "run: a full-lab pulse has no effective-mode generator");
    }
    throw InvalidInputError("run: unknown pulse kind");
}

std::optional<LabFrameModel> lab_model(const Pulse& p, const SimContext& ctx) {
    const double w = require_rate(resolved_strength(p, ctx), kind_name(p.kind));
    const double ld = ctx.couplings.lamb_dicke;
    const ModeFrequencies& f = ctx.freqs;
    auto wave = [&](double zeta_lab, double omega_default, double phi_default) {
        if (!(ld > 0.0)) {
            throw InvalidInputError(
                "run: standing-wave pulses need a positive Lamb-Dicke parameter");
        }
        const double Omega = is_auto(p.Omega) ? omega_default : p.Omega;
        const double phi = is_auto(p.phi) ? phi_default : p.phi;
        const double eps = epsilon_for_zeta(f, ld, zeta_lab);
        return LabFrameModel::standing_wave(ctx.spec, f, eps, zeta_lab, ld, Omega,
                                            phi, p.varphi);
    };
    switch (p.kind) {
        case HamiltonianKind::FreeMotion:
            return std::nullopt;
        case HamiltonianKind::SpinDrive:
            return LabFrameModel::spin_field(ctx.spec, f, w, p.theta);
        case HamiltonianKind::SidebandMinus:
            // w is the sideband rate eta = lamb_dicke * zeta.
            return wave(w / ld, f.omega_s - f.omega_z, 0.0);
        case HamiltonianKind::SidebandPlus:
            return wave(w / ld, f.omega_s + f.omega_z, 0.0);
        case HamiltonianKind::CarrierAntinode:
            // The conditional-gate generator absorbs half the physical spin
            // rate, so realizing strength w takes a wave with zeta = 2 w.
            return wave(2.0 * w, f.omega_s, -M_PI / 2.0);
        case HamiltonianKind::FullLabFrame: {
            if (is_auto(p.Omega)) {
                throw InvalidInputError(
                    "run: a full-lab pulse needs an explicit drive frequency");
            }
            return wave(w, p.Omega, 0.0);
        }
        case HamiltonianKind::EffectiveCN:
            throw InvalidInputError(
                "run: the conditional generator is effective-only; realize it as "
                "a carrier pulse");
        case HamiltonianKind::Transfer:
            throw InvalidInputError(
                "run: the transfer coupling is effective-only; the readout chain "
                "applies it directly");
    }
    throw InvalidInputError("run: unknown pulse kind");
}

void note_tails(const StateVector& s, std::size_t pulse_idx, RunDiagnostics* diag) {
    const double az = tail_population(s, Mode::Axial);
    const double ac = tail_population(s, Mode::Cyclotron);
    if (diag == nullptr) {
        return;
    }
    diag->max_axial_tail = std::max(diag->max_axial_tail, az);
    diag->max_cyclotron_tail = std::max(diag->max_cyclotron_tail, ac);
    char buf[160];
    if (az > kTailWarnLevel) {
        std::snprintf(buf, sizeof buf,
                      "pulse %zu: axial tail population %.3e exceeds %.0e",
                      pulse_idx, az, kTailWarnLevel);
        diag->warnings.emplace_back(buf);
    }
    if (ac > kTailWarnLevel) {
        std::snprintf(buf, sizeof buf,
                      "pulse %zu: cyclotron tail population %.3e exceeds %.0e",
                      pulse_idx, ac, kTailWarnLevel);
        diag->warnings.emplace_back(buf);
    }
}

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

} // namespace

bool is_auto(double v) { return std::isnan(v); }

double PulseSequence::total_duration() const {
    double total = 0.0;
    for (const Pulse& p : pulses) {
        total += p.duration;
    }
    return total;
}

SimContext SimContext::make(const HilbertSpec& spec, const TrapConfig& trap,
                            const DriveConfig& drv, const SpinDriveConfig& spin,
                            double step) {
    spec.validate();
    SimContext ctx;
    ctx.spec = spec;
    ctx.freqs = derive_frequencies(trap);
    ctx.couplings = derive_couplings(trap, drv, spin);
    ctx.step = step;
    return ctx;
}

double epsilon_for_zeta(const ModeFrequencies& freqs, double lamb_dicke,
                        double zeta) {
    if (!(lamb_dicke > 0.0) || !(freqs.omega_s > 0.0) || !(freqs.omega_z > 0.0)) {
        throw InvalidInputError("epsilon_for_zeta: needs positive frequencies and "
                                "Lamb-Dicke parameter");
    }
    return zeta * (freqs.omega_c / freqs.omega_s) *
           std::sqrt(freqs.omega_c / freqs.omega_z) / lamb_dicke;
}

StateVector run(const PulseSequence& seq, const StateVector& input, RunMode mode,
                const SimContext& ctx, RunDiagnostics* diag) {
    if (!(input.spec == ctx.spec)) {
        throw InvalidInputError("run: input state and context use different "
                                "Hilbert spaces");
    }
    if (std::abs(input.norm() - 1.0) > 1e-6) {
        throw InvalidInputError("run: input state must be normalized");
    }
    for (const Pulse& p : seq.pulses) {
        if (!(p.duration >= 0.0) || !std::isfinite(p.duration)) {
            throw InvalidInputError("run: pulse durations must be finite and "
                                    "non-negative");
        }
    }

    StateVector state = input;
    if (mode == RunMode::Effective) {
        for (std::size_t i = 0; i < seq.pulses.size(); ++i) {
            const Pulse& p = seq.pulses[i];
            const Operator h = effective_generator(p, ctx);
            state.amps = apply_expm(-kI * p.duration * h.mat, state.amps);
            note_tails(state, i, diag);
        }
    } else {
        if (!(ctx.step > 0.0)) {
            throw InvalidInputError("run: full-lab mode needs a positive "
                                    "integration step");
        }
        double t = 0.0;
        for (std::size_t i = 0; i < seq.pulses.size(); ++i) {
            const Pulse& p = seq.pulses[i];
            const std::optional<LabFrameModel> model = lab_model(p, ctx);
            if (p.duration > 0.0) {
                if (model.has_value()) {
                    state = evolve_timedep(
                        [&](double tt) { return model->at(tt); }, state, t,
                        t + p.duration, ctx.step);
                } else {
                    const Operator h0 = free_motion(ctx.spec, ctx.freqs);
                    state = evolve_timedep([&](double) { return h0; }, state, t,
                                           t + p.duration, ctx.step);
                }
            }
            t += p.duration;
            note_tails(state, i, diag);
        }
        state = to_rotating_frame(state, ctx.freqs, t);
    }

    const double drift = std::abs(state.norm() - 1.0);
    const double bound = (mode == RunMode::Effective) ? 1e-6 : 1e-5;
    if (drift > bound) {
        throw ContractViolationError("run: output norm drifted by more than the "
                                     "sequence unitarity bound");
    }
    return state;
}

PulseSequence cn_sequence(const Couplings& c, int min_winding,
                          CompensationPlan* plan) {
    if (!(c.kappa > 0.0)) {
        throw InvalidInputError("cn_sequence: conditional rate kappa must be "
                                "positive");
    }
    if (min_winding < 0) {
        throw InvalidInputError("cn_sequence: winding floor must be >= 0");
    }
    if (!(c.rabi_s > 0.0)) {
        throw InfeasibleCompensationError(
            "cn_sequence: spin-drive rate is not positive, the compensation "
            "pulse cannot be realized");
    }
    const double t_star = M_PI / (2.0 * c.kappa);
    const double angle =
        4.0 * c.zeta * (1.0 - c.lamb_dicke * c.lamb_dicke / 2.0) * t_star;

    long n_down = static_cast<long>(std::floor(angle / kTwoPi));
    double rem = angle - kTwoPi * static_cast<double>(n_down);
    if (rem < 0.0) {
        rem += kTwoPi;
        --n_down;
    }

    CompensationPlan best;
    best.t_star = t_star;
    if (n_down >= min_winding) {
        best.sign = -1;
        best.n = n_down;
        best.tau = rem / c.rabi_s;
    } else {
        best.sign = +1;
        best.n = min_winding;
        best.tau = (angle + kTwoPi * static_cast<double>(min_winding)) / c.rabi_s;
    }
    if (!(best.tau >= 0.0) || !std::isfinite(best.tau)) {
        throw InfeasibleCompensationError(
            "cn_sequence: no non-negative compensation length exists");
    }
    if (plan != nullptr) {
        *plan = best;
    }

    Pulse carrier;
    carrier.kind = HamiltonianKind::CarrierAntinode;
    carrier.duration = t_star;
    carrier.varphi = 0.0;
    carrier.strength = c.zeta;

    Pulse comp;
    comp.kind = HamiltonianKind::SpinDrive;
    comp.duration = best.tau;
    comp.theta = 0.0;
    comp.strength = c.rabi_s;

    PulseSequence seq;
    seq.pulses = {carrier, comp};
    return seq;
}

PrepareResult prepare_state(const Eigen::Vector4cd& target, const Couplings& c) {
    const double n2 = target.squaredNorm();
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-9) {
        throw InvalidInputError("prepare_state: target amplitudes must be "
                                "normalized");
    }
    // Global phase freedom: rotate the target so the |0 down> amplitude is
    // real and non-negative.
    Eigen::Vector4cd t = target;
    if (std::abs(t(0)) > 0.0) {
        t *= std::conj(t(0)) / std::abs(t(0));
    }
    const double alpha = t(0).real();
    const Complex beta = t(1);
    const Complex gamma = t(2);
    const Complex delta = t(3);

    const double c1 = std::hypot(alpha, std::abs(delta));
    const double s1 = std::hypot(std::abs(beta), std::abs(gamma));
    const double phi1 = std::atan2(s1, c1);
    const double phi2 = std::atan2(std::abs(gamma), std::abs(beta));
    const double phi3 = (c1 > 0.0) ? std::atan2(std::abs(delta), alpha) : 0.0;

    const double theta1 =
        (std::abs(beta) > 0.0) ? wrap_angle(-M_PI / 2.0 - std::arg(beta)) : 0.0;
    const double cfac = std::cos(std::sqrt(2.0) * phi3);
    const double varphi2 =
        (std::abs(gamma) > 0.0)
            ? wrap_angle(std::arg(gamma) - M_PI + theta1 + (cfac < 0.0 ? -M_PI : 0.0))
            : 0.0;
    const double varphi3 =
        (std::abs(delta) > 0.0) ? wrap_angle(-M_PI / 2.0 - std::arg(delta)) : 0.0;

    PrepareResult res;
    const Complex phase1 = std::exp(-kI * theta1);
    const Complex phase2 = std::exp(kI * (varphi2 - theta1));
    const Complex phase3 = std::exp(-kI * varphi3);
    const double sin1 = std::sin(phi1), cos1 = std::cos(phi1);
    const double sin2 = std::sin(phi2), cos2 = std::cos(phi2);
    const double sin3 = std::sin(phi3), cos3 = std::cos(phi3);
    res.predicted_amplitudes(0) = cos1 * cos3;
    res.predicted_amplitudes(1) = -kI * phase1 * sin1 * cos2;
    res.predicted_amplitudes(2) = -phase2 * sin1 * sin2 * cfac;
    res.predicted_amplitudes(3) = -kI * phase3 * cos1 * sin3;
    const double leak_amp = sin1 * sin2 * std::sin(std::sqrt(2.0) * phi3);
    res.predicted_leakage = leak_amp * leak_amp;
    res.predicted_fidelity = std::norm(t.dot(res.predicted_amplitudes));
    res.reachable = res.predicted_fidelity >= 1.0 - 1e-6;

    auto need_rate = [](double rate, const char* what) {
        if (!(rate > 0.0)) {
            throw InvalidInputError(std::string("prepare_state: target needs a "
                                                "positive ") +
                                    what + " rate");
        }
        return rate;
    };
    if (phi1 > kAngleCut) {
        Pulse p;
        p.kind = HamiltonianKind::SpinDrive;
        p.duration = 2.0 * phi1 / need_rate(c.rabi_s, "spin-drive");
        p.theta = theta1;
        p.strength = c.rabi_s;
        res.sequence.pulses.push_back(p);
    }
    if (phi2 > kAngleCut && phi1 > kAngleCut) {
        Pulse p;
        p.kind = HamiltonianKind::SidebandMinus;
        p.duration = phi2 / need_rate(c.eta, "sideband");
        p.varphi = varphi2;
        p.strength = c.eta;
        res.sequence.pulses.push_back(p);
    }
    if (phi3 > kAngleCut) {
        Pulse p;
        p.kind = HamiltonianKind::SidebandPlus;
        p.duration = phi3 / need_rate(c.eta, "sideband");
        p.varphi = varphi3;
        p.strength = c.eta;
        res.sequence.pulses.push_back(p);
    }
    return res;
}

const char* kind_name(HamiltonianKind kind) {
    switch (kind) {
        case HamiltonianKind::FreeMotion: return "free_motion";
        case HamiltonianKind::SpinDrive: return "spin_drive";
        case HamiltonianKind::SidebandMinus: return "sideband_minus";
        case HamiltonianKind::SidebandPlus: return "sideband_plus";
        case HamiltonianKind::CarrierAntinode: return "carrier_antinode";
        case HamiltonianKind::EffectiveCN: return "effective_cn";
        case HamiltonianKind::Transfer: return "transfer";
        case HamiltonianKind::FullLabFrame: return "full_lab";
    }
    return "unknown";
}

HamiltonianKind kind_from_name(const std::string& name) {
    static const std::pair<const char*, HamiltonianKind> table[] = {
        {"free_motion", HamiltonianKind::FreeMotion},
        {"spin_drive", HamiltonianKind::SpinDrive},
        {"sideband_minus", HamiltonianKind::SidebandMinus},
        {"sideband_plus", HamiltonianKind::SidebandPlus},
        {"carrier_antinode", HamiltonianKind::CarrierAntinode},
        {"effective_cn", HamiltonianKind::EffectiveCN},
        {"transfer", HamiltonianKind::Transfer},
        {"full_lab", HamiltonianKind::FullLabFrame},
    };
    for (const auto& [n, k] : table) {
        if (name == n) {
            return k;
        }
    }
    throw InvalidInputError("unknown pulse kind '" + name + "'");
}

namespace {

std::string format_param(double v) {
    if (is_auto(v)) {
        return "auto";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_param(const std::string& s, int line_no) {
    if (s == "auto") {
        return kAutoParam;
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw InvalidInputError("sequence line " + std::to_string(line_no) +
                                ": bad number '" + s + "'");
    }
    return v;
}

} // namespace

std::string serialize_sequence(const PulseSequence& seq) {
    std::ostringstream out;
    out << "sequence v1\n";
    for (const Pulse& p : seq.pulses) {
        out << "pulse kind=" << kind_name(p.kind)
            << " duration=" << format_param(p.duration)
            << " theta=" << format_param(p.theta)
            << " varphi=" << format_param(p.varphi)
            << " phi=" << format_param(p.phi)
            << " omega=" << format_param(p.Omega)
            << " strength=" << format_param(p.strength) << "\n";
    }
    out << "end\n";
    return out.str();
}

PulseSequence parse_sequence(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    bool saw_end = false;
    PulseSequence seq;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        const std::string body = line.substr(first, last - first + 1);
        if (!saw_header) {
            if (body != "sequence v1") {
                throw InvalidInputError("sequence line " + std::to_string(line_no) +
                                        ": expected 'sequence v1'");
            }
            saw_header = true;
            continue;
        }
        if (body == "end") {
            saw_end = true;
            break;
        }
        std::istringstream fields(body);
        std::string word;
        fields >> word;
        if (word != "pulse") {
            throw InvalidInputError("sequence line " + std::to_string(line_no) +
                                    ": expected 'pulse' or 'end'");
        }
        Pulse p;
        bool have_kind = false, have_duration = false;
        while (fields >> word) {
            const auto eq = word.find('=');
            if (eq == std::string::npos) {
                throw InvalidInputError("sequence line " + std::to_string(line_no) +
                                        ": expected key=value, got '" + word + "'");
            }
            const std::string key = word.substr(0, eq);
            const std::string val = word.substr(eq + 1);
            if (key == "kind") {
                try {
                    p.kind = kind_from_name(val);
                } catch (const InvalidInputError&) {
                    throw InvalidInputError("sequence line " +
                                            std::to_string(line_no) +
                                            ": unknown pulse kind '" + val + "'");
                }
                have_kind = true;
            } else if (key == "duration") {
                p.duration = parse_param(val, line_no);
                have_duration = true;
            } else if (key == "theta") {
                p.theta = parse_param(val, line_no);
            } else if (key == "varphi") {
                p.varphi = parse_param(val, line_no);
            } else if (key == "phi") {
                p.phi = parse_param(val, line_no);
            } else if (key == "omega") {
                p.Omega = parse_param(val, line_no);
            } else if (key == "strength") {
                p.strength = parse_param(val, line_no);
            } else {
                throw InvalidInputError("sequence line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
            }
        }
        if (!have_kind || !have_duration) {
            throw InvalidInputError("sequence line " + std::to_string(line_no) +
                                    ": pulse needs at least kind= and duration=");
        }
        if (!(p.duration >= 0.0) || !std::isfinite(p.duration)) {
            throw InvalidInputError("sequence line " + std::to_string(line_no) +
                                    ": duration must be finite and non-negative");
        }
        seq.pulses.push_back(p);
    }
    if (!saw_header) {
        throw InvalidInputError("sequence text is empty, expected 'sequence v1'");
    }
    if (!saw_end) {
        throw InvalidInputError("sequence text ended without 'end'");
    }
    return seq;
}

} // namespace geonium
