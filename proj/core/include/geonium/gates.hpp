#pragma once

#include <array>
#include <string>
#include <vector>

#include "geonium/pulses.hpp"

namespace geonium {

// The two-qubit register spanned by the axial ground/first-excited states and
// the spin, ordered {|0 down>, |0 up>, |1 down>, |1 up>}.
struct QubitRegisterBasis {
    std::array<int, 4> idx{};

    static QubitRegisterBasis from_spec(const HilbertSpec& spec);
};

// Conditional flop on the register: identity on the axial ground pair,
// -i spin flip on the axial excited pair.
Eigen::Matrix4cd cn_ideal();

// Plain controlled-NOT permutation with +1 entries.
Eigen::Matrix4cd textbook_cn();

struct GateReport {
    Eigen::Matrix4cd truth_table = Eigen::Matrix4cd::Zero();
    double subspace_unitarity_defect = 0.0;
    double leakage = 0.0;
    double fidelity_vs_ideal = 0.0;
    // Phase z minimizing ||z * truth_table - ideal||.
    Complex global_phase{1.0, 0.0};
};

GateReport extract_gate(const PulseSequence& seq, RunMode mode,
                        const SimContext& ctx,
                        const Eigen::Matrix4cd& ideal = cn_ideal(),
                        RunDiagnostics* diag = nullptr);

struct PhaseEquivalence {
    bool equivalent = false;
    // When equivalent, diag(left) * m * diag(right) matches the ideal within
    // tol, and both diagonals factor into single-qubit phase gates.
    Eigen::Vector4cd left = Eigen::Vector4cd::Ones();
    Eigen::Vector4cd right = Eigen::Vector4cd::Ones();
    double residual = 0.0;
};

PhaseEquivalence phase_equivalent(const Eigen::Matrix4cd& m,
                                  const Eigen::Matrix4cd& ideal,
                                  double tol = 1e-6);

enum class ResonanceCase { SidebandMinus, SidebandPlus, Carrier };

struct RwaPoint {
    double scale = 0.0;
    double infidelity = 0.0;
};

struct RwaTable {
    std::vector<RwaPoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<std::string> warnings;
};

// For each scale factor, evolves one resonant flop with both the effective
// generator and the exact lab-frame model, and reports the infidelity between
// the two final states together with a log-log power-law fit.
RwaTable rwa_benchmark(ResonanceCase rcase, const std::vector<double>& scales,
                       const SimContext& ctx);

} // namespace geonium
