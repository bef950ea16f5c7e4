#include "geonium/gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace geonium {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double unitarity_defect4(const Eigen::Matrix4cd& u) {
    return (u.adjoint() * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

} // namespace

QubitRegisterBasis QubitRegisterBasis::from_spec(const HilbertSpec& spec) {
    spec.validate();
    if (spec.axial_dim < 2) {
        throw InvalidDimensionError("qubit register needs axial_dim >= 2");
    }
    QubitRegisterBasis b;
    b.idx = {spec.index_of(kSpinDown, 0, 0, 0), spec.index_of(kSpinUp, 0, 0, 0),
             spec.index_of(kSpinDown, 1, 0, 0), spec.index_of(kSpinUp, 1, 0, 0)};
    return b;
}

Eigen::Matrix4cd cn_ideal() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = -kI;
    m(3, 2) = -kI;
    return m;
}

Eigen::Matrix4cd textbook_cn() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

GateReport extract_gate(const PulseSequence& seq, RunMode mode,
                        const SimContext& ctx, const Eigen::Matrix4cd& ideal,
                        RunDiagnostics* diag) {
    const QubitRegisterBasis basis = QubitRegisterBasis::from_spec(ctx.spec);
    GateReport report;
    for (int j = 0; j < 4; ++j) {
        StateVector in = StateVector::zero(ctx.spec);
        in.amps(basis.idx[j]) = 1.0;
        const StateVector out = run(seq, in, mode, ctx, diag);
        double inside = 0.0;
        for (int i = 0; i < 4; ++i) {
            report.truth_table(i, j) = out.amps(basis.idx[i]);
            inside += std::norm(out.amps(basis.idx[i]));
        }
        report.leakage = std::max(report.leakage, out.norm() * out.norm() - inside);
    }
    report.leakage = std::max(report.leakage, 0.0);
    report.subspace_unitarity_defect = unitarity_defect4(report.truth_table);
    const Complex overlap = (report.truth_table.adjoint() * ideal).trace();
    report.fidelity_vs_ideal = std::norm(overlap) / 16.0;
    report.global_phase =
        (std::abs(overlap) > 0.0) ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
    return report;
}

namespace {

// Entries of the ideal below this magnitude are treated as structural zeros
// when solving for phases; the final numeric residual check remains the
// authority on equivalence.
constexpr double kSupportCut = 1e-3;

struct UnionFind {
    std::array<int, 8> parent{};
    UnionFind() { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent[b] = a;
        return true;
    }
};

struct SupportEdge {
    int row = 0;
    int col = 0;
    double weight = 0.0;
    double target = 0.0; // required row_phase + col_phase
};

// Candidate per-component gauge offsets solving
//   A . t = a (mod 2pi)  and  B . t = b (mod 2pi)
// with integer coefficient vectors A, B. The later residual check cannot see
// the gauge (it cancels within each component), so unsatisfiable congruences
// must be rejected here; ctol absorbs the phase noise of the inputs.
std::vector<Eigen::VectorXd> solve_gauge(const Eigen::VectorXi& A,
                                         const Eigen::VectorXi& B, double a,
                                         double b, double ctol) {
    const int n = static_cast<int>(A.size());
    std::vector<Eigen::VectorXd> cands;
    const bool a_zero = A.isZero();
    const bool b_zero = B.isZero();
    const Eigen::VectorXd Ad = A.cast<double>();
    const Eigen::VectorXd Bd = B.cast<double>();
    if (a_zero && b_zero) {
        if (std::abs(a) <= ctol && std::abs(b) <= ctol) {
            cands.emplace_back(Eigen::VectorXd::Zero(n));
        }
        return cands;
    }
    if (a_zero) {
        if (std::abs(a) <= ctol) {
            cands.emplace_back(Bd * (b / Bd.squaredNorm()));
        }
        return cands;
    }
    if (b_zero) {
        if (std::abs(b) <= ctol) {
            cands.emplace_back(Ad * (a / Ad.squaredNorm()));
        }
        return cands;
    }
    bool dependent = true;
    for (int i = 0; i < n && dependent; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (A(i) * B(j) != A(j) * B(i)) {
                dependent = false;
                break;
            }
        }
    }
    if (!dependent) {
        Eigen::Matrix2d gram;
        gram << Ad.squaredNorm(), Ad.dot(Bd), Ad.dot(Bd), Bd.squaredNorm();
        const Eigen::Vector2d rhs(a, b);
        const Eigen::Vector2d coef = gram.inverse() * rhs;
        cands.emplace_back(coef(0) * Ad + coef(1) * Bd);
        return cands;
    }
    // B = lambda A with lambda a small rational; u = A . t runs over a + 2 pi k
    // and only branches that also satisfy lambda u = b (mod 2pi) survive. The
    // k window covers all residues of the denominator for 4x4 patterns.
    int pivot = 0;
    while (A(pivot) == 0) ++pivot;
    const double lambda = Bd(pivot) / Ad(pivot);
    for (int k = -4; k <= 4; ++k) {
        const double u = a + kTwoPi * k;
        if (std::abs(wrap_angle(lambda * u - b)) <= ctol) {
            cands.emplace_back(Ad * (u / Ad.squaredNorm()));
        }
    }
    return cands;
}

} // namespace

PhaseEquivalence phase_equivalent(const Eigen::Matrix4cd& m,
                                  const Eigen::Matrix4cd& ideal, double tol) {
    if (unitarity_defect4(m) > 1e-6 || unitarity_defect4(ideal) > 1e-6) {
        throw ContractViolationError(
            "phase_equivalent: both matrices must be unitary within 1e-6");
    }
    PhaseEquivalence out;
    out.residual = (m.cwiseAbs() - ideal.cwiseAbs()).cwiseAbs().maxCoeff();
    if (out.residual > tol) {
        return out;
    }

    std::vector<SupportEdge> edges;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (std::abs(ideal(r, c)) >= kSupportCut) {
                SupportEdge e;
                e.row = r;
                e.col = c;
                e.weight = std::abs(ideal(r, c));
                e.target = std::arg(ideal(r, c)) - std::arg(m(r, c));
                edges.push_back(e);
            }
        }
    }
    std::sort(edges.begin(), edges.end(),
              [](const SupportEdge& x, const SupportEdge& y) {
                  return x.weight > y.weight;
              });

    // Nodes 0..3 are rows, 4..7 are columns. Spanning forest built strongest
    // edge first so phases come from well-conditioned entries.
    UnionFind uf;
    std::array<std::vector<std::pair<int, double>>, 8> adj;
    for (const SupportEdge& e : edges) {
        if (uf.unite(e.row, 4 + e.col)) {
            adj[e.row].emplace_back(4 + e.col, e.target);
            adj[4 + e.col].emplace_back(e.row, e.target);
        }
    }

    std::array<double, 8> phase{};
    std::array<bool, 8> assigned{};
    std::array<int, 8> comp{};
    std::vector<int> roots;
    for (int start = 0; start < 8; ++start) {
        if (assigned[start]) {
            continue;
        }
        roots.push_back(uf.find(start));
        std::vector<int> stack{start};
        phase[start] = 0.0;
        assigned[start] = true;
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            comp[node] = static_cast<int>(roots.size()) - 1;
            for (const auto& [next, target] : adj[node]) {
                if (assigned[next]) {
                    continue;
                }
                phase[next] = target - phase[node];
                assigned[next] = true;
                stack.push_back(next);
            }
        }
    }
    const int n_comp = static_cast<int>(roots.size());

    // Gauge freedom per component: rows shift by +t, columns by -t. The
    // diagonals must factor into single-qubit gates, which for the register
    // ordering means the alternating phase sum vanishes mod 2pi on each side.
    const std::array<double, 4> eps = {1.0, -1.0, -1.0, 1.0};
    double kr0 = 0.0, kc0 = 0.0;
    Eigen::VectorXi A = Eigen::VectorXi::Zero(n_comp);
    Eigen::VectorXi B = Eigen::VectorXi::Zero(n_comp);
    for (int j = 0; j < 4; ++j) {
        kr0 += eps[j] * phase[j];
        kc0 += eps[j] * phase[4 + j];
        A(comp[j]) += static_cast<int>(eps[j]);
        B(comp[4 + j]) += static_cast<int>(eps[j]);
    }

    const std::vector<Eigen::VectorXd> cands =
        solve_gauge(A, B, wrap_angle(-kr0), wrap_angle(kc0),
                    std::max(1e-9, 4.0 * tol));

    double best = std::numeric_limits<double>::infinity();
    Eigen::Vector4cd best_left = Eigen::Vector4cd::Ones();
    Eigen::Vector4cd best_right = Eigen::Vector4cd::Ones();
    for (const Eigen::VectorXd& t : cands) {
        Eigen::Vector4cd left, right;
        for (int j = 0; j < 4; ++j) {
            left(j) = std::exp(kI * (phase[j] + t(comp[j])));
            right(j) = std::exp(kI * (phase[4 + j] - t(comp[4 + j])));
        }
        const double res =
            (left.asDiagonal() * m * right.asDiagonal() - ideal)
                .cwiseAbs()
                .maxCoeff();
        if (res < best) {
            best = res;
            best_left = left;
            best_right = right;
        }
    }
    out.residual = best;
    if (best < tol) {
        out.equivalent = true;
        out.left = best_left;
        out.right = best_right;
    }
    return out;
}

RwaTable rwa_benchmark(ResonanceCase rcase, const std::vector<double>& scales,
                       const SimContext& ctx) {
    if (scales.empty()) {
        throw InvalidInputError("rwa_benchmark: need at least one scale");
    }
    for (double s : scales) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw InvalidInputError("rwa_benchmark: scales must be positive");
        }
    }
    const double ld = ctx.couplings.lamb_dicke;
    if (!(ld > 0.0)) {
        throw InvalidInputError(
            "rwa_benchmark: context needs a positive Lamb-Dicke parameter");
    }
    if (ctx.spec.axial_dim < 2) {
        throw InvalidDimensionError("rwa_benchmark: needs axial_dim >= 2");
    }
    const ModeFrequencies& f = ctx.freqs;

    RwaTable table;
    char buf[160];
    for (double s : scales) {
        Operator h_eff(ctx.spec,
                       Matrix::Zero(ctx.spec.dim(), ctx.spec.dim()), true);
        StateVector probe = StateVector::zero(ctx.spec);
        double duration = 0.0, zeta_lab = 0.0, omega = 0.0, phi = 0.0;
        switch (rcase) {
            case ResonanceCase::SidebandMinus: {
                const double eta = s * ctx.couplings.eta;
                if (!(eta > 0.0)) {
                    throw InvalidInputError(
                        "rwa_benchmark: sideband rate must be positive");
                }
                h_eff = sideband_minus(ctx.spec, eta, 0.0);
                duration = M_PI / eta;
                probe = StateVector::basis(ctx.spec, kSpinUp, 0, 0);
                zeta_lab = eta / ld;
                omega = f.omega_s - f.omega_z;
                phi = 0.0;
                break;
            }
            case ResonanceCase::SidebandPlus: {
                const double eta = s * ctx.couplings.eta;
                if (!(eta > 0.0)) {
                    throw InvalidInputError(
                        "rwa_benchmark: sideband rate must be positive");
                }
                h_eff = sideband_plus(ctx.spec, eta, 0.0);
                duration = M_PI / eta;
                probe = StateVector::basis(ctx.spec, kSpinDown, 0, 0);
                zeta_lab = eta / ld;
                omega = f.omega_s + f.omega_z;
                phi = 0.0;
                break;
            }
            case ResonanceCase::Carrier: {
                const double zeta = s * ctx.couplings.zeta;
                if (!(zeta > 0.0)) {
                    throw InvalidInputError(
                        "rwa_benchmark: carrier rate must be positive");
                }
                h_eff = carrier_antinode(ctx.spec, zeta, ld, 0.0);
                duration = M_PI / (4.0 * zeta * (1.0 - ld * ld / 2.0));
                const StateVector g0 = StateVector::basis(ctx.spec, kSpinDown, 0, 0);
                const StateVector g1 = StateVector::basis(ctx.spec, kSpinDown, 1, 0);
                probe = g0;
                probe.amps = (g0.amps + g1.amps) / std::sqrt(2.0);
                zeta_lab = 2.0 * zeta;
                omega = f.omega_s;
                phi = -M_PI / 2.0;
                break;
            }
        }

        const Vector eff = apply_expm(-kI * duration * h_eff.mat, probe.amps);
        const LabFrameModel model = LabFrameModel::standing_wave(
            ctx.spec, f, epsilon_for_zeta(f, ld, zeta_lab), zeta_lab, ld, omega,
            phi, 0.0);
        StateVector lab = model.propagate(probe, 0.0, duration);
        const double az = tail_population(lab, Mode::Axial);
        const double ac = tail_population(lab, Mode::Cyclotron);
        if (std::max(az, ac) > 1e-6) {
            std::snprintf(buf, sizeof buf,
                          "scale %.6g: truncation tail %.3e exceeds 1e-06", s,
                          std::max(az, ac));
            table.warnings.emplace_back(buf);
        }
        lab = to_rotating_frame(lab, f, duration);

        RwaPoint point;
        point.scale = s;
        point.infidelity = 1.0 - std::norm(eff.dot(lab.amps));
        if (point.infidelity < 1e-16) {
            std::snprintf(buf, sizeof buf,
                          "scale %.6g: infidelity below resolution, clamped", s);
            table.warnings.emplace_back(buf);
            point.infidelity = 1e-16;
        }
        table.points.push_back(point);
    }

    if (table.points.size() >= 2) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double n = static_cast<double>(table.points.size());
        for (const RwaPoint& p : table.points) {
            const double x = std::log10(p.scale);
            const double y = std::log10(p.infidelity);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = n * sxx - sx * sx;
        if (std::abs(denom) > 1e-12) {
            table.slope = (n * sxy - sx * sy) / denom;
            table.intercept = (sy - table.slope * sx) / n;
        } else {
            table.warnings.emplace_back("fit skipped: scales not distinct");
        }
    } else {
        table.warnings.emplace_back("fit skipped: need at least two scales");
    }
    return table;
}

} // namespace geonium
