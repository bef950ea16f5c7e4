#include "geonium/linalg.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace geonium {

namespace {

void check_mode_dim(int dim, const char* name) {
    if (dim < 1) {
        throw InvalidDimensionError(std::string(name) + " dimension must be >= 1, got " +
                                    std::to_string(dim));
    }
}

void check_hermitian(const Operator& h, const char* where) {
    const double scale = std::max(1.0, h.mat.cwiseAbs().maxCoeff());
    if (hermiticity_defect(h.mat) > 1e-9 * scale) {
        throw ContractViolationError(std::string(where) + ": operator is not hermitian");
    }
}

} // namespace

int HilbertSpec::mode_dim(Mode m) const {
    switch (m) {
        case Mode::Spin: return spin_dim;
        case Mode::Axial: return axial_dim;
        case Mode::Cyclotron: return cyclotron_dim;
        case Mode::Magnetron: return magnetron_dim;
    }
    throw InvalidInputError("unknown mode");
}

int HilbertSpec::index_of(int spin_idx, int n_z, int n_c, int n_m) const {
    if (spin_idx < 0 || spin_idx >= spin_dim || n_z < 0 || n_z >= axial_dim ||
        n_c < 0 || n_c >= cyclotron_dim || n_m < 0 || n_m >= magnetron_dim) {
        throw InvalidDimensionError("basis label outside the truncated space");
    }
    return ((spin_idx * axial_dim + n_z) * cyclotron_dim + n_c) * magnetron_dim + n_m;
}

void HilbertSpec::validate() const {
    if (spin_dim != 2) {
        throw InvalidDimensionError("spin dimension must be exactly 2, got " +
                                    std::to_string(spin_dim));
    }
    check_mode_dim(axial_dim, "axial");
    check_mode_dim(cyclotron_dim, "cyclotron");
    check_mode_dim(magnetron_dim, "magnetron");
}

StateVector::StateVector(const HilbertSpec& s, Vector a) : spec(s), amps(std::move(a)) {
    spec.validate();
    if (amps.size() != spec.dim()) {
        throw InvalidDimensionError("state vector length " + std::to_string(amps.size()) +
                                    " does not match space dimension " +
                                    std::to_string(spec.dim()));
    }
}

void StateVector::normalize() {
    const double n = norm();
    if (n <= 0.0 || !std::isfinite(n)) {
        throw InvalidInputError("cannot normalize a zero or non-finite state");
    }
    amps /= n;
}

StateVector StateVector::zero(const HilbertSpec& spec) {
    spec.validate();
    return StateVector(spec, Vector::Zero(spec.dim()));
}

StateVector StateVector::basis(const HilbertSpec& spec, int spin_idx, int n_z, int n_c,
                               int n_m) {
    StateVector st = zero(spec);
    st.amps(spec.index_of(spin_idx, n_z, n_c, n_m)) = 1.0;
    return st;
}

Operator::Operator(const HilbertSpec& s, Matrix m, bool herm)
    : spec(s), mat(std::move(m)), hermitian_hint(herm) {
    spec.validate();
    if (mat.rows() != spec.dim() || mat.cols() != spec.dim()) {
        throw InvalidDimensionError("operator shape does not match space dimension");
    }
}

LadderPair ladder(int dim) {
    check_mode_dim(dim, "ladder");
    Matrix lower = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        lower(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return LadderPair{lower, lower.adjoint()};
}

Matrix number_operator(int dim) {
    check_mode_dim(dim, "number");
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        n(k, k) = static_cast<double>(k);
    }
    return n;
}

Matrix identity_block(int dim) {
    check_mode_dim(dim, "identity");
    return Matrix::Identity(dim, dim);
}

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(kSpinUp, kSpinDown) = 1.0;
    return m;
}

Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(kSpinDown, kSpinUp) = 1.0;
    return m;
}

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Operator embed(const Matrix& block, Mode mode, const HilbertSpec& spec) {
    spec.validate();
    const int bd = spec.mode_dim(mode);
    if (block.rows() != bd || block.cols() != bd) {
        throw InvalidDimensionError("block shape does not match the target mode dimension");
    }
    auto factor = [&](Mode m) -> Matrix {
        return m == mode ? block : identity_block(spec.mode_dim(m));
    };
    Matrix out = factor(Mode::Spin);
    for (Mode m : {Mode::Axial, Mode::Cyclotron, Mode::Magnetron}) {
        out = Eigen::kroneckerProduct(out, factor(m)).eval();
    }
    return Operator(spec, std::move(out), hermiticity_defect(block) == 0.0);
}

Operator propagator(const Operator& h, double t) {
    check_hermitian(h, "propagator");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
    if (es.info() != Eigen::Success) {
        throw ContractViolationError("propagator: eigendecomposition failed");
    }
    const Eigen::VectorXd& evals = es.eigenvalues();
    Vector phases(evals.size());
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
        phases(k) = std::exp(-kI * evals(k) * t);
    }
    Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return Operator(h.spec, std::move(u), false);
}

StateVector apply(const Operator& op, const StateVector& state) {
    if (!(op.spec == state.spec)) {
        throw InvalidDimensionError("operator and state live on different spaces");
    }
    return StateVector(state.spec, op.mat * state.amps);
}

Operator hermitian_matrix_function(const Operator& h,
                                   const std::function<double(double)>& f) {
    check_hermitian(h, "hermitian_matrix_function");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
    if (es.info() != Eigen::Success) {
        throw ContractViolationError("hermitian_matrix_function: eigendecomposition failed");
    }
    const Eigen::VectorXd& evals = es.eigenvalues();
    Eigen::VectorXd mapped(evals.size());
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
        mapped(k) = f(evals(k));
    }
    Matrix out = es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
    out = ((out + out.adjoint()) / 2.0).eval();
    return Operator(h.spec, std::move(out), true);
}

Vector apply_expm(const Matrix& a, const Vector& v) {
    if (a.rows() != a.cols() || a.cols() != v.size()) {
        throw InvalidDimensionError("apply_expm: shape mismatch");
    }
    // Row-sum norm bounds the spectral radius; substep so each Taylor series
    // converges in a short, numerically benign number of terms.
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    const int substeps = std::max(1, static_cast<int>(std::ceil(norm / 0.5)));
    const Matrix step = a / static_cast<double>(substeps);

    Vector out = v;
    for (int s = 0; s < substeps; ++s) {
        Vector term = out;
        Vector acc = out;
        for (int k = 1; k <= 24; ++k) {
            term = (step * term) / static_cast<double>(k);
            acc += term;
            if (term.norm() <= 1e-17 * acc.norm()) {
                break;
            }
        }
        out = acc;
    }
    return out;
}

StateVector evolve_timedep(const std::function<Operator(double)>& h_of_t,
                           const StateVector& initial, double t0, double t1,
                           double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidInputError("evolve_timedep: step must be positive");
    }
    if (t1 < t0) {
        throw InvalidInputError("evolve_timedep: t1 must be >= t0");
    }
    StateVector state = initial;
    double t = t0;
    while (t < t1) {
        const double dt = std::min(step, t1 - t);
        const Operator h = h_of_t(t + dt / 2.0);
        if (!(h.spec == state.spec)) {
            throw InvalidDimensionError("evolve_timedep: sampled operator has wrong shape");
        }
        check_hermitian(h, "evolve_timedep");
        state.amps = apply_expm(-kI * dt * h.mat, state.amps);
        t += dt;
    }
    return state;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (!(a.spec == b.spec)) {
        throw InvalidDimensionError("fidelity: states live on different spaces");
    }
    return std::norm(a.amps.dot(b.amps));
}

double tail_population(const StateVector& state, Mode mode) {
    const HilbertSpec& sp = state.spec;
    const int md = sp.mode_dim(mode);
    if (md < 3) {
        return 0.0; // frozen or spin-like mode, no truncation tail to watch
    }
    double pop = 0.0;
    for (int s = 0; s < sp.spin_dim; ++s) {
        for (int nz = 0; nz < sp.axial_dim; ++nz) {
            for (int nc = 0; nc < sp.cyclotron_dim; ++nc) {
                for (int nm = 0; nm < sp.magnetron_dim; ++nm) {
                    int level = 0;
                    switch (mode) {
                        case Mode::Spin: level = s; break;
                        case Mode::Axial: level = nz; break;
                        case Mode::Cyclotron: level = nc; break;
                        case Mode::Magnetron: level = nm; break;
                    }
                    if (level >= md - 2) {
                        pop += std::norm(state.amps(sp.index_of(s, nz, nc, nm)));
                    }
                }
            }
        }
    }
    return pop;
}

} // namespace geonium
