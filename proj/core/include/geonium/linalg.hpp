#pragma once

#include <complex>
#include <functional>
#include <utility>

#include <Eigen/Dense>

#include "geonium/errors.hpp"

namespace geonium {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Trap register modes in tensor order (spin slowest, magnetron fastest).
enum class Mode { Spin, Axial, Cyclotron, Magnetron };

// Truncated Hilbert space for spin x axial x cyclotron x magnetron.
// A mode dimension of 1 freezes that mode out: its ladder operators are
// identically zero and it contributes nothing to dynamics.
struct HilbertSpec {
    int spin_dim = 2;
    int axial_dim = 12;
    int cyclotron_dim = 6;
    int magnetron_dim = 1;

    int dim() const { return spin_dim * axial_dim * cyclotron_dim * magnetron_dim; }
    int mode_dim(Mode m) const;
    // Flat index: ((spin * axial_dim + n_z) * cyclotron_dim + n_c) * magnetron_dim + n_m.
    int index_of(int spin_idx, int n_z, int n_c, int n_m = 0) const;
    void validate() const;
    bool operator==(const HilbertSpec&) const = default;
};

// Spin storage convention: index 0 is |up>, index 1 is |down>, so the
// embedded sigma_z is diag(+1, ..., -1, ...) with up states first.
inline constexpr int kSpinUp = 0;
inline constexpr int kSpinDown = 1;

struct StateVector {
    HilbertSpec spec;
    Vector amps;

    StateVector() = default;
    StateVector(const HilbertSpec& s, Vector a);

    double norm() const { return amps.norm(); }
    void normalize();

    static StateVector zero(const HilbertSpec& spec);
    static StateVector basis(const HilbertSpec& spec, int spin_idx, int n_z,
                             int n_c = 0, int n_m = 0);
};

struct Operator {
    HilbertSpec spec;
    Matrix mat;
    bool hermitian_hint = false;

    Operator() = default;
    Operator(const HilbertSpec& s, Matrix m, bool herm = false);
};

struct LadderPair {
    Matrix lowering;
    Matrix raising;
};

// Single-mode blocks.
LadderPair ladder(int dim);
Matrix number_operator(int dim);
Matrix identity_block(int dim);

// 2x2 spin blocks in the storage convention above.
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix sigma_plus();   // |up><down|
Matrix sigma_minus();  // |down><up|

// Largest absolute difference between M and its adjoint.
double hermiticity_defect(const Matrix& m);

// Lift a single-mode block to the full register by Kronecker products with
// identities on the other modes.
Operator embed(const Matrix& block, Mode mode, const HilbertSpec& spec);

// exp(-i h t) for hermitian h, computed by eigendecomposition so the result
// is unitary to machine precision.
Operator propagator(const Operator& h, double t);

StateVector apply(const Operator& op, const StateVector& state);

// f applied to the spectrum of a hermitian operator.
Operator hermitian_matrix_function(const Operator& h,
                                   const std::function<double(double)>& f);

// exp(A) v for a general square matrix, via scaled truncated Taylor applied
// directly to the vector. Accurate to machine precision for moderate ||A||.
Vector apply_expm(const Matrix& a, const Vector& v);

// Piecewise-constant midpoint rule: each step advances by
// exp(-i h(t + dt/2) dt). Second order in step, unitary per step.
StateVector evolve_timedep(const std::function<Operator(double)>& h_of_t,
                           const StateVector& initial, double t0, double t1,
                           double step);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// Total population in the top two levels of one mode; used to detect
// truncation pressure.
double tail_population(const StateVector& state, Mode mode);

} // namespace geonium
