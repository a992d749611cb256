#pragma once

// Dense state and operator algebra for small qubit registers.
//
// Basis ordering: qubit 0 is the most significant bit, so the basis state
// |x0 x1 ... x(n-1)> has index sum_k x_k 2^(n-1-k). For two qubits the
// amplitudes (g1, g2, g3, g4) of g1|00> + g2|01> + g3|10> + g4|11> sit at
// indices 0..3.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace qcomp {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using QubitList = std::vector<std::size_t>;

inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

class UnitaryOperator;

Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();

/// Normalized amplitude vector over the 2^n computational basis.
class PureState {
public:
    /// Throws std::invalid_argument unless the vector has length 2^n and
    /// unit norm within kConstructionTol.
    PureState(std::size_t n_qubits, Vector amplitudes);

    /// Rescales `amplitudes` to unit norm. Throws on a zero vector.
    static PureState normalized(std::size_t n_qubits, Vector amplitudes);
    static PureState basis(std::size_t n_qubits, std::size_t index);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

private:
    std::size_t n_qubits_;
    Vector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityMatrix {
public:
    /// Validates hermiticity and trace within kConstructionTol and the
    /// spectrum against -kPsdTol.
    DensityMatrix(std::size_t n_qubits, Matrix matrix);

    static DensityMatrix from_pure(const PureState& state);
    static DensityMatrix maximally_mixed(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return matrix_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

private:
    struct Trusted {};
    DensityMatrix(std::size_t n_qubits, Matrix matrix, Trusted);

    std::size_t n_qubits_;
    Matrix matrix_;

    // Channels that map valid states to valid states skip the eigen check.
    friend DensityMatrix apply_unitary(const DensityMatrix&, const UnitaryOperator&,
                                       const QubitList&);
    friend DensityMatrix partial_trace(const DensityMatrix&, const QubitList&);
    friend DensityMatrix marginal(const PureState&, const QubitList&);
    friend DensityMatrix dephase(const DensityMatrix&);
    friend DensityMatrix mix(const DensityMatrix&, const DensityMatrix&, double);
};

class UnitaryOperator {
public:
    /// Throws unless square and U^dagger U = 1 within kUnitarityTol (max-abs).
    explicit UnitaryOperator(Matrix matrix);

    static UnitaryOperator identity(std::size_t dimension);

    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    UnitaryOperator adjoint() const;

    /// Matrix product: (a * b) applies b first.
    friend UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b);

private:
    Matrix matrix_;
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
    BlochVector operator-(const BlochVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
    BlochVector operator*(double s) const { return {x * s, y * s, z * s}; }
};

PureState tensor(const PureState& a, const PureState& b);
UnitaryOperator tensor(const UnitaryOperator& a, const UnitaryOperator& b);

/// Applies a k-qubit unitary to the listed qubits. targets[0] is the most
/// significant qubit of `u`'s own basis. Throws on dimension mismatch,
/// duplicate or out-of-range targets.
PureState apply_unitary(const PureState& state, const UnitaryOperator& u, const QubitList& targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryOperator& u,
                            const QubitList& targets);

/// Reduced state on `keep` (in increasing qubit order).
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitList& keep);
/// Same as partial_trace(from_pure(state), keep) without forming the full matrix.
DensityMatrix marginal(const PureState& state, const QubitList& keep);

/// Amplitudes reshaped into a (2^|rows| x 2^(n-|rows|)) matrix: row index
/// runs over the `rows` qubits (increasing order), column index over the rest.
/// marginal(state, rows) equals A * A^dagger for this matrix A.
Matrix split_amplitudes(const PureState& state, const QubitList& rows);

/// Zeroes every off-diagonal element in the computational basis.
DensityMatrix dephase(const DensityMatrix& rho);

BlochVector bloch_vector(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& s);

double purity(const DensityMatrix& rho);

/// (1 - weight_b) * a + weight_b * b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double weight_b);

/// Embeds a single-qubit operator on `qubit` of an n-qubit register.
Matrix embed(const Matrix2& op, std::size_t qubit, std::size_t n_qubits);

/// |<a|b>|, the global-phase-free overlap.
double overlap(const PureState& a, const PureState& b);
/// <psi|rho|psi>.
double fidelity(const PureState& psi, const DensityMatrix& rho);

/// Eigenvalues in ascending order.
Eigen::VectorXd spectrum(const DensityMatrix& rho);

}  // namespace qcomp
