#include "qcomp/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcomp {

namespace {

using Index = Eigen::Index;

std::size_t dim_of(std::size_t n_qubits) {
    if (n_qubits == 0 || n_qubits > 30) {
        throw std::invalid_argument("qubit count must be in [1, 30], got " + std::to_string(n_qubits));
    }
    return std::size_t{1} << n_qubits;
}

std::size_t bit_of(std::size_t qubit, std::size_t n_qubits) { return std::size_t{1} << (n_qubits - 1 - qubit); }

void check_targets(const QubitList& targets, std::size_t n_qubits, std::size_t u_dim) {
    if (targets.empty()) throw std::invalid_argument("apply_unitary: empty target list");
    if (targets.size() >= 31 || (std::size_t{1} << targets.size()) != u_dim) {
        throw std::invalid_argument("apply_unitary: unitary dimension " + std::to_string(u_dim) +
                                    " does not match " + std::to_string(targets.size()) + " targets");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= n_qubits) {
            throw std::invalid_argument("apply_unitary: target qubit " + std::to_string(targets[i]) +
                                        " out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) throw std::invalid_argument("apply_unitary: duplicate target qubit");
        }
    }
}

// Offsets of every configuration of `qubits` inside the full index, in the
// order where qubits[0] is the most significant bit of the local index.
std::vector<std::size_t> local_offsets(const QubitList& qubits, std::size_t n_qubits) {
    const std::size_t k = qubits.size();
    std::vector<std::size_t> out(std::size_t{1} << k, 0);
    for (std::size_t a = 0; a < out.size(); ++a) {
        std::size_t off = 0;
        for (std::size_t m = 0; m < k; ++m) {
            if ((a >> (k - 1 - m)) & 1U) off |= bit_of(qubits[m], n_qubits);
        }
        out[a] = off;
    }
    return out;
}

QubitList complement(const QubitList& sorted_keep, std::size_t n_qubits) {
    QubitList rest;
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (!std::binary_search(sorted_keep.begin(), sorted_keep.end(), q)) rest.push_back(q);
    }
    return rest;
}

QubitList normalize_keep(const QubitList& keep, std::size_t n_qubits) {
    if (keep.empty()) throw std::invalid_argument("partial trace: keep set is empty");
    QubitList sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("partial trace: duplicate qubit in keep set");
    }
    if (sorted.back() >= n_qubits) throw std::invalid_argument("partial trace: qubit out of range");
    return sorted;
}

// Left-multiplies every column of `m` by `u` acting on `targets`.
void apply_left(Matrix& m, const Matrix& u, const QubitList& targets, std::size_t n_qubits) {
    const auto offsets = local_offsets(targets, n_qubits);
    std::size_t mask = 0;
    for (auto q : targets) mask |= bit_of(q, n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    const Index local = static_cast<Index>(offsets.size());
    Vector gathered(local);
    for (Index col = 0; col < m.cols(); ++col) {
        for (std::size_t base = 0; base < dim; ++base) {
            if (base & mask) continue;
            for (Index a = 0; a < local; ++a) gathered(a) = m(static_cast<Index>(base | offsets[a]), col);
            const Vector mapped = u * gathered;
            for (Index a = 0; a < local; ++a) m(static_cast<Index>(base | offsets[a]), col) = mapped(a);
        }
    }
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Matrix2 pauli_x() {
    Matrix2 m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2 pauli_y() {
    Matrix2 m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix2 pauli_z() {
    Matrix2 m;
    m << 1, 0, 0, -1;
    return m;
}

// ---- PureState ----

PureState::PureState(std::size_t n_qubits, Vector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != dim_of(n_qubits)) {
        throw std::invalid_argument("PureState: expected " + std::to_string(dim_of(n_qubits)) +
                                    " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    const double norm2 = amplitudes_.squaredNorm();
    if (!(std::abs(norm2 - 1.0) <= kConstructionTol)) {
        throw std::invalid_argument("PureState: amplitudes not normalized (sum |a|^2 = " +
                                    std::to_string(norm2) + ")");
    }
}

PureState PureState::normalized(std::size_t n_qubits, Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("PureState: zero or non-finite vector");
    amplitudes /= norm;
    return PureState(n_qubits, std::move(amplitudes));
}

PureState PureState::basis(std::size_t n_qubits, std::size_t index) {
    const std::size_t dim = dim_of(n_qubits);
    if (index >= dim) throw std::invalid_argument("PureState::basis: index out of range");
    Vector v = Vector::Zero(static_cast<Index>(dim));
    v(static_cast<Index>(index)) = 1.0;
    return PureState(n_qubits, std::move(v));
}

// ---- DensityMatrix ----

DensityMatrix::DensityMatrix(std::size_t n_qubits, Matrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
    const std::size_t dim = dim_of(n_qubits);
    if (static_cast<std::size_t>(matrix_.rows()) != dim || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("DensityMatrix: expected a " + std::to_string(dim) + "x" +
                                    std::to_string(dim) + " matrix");
    }
    if (max_abs(matrix_ - matrix_.adjoint()) > kConstructionTol) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > kConstructionTol) {
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
    }
}

DensityMatrix::DensityMatrix(std::size_t n_qubits, Matrix matrix, Trusted)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
    const Vector& a = state.amplitudes();
    return DensityMatrix(state.n_qubits(), a * a.adjoint(), Trusted{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_qubits) {
    const auto dim = static_cast<Index>(dim_of(n_qubits));
    return DensityMatrix(n_qubits, Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

// ---- UnitaryOperator ----

UnitaryOperator::UnitaryOperator(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("UnitaryOperator: matrix must be square and non-empty");
    }
    const Matrix defect = matrix_.adjoint() * matrix_ - Matrix::Identity(matrix_.rows(), matrix_.cols());
    if (max_abs(defect) > kUnitarityTol) {
        throw std::invalid_argument("UnitaryOperator: matrix is not unitary");
    }
}

UnitaryOperator UnitaryOperator::identity(std::size_t dimension) {
    const auto d = static_cast<Index>(dimension);
    return UnitaryOperator(Matrix::Identity(d, d));
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(matrix_.adjoint()); }

UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("UnitaryOperator product: dimension mismatch");
    return UnitaryOperator(a.matrix_ * b.matrix_);
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

// ---- operations ----

PureState tensor(const PureState& a, const PureState& b) {
    const Vector& va = a.amplitudes();
    const Vector& vb = b.amplitudes();
    Vector out(va.size() * vb.size());
    for (Index i = 0; i < va.size(); ++i) out.segment(i * vb.size(), vb.size()) = va(i) * vb;
    return PureState::normalized(a.n_qubits() + b.n_qubits(), std::move(out));
}

UnitaryOperator tensor(const UnitaryOperator& a, const UnitaryOperator& b) {
    const Matrix& ma = a.matrix();
    const Matrix& mb = b.matrix();
    Matrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
    for (Index i = 0; i < ma.rows(); ++i) {
        for (Index j = 0; j < ma.cols(); ++j) {
            out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
        }
    }
    return UnitaryOperator(std::move(out));
}

PureState apply_unitary(const PureState& state, const UnitaryOperator& u, const QubitList& targets) {
    check_targets(targets, state.n_qubits(), u.dimension());
    Matrix column = state.amplitudes();
    apply_left(column, u.matrix(), targets, state.n_qubits());
    return PureState::normalized(state.n_qubits(), column.col(0));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryOperator& u, const QubitList& targets) {
    check_targets(targets, rho.n_qubits(), u.dimension());
    Matrix m = rho.matrix();
    apply_left(m, u.matrix(), targets, rho.n_qubits());
    Matrix mt = m.adjoint();
    apply_left(mt, u.matrix(), targets, rho.n_qubits());
    Matrix out = mt.adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(rho.n_qubits(), std::move(out), DensityMatrix::Trusted{});
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitList& keep) {
    const std::size_t n = rho.n_qubits();
    const QubitList kept = normalize_keep(keep, n);
    const QubitList traced = complement(kept, n);
    const auto ko = local_offsets(kept, n);
    const auto to = traced.empty() ? std::vector<std::size_t>{0} : local_offsets(traced, n);
    const auto d = static_cast<Index>(ko.size());
    Matrix out = Matrix::Zero(d, d);
    const Matrix& m = rho.matrix();
    for (Index a = 0; a < d; ++a) {
        for (Index b = 0; b < d; ++b) {
            Complex acc = 0.0;
            for (auto t : to) acc += m(static_cast<Index>(ko[a] | t), static_cast<Index>(ko[b] | t));
            out(a, b) = acc;
        }
    }
    return DensityMatrix(kept.size(), std::move(out), DensityMatrix::Trusted{});
}

Matrix split_amplitudes(const PureState& state, const QubitList& rows) {
    const std::size_t n = state.n_qubits();
    const QubitList kept = normalize_keep(rows, n);
    const QubitList rest = complement(kept, n);
    const auto ko = local_offsets(kept, n);
    const auto to = rest.empty() ? std::vector<std::size_t>{0} : local_offsets(rest, n);
    Matrix a(static_cast<Index>(ko.size()), static_cast<Index>(to.size()));
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < a.cols(); ++c) a(r, c) = state[ko[r] | to[c]];
    }
    return a;
}

DensityMatrix marginal(const PureState& state, const QubitList& keep) {
    const Matrix a = split_amplitudes(state, keep);
    Matrix out = a * a.adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(keep.size(), std::move(out), DensityMatrix::Trusted{});
}

DensityMatrix dephase(const DensityMatrix& rho) {
    Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    out.diagonal() = rho.matrix().diagonal();
    return DensityMatrix(rho.n_qubits(), std::move(out), DensityMatrix::Trusted{});
}

BlochVector bloch_vector(const DensityMatrix& rho) {
    if (rho.n_qubits() != 1) throw std::invalid_argument("bloch_vector: expected a single-qubit state");
    const Complex off = rho(0, 1);
    return {2.0 * off.real(), -2.0 * off.imag(), (rho(0, 0) - rho(1, 1)).real()};
}

DensityMatrix density_from_bloch(const BlochVector& s) {
    if (s.norm() > 1.0 + kPsdTol) throw std::invalid_argument("density_from_bloch: |s| > 1");
    Matrix m(2, 2);
    m << 0.5 * (1.0 + s.z), 0.5 * Complex(s.x, -s.y), 0.5 * Complex(s.x, s.y), 0.5 * (1.0 - s.z);
    return DensityMatrix(1, std::move(m));
}

double purity(const DensityMatrix& rho) { return rho.matrix().cwiseAbs2().sum(); }

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double weight_b) {
    if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("mix: qubit count mismatch");
    if (!(weight_b >= 0.0 && weight_b <= 1.0)) throw std::invalid_argument("mix: weight outside [0, 1]");
    return DensityMatrix(a.n_qubits(), (1.0 - weight_b) * a.matrix() + weight_b * b.matrix(),
                         DensityMatrix::Trusted{});
}

Matrix embed(const Matrix2& op, std::size_t qubit, std::size_t n_qubits) {
    if (qubit >= n_qubits) throw std::invalid_argument("embed: qubit out of range");
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        const Matrix factor = (q == qubit) ? Matrix(op) : Matrix(Matrix::Identity(2, 2));
        Matrix next(out.rows() * 2, out.cols() * 2);
        for (Index i = 0; i < out.rows(); ++i) {
            for (Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * factor;
        }
        out = std::move(next);
    }
    return out;
}

double overlap(const PureState& a, const PureState& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("overlap: dimension mismatch");
    return std::abs(a.amplitudes().dot(b.amplitudes()));
}

double fidelity(const PureState& psi, const DensityMatrix& rho) {
    if (psi.dimension() != rho.dimension()) throw std::invalid_argument("fidelity: dimension mismatch");
    const Vector& v = psi.amplitudes();
    return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

Eigen::VectorXd spectrum(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace qcomp
