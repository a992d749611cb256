#include "qcomp/random.hpp"

#include <random>
#include <stdexcept>

namespace qcomp {

namespace {

Vector gaussian_vector(Eigen::Index size, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

}  // namespace

PureState random_pure_state(std::size_t n_qubits, std::uint64_t seed) {
    if (n_qubits == 0 || n_qubits > 20) throw std::invalid_argument("random_pure_state: qubit count must be in [1, 20]");
    std::mt19937_64 rng(seed);
    return PureState::normalized(n_qubits, gaussian_vector(Eigen::Index{1} << n_qubits, rng));
}

UnitaryOperator random_unitary(std::size_t dimension, std::uint64_t seed) {
    if (dimension == 0) throw std::invalid_argument("random_unitary: dimension must be positive");
    const auto d = static_cast<Eigen::Index>(dimension);
    std::mt19937_64 rng(seed);
    Matrix g(d, d);
    for (Eigen::Index c = 0; c < d; ++c) g.col(c) = gaussian_vector(d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        const double mag = std::abs(rii);
        if (mag > 0.0) q.col(i) *= rii / mag;
    }
    return UnitaryOperator(std::move(q));
}

DensityMatrix random_mixed_state(std::size_t n_qubits, std::uint64_t seed, std::size_t env_qubits) {
    if (n_qubits == 0) throw std::invalid_argument("random_mixed_state: qubit count must be positive");
    const PureState purification = random_pure_state(n_qubits + env_qubits, seed);
    QubitList keep(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) keep[q] = q;
    return marginal(purification, keep);
}

}  // namespace qcomp
