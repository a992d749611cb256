#pragma once

// Seeded random states and unitaries for property-test corpora. Every
// generator is a pure function of its seed (mt19937_64 + normal draws).

#include "qcomp/state.hpp"

#include <cstdint>

namespace qcomp {

/// Haar-distributed pure state on n qubits. Throws if n == 0.
PureState random_pure_state(std::size_t n_qubits, std::uint64_t seed);

/// Haar-distributed unitary of the given dimension (QR of a Ginibre matrix
/// with the R-diagonal phases divided out).
UnitaryOperator random_unitary(std::size_t dimension, std::uint64_t seed);

/// Mixed state obtained by tracing a Haar-random purification over
/// `n_qubits + env_qubits` qubits down to the first `n_qubits`.
/// env_qubits == 0 returns a pure-state density matrix.
DensityMatrix random_mixed_state(std::size_t n_qubits, std::uint64_t seed, std::size_t env_qubits);
inline DensityMatrix random_mixed_state(std::size_t n_qubits, std::uint64_t seed) {
    return random_mixed_state(n_qubits, seed, n_qubits);
}

}  // namespace qcomp
