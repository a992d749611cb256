#pragma once

// Complementarity quantities for pure n-qubit states and mixed two-qubit
// states. Qubit indices are 0-based; index 0 is the most significant bit.

#include "qcomp/state.hpp"

#include <optional>

namespace qcomp {

struct SingleParticleProfile {
    std::size_t qubit = 0;
    double visibility = 0.0;
    double predictability = 0.0;
    double character = 0.0;  // sqrt(V^2 + P^2)
};

/// Which-way information about qubit k stored in its partner. The state is
/// written as a_plus |0>_k |m_plus> + a_minus |1>_k |m_minus>, with m_plus and
/// m_minus the partner's Bloch vectors.
struct DistinguishabilityResult {
    std::size_t qubit = 0;
    double D = 0.0;
    std::optional<BlochVector> axis;  // empty when a+^2 m+ == a-^2 m-
    double a_plus = 0.0;
    double a_minus = 0.0;
    BlochVector m_plus;
    BlochVector m_minus;
};

struct TangleProfile {
    std::size_t qubit = 0;
    double bipartite_concurrence = 0.0;  // C_k(rest)
    double pairwise_tangle = 0.0;        // tau_2^(k)
    std::optional<double> three_tangle;  // three-qubit states only
};

/// 2|<0|rho_k|1>|.
double visibility(const PureState& state, std::size_t k);
double visibility(const DensityMatrix& rho, std::size_t k);

/// |<sigma_z^(k)>|.
double predictability(const PureState& state, std::size_t k);
double predictability(const DensityMatrix& rho, std::size_t k);

SingleParticleProfile single_particle_character(const PureState& state, std::size_t k);
SingleParticleProfile single_particle_character(const DensityMatrix& rho, std::size_t k);

/// 2|g1 g4 - g2 g3| for a two-qubit pure state.
double concurrence(const PureState& state);

/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const DensityMatrix& rho);

/// Wootters concurrence of rho = A A^dagger given the 4 x r factor A.
/// The lambdas are the singular values of A^T (sigma_y x sigma_y) A, which
/// avoids square roots of round-off on rank-deficient inputs.
double concurrence_from_factor(const Matrix& factor);

/// Concurrence of the two-qubit marginal rho_jk of a pure state.
double pair_concurrence(const PureState& state, std::size_t j, std::size_t k);

/// Two-qubit pure states only.
DistinguishabilityResult distinguishability(const PureState& state, std::size_t k);

/// sqrt(2 [1 - Tr rho_k^2]).
double bipartite_concurrence(const PureState& state, std::size_t k);

/// sum over j != k of pair_concurrence(j, k)^2.
double pairwise_tangle(const PureState& state, std::size_t k);

/// C_k(ij)^2 - C_ki^2 - C_kj^2 for three-qubit states. Values in
/// [-kTangleClampTol, 0) are clamped to 0, anything lower throws.
inline constexpr double kTangleClampTol = 1e-9;
double three_tangle(const PureState& state, std::size_t k);

TangleProfile tangle_profile(const PureState& state, std::size_t k);

}  // namespace qcomp
