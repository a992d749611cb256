#pragma once

// Named state families and their closed-form tangle / character values.

#include "qcomp/state.hpp"

#include <vector>

namespace qcomp {

/// a1 |0...0> + a2 |1...1> on n >= 2 qubits. Throws unless |a1|^2+|a2|^2 = 1.
PureState ghz_state(std::size_t n_qubits, Complex a1, Complex a2);

/// sum_k a_k |0..1_k..0>, where coefficient k excites qubit k (0-based).
/// n = coefficients.size() >= 2.
PureState w_state(const std::vector<Complex>& coefficients);

/// Equal-amplitude W state on n qubits.
PureState w_state(std::size_t n_qubits);

/// |0>_r (a1 |00> + a2 |11>)_st with r the first qubit.
PureState bipartite_family_state(Complex a1, Complex a2);

/// Tensor product of single-qubit factors, first factor on qubit 0.
PureState product_state(const std::vector<PureState>& factors);

/// Single-qubit state cos(t/2)|0> + e^{i p} sin(t/2)|1>.
PureState qubit_state(double polar, double azimuth);

/// Two-qubit states used by the interferometry and NMR experiments.
PureState phi_state();                       // |+>|+>
PureState bell_state();                      // (|00> + |11>)/sqrt 2
PureState phi_theta_state(double theta);     // |+> (cos t/2 |0> + sin t/2 |1>)
PureState psi_theta_state(double theta);     // psi_family_state(pi/2, theta)
/// (|0>(cos t1/2 |0> + sin t1/2 |1>) + |1>(cos t2/2 |0> + sin t2/2 |1>)) / sqrt 2
PureState psi_family_state(double theta1, double theta2);
/// The complex-amplitude example state, renormalized (its printed
/// amplitudes sum to 1.0000162).
PureState complex_example_state();

enum class FamilyKind { Product, Bipartite, W, GHZ };

/// Closed-form quantifiers for one qubit of a family member.
struct FamilyPrediction {
    double n_tangle = 0.0;  // tau_n (GHZ) or tau_3 for three-qubit rows
    double pairwise_tangle = 0.0;
    double character_sq = 0.0;
};

/// Closed forms for qubit k. `coefficients` are (a1, a2) for Bipartite and
/// GHZ, the per-qubit W amplitudes for W, and ignored for Product.
FamilyPrediction family_prediction(FamilyKind kind, const std::vector<Complex>& coefficients,
                                   std::size_t n_qubits, std::size_t k);

/// Per-qubit check of the conjectured sum_m tau_m^(k) + S_k^2 = 1 on the
/// GHZ_n and W_n families. Higher tangles come from the closed forms since no
/// general m-tangle exists; tau_2 and S_k^2 are measured on the state.
struct FamilyCheck {
    std::size_t qubit = 0;
    double measured_pairwise_tangle = 0.0;
    double measured_character_sq = 0.0;
    double measured_bipartite_sq = 0.0;
    FamilyPrediction predicted;
    double conjecture_sum = 0.0;  // tau_2 + higher tangles + S_k^2
};

std::vector<FamilyCheck> check_family(FamilyKind kind, const std::vector<Complex>& coefficients,
                                      std::size_t n_qubits);

}  // namespace qcomp
