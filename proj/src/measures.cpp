#include "qcomp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qcomp {

namespace {

void check_qubit(std::size_t k, std::size_t n, const char* who) {
    if (k >= n) {
        throw std::invalid_argument(std::string(who) + ": qubit " + std::to_string(k) + " out of range for " +
                                    std::to_string(n) + " qubits");
    }
}

void check_two_qubits(std::size_t n, const char* who) {
    if (n != 2) throw std::invalid_argument(std::string(who) + ": expected a two-qubit state");
}

double visibility_of(const DensityMatrix& rho_k) { return 2.0 * std::abs(rho_k(0, 1)); }
double predictability_of(const DensityMatrix& rho_k) { return std::abs((rho_k(0, 0) - rho_k(1, 1)).real()); }

Matrix sigma_yy() {
    Matrix y(4, 4);
    y.setZero();
    y(0, 3) = -1.0;
    y(1, 2) = 1.0;
    y(2, 1) = 1.0;
    y(3, 0) = -1.0;
    return y;
}

// Bloch vector of an unnormalized single-qubit ket times its squared norm.
BlochVector weighted_bloch(const Complex& c0, const Complex& c1) {
    const Complex off = c0 * std::conj(c1);
    return {2.0 * off.real(), -2.0 * off.imag(), std::norm(c0) - std::norm(c1)};
}

}  // namespace

double visibility(const PureState& state, std::size_t k) {
    check_qubit(k, state.n_qubits(), "visibility");
    return visibility_of(marginal(state, {k}));
}

double visibility(const DensityMatrix& rho, std::size_t k) {
    check_qubit(k, rho.n_qubits(), "visibility");
    return visibility_of(rho.n_qubits() == 1 ? rho : partial_trace(rho, {k}));
}

double predictability(const PureState& state, std::size_t k) {
    check_qubit(k, state.n_qubits(), "predictability");
    return predictability_of(marginal(state, {k}));
}

double predictability(const DensityMatrix& rho, std::size_t k) {
    check_qubit(k, rho.n_qubits(), "predictability");
    return predictability_of(rho.n_qubits() == 1 ? rho : partial_trace(rho, {k}));
}

SingleParticleProfile single_particle_character(const PureState& state, std::size_t k) {
    SingleParticleProfile p;
    p.qubit = k;
    p.visibility = visibility(state, k);
    p.predictability = predictability(state, k);
    p.character = std::hypot(p.visibility, p.predictability);
    return p;
}

SingleParticleProfile single_particle_character(const DensityMatrix& rho, std::size_t k) {
    SingleParticleProfile p;
    p.qubit = k;
    p.visibility = visibility(rho, k);
    p.predictability = predictability(rho, k);
    p.character = std::hypot(p.visibility, p.predictability);
    return p;
}

double concurrence(const PureState& state) {
    check_two_qubits(state.n_qubits(), "concurrence");
    return 2.0 * std::abs(state[0] * state[3] - state[1] * state[2]);
}

double concurrence_from_factor(const Matrix& factor) {
    if (factor.rows() != 4) throw std::invalid_argument("concurrence_from_factor: expected 4 rows");
    const Matrix t = factor.transpose() * sigma_yy() * factor;
    Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(t).singularValues();
    double lambdas[4] = {0.0, 0.0, 0.0, 0.0};
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(sv.size(), 4); ++i) lambdas[i] = sv(i);
    std::sort(lambdas, lambdas + 4, [](double a, double b) { return a > b; });
    return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

double concurrence(const DensityMatrix& rho) {
    check_two_qubits(rho.n_qubits(), "concurrence");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    const Eigen::VectorXd& w = es.eigenvalues();
    const double cutoff = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, w.maxCoeff());
    Matrix factor(4, 0);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) <= cutoff) continue;
        factor.conservativeResize(4, factor.cols() + 1);
        factor.col(factor.cols() - 1) = es.eigenvectors().col(i) * std::sqrt(w(i));
    }
    if (factor.cols() == 0) return 0.0;
    return concurrence_from_factor(factor);
}

double pair_concurrence(const PureState& state, std::size_t j, std::size_t k) {
    check_qubit(j, state.n_qubits(), "pair_concurrence");
    check_qubit(k, state.n_qubits(), "pair_concurrence");
    if (j == k) throw std::invalid_argument("pair_concurrence: qubits must differ");
    return concurrence_from_factor(split_amplitudes(state, {j, k}));
}

DistinguishabilityResult distinguishability(const PureState& state, std::size_t k) {
    check_two_qubits(state.n_qubits(), "distinguishability");
    check_qubit(k, 2, "distinguishability");
    // Row x holds the partner's unnormalized ket conditioned on |x>_k.
    const Matrix a = split_amplitudes(state, {k});
    DistinguishabilityResult r;
    r.qubit = k;
    const BlochVector w_plus = weighted_bloch(a(0, 0), a(0, 1));
    const BlochVector w_minus = weighted_bloch(a(1, 0), a(1, 1));
    const double p_plus = a.row(0).squaredNorm();
    const double p_minus = a.row(1).squaredNorm();
    r.a_plus = std::sqrt(p_plus);
    r.a_minus = std::sqrt(p_minus);
    if (p_plus > 0.0) r.m_plus = w_plus * (1.0 / p_plus);
    if (p_minus > 0.0) r.m_minus = w_minus * (1.0 / p_minus);
    const BlochVector d = w_plus - w_minus;
    r.D = std::min(1.0, d.norm());
    if (r.D > 1e-12) r.axis = d * (1.0 / d.norm());
    return r;
}

double bipartite_concurrence(const PureState& state, std::size_t k) {
    if (state.n_qubits() < 2) throw std::invalid_argument("bipartite_concurrence: need at least two qubits");
    check_qubit(k, state.n_qubits(), "bipartite_concurrence");
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity(marginal(state, {k})))));
}

double pairwise_tangle(const PureState& state, std::size_t k) {
    if (state.n_qubits() < 2) throw std::invalid_argument("pairwise_tangle: need at least two qubits");
    check_qubit(k, state.n_qubits(), "pairwise_tangle");
    double sum = 0.0;
    for (std::size_t j = 0; j < state.n_qubits(); ++j) {
        if (j == k) continue;
        const double c = pair_concurrence(state, j, k);
        sum += c * c;
    }
    return sum;
}

double three_tangle(const PureState& state, std::size_t k) {
    if (state.n_qubits() != 3) throw std::invalid_argument("three_tangle: expected a three-qubit state");
    check_qubit(k, 3, "three_tangle");
    const double c = bipartite_concurrence(state, k);
    const double raw = c * c - pairwise_tangle(state, k);
    if (raw >= 0.0) return raw;
    if (raw >= -kTangleClampTol) return 0.0;
    throw std::runtime_error("three_tangle: negative value " + std::to_string(raw) + " beyond clamp tolerance");
}

TangleProfile tangle_profile(const PureState& state, std::size_t k) {
    TangleProfile t;
    t.qubit = k;
    t.bipartite_concurrence = bipartite_concurrence(state, k);
    t.pairwise_tangle = pairwise_tangle(state, k);
    if (state.n_qubits() == 3) t.three_tangle = three_tangle(state, k);
    return t;
}

}  // namespace qcomp
