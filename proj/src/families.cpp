#include "qcomp/families.hpp"

#include "qcomp/measures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcomp {

namespace {

void check_normalized(double norm2, const char* who) {
    if (std::abs(norm2 - 1.0) > kConstructionTol) {
        throw std::invalid_argument(std::string(who) + ": coefficients are not normalized");
    }
}

}  // namespace

PureState ghz_state(std::size_t n_qubits, Complex a1, Complex a2) {
    if (n_qubits < 2) throw std::invalid_argument("ghz_state: need at least two qubits");
    check_normalized(std::norm(a1) + std::norm(a2), "ghz_state");
    Vector v = Vector::Zero(Eigen::Index{1} << n_qubits);
    v(0) = a1;
    v(v.size() - 1) = a2;
    return PureState(n_qubits, std::move(v));
}

PureState w_state(const std::vector<Complex>& coefficients) {
    const std::size_t n = coefficients.size();
    if (n < 2) throw std::invalid_argument("w_state: need at least two coefficients");
    double norm2 = 0.0;
    for (const auto& c : coefficients) norm2 += std::norm(c);
    check_normalized(norm2, "w_state");
    Vector v = Vector::Zero(Eigen::Index{1} << n);
    for (std::size_t k = 0; k < n; ++k) v(Eigen::Index{1} << (n - 1 - k)) = coefficients[k];
    return PureState(n, std::move(v));
}

PureState w_state(std::size_t n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("w_state: need at least two qubits");
    return w_state(std::vector<Complex>(n_qubits, Complex(1.0 / std::sqrt(static_cast<double>(n_qubits)))));
}

PureState bipartite_family_state(Complex a1, Complex a2) {
    check_normalized(std::norm(a1) + std::norm(a2), "bipartite_family_state");
    Vector v = Vector::Zero(8);
    v(0) = a1;  // |000>
    v(3) = a2;  // |011>
    return PureState(3, std::move(v));
}

PureState product_state(const std::vector<PureState>& factors) {
    if (factors.empty()) throw std::invalid_argument("product_state: no factors");
    PureState out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
    return out;
}

PureState qubit_state(double polar, double azimuth) {
    Vector v(2);
    v << std::cos(polar / 2.0), std::polar(std::sin(polar / 2.0), azimuth);
    return PureState::normalized(1, std::move(v));
}

PureState phi_state() {
    Vector v = Vector::Constant(4, Complex(0.5));
    return PureState(2, std::move(v));
}

PureState bell_state() {
    Vector v = Vector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return PureState::normalized(2, std::move(v));
}

PureState phi_theta_state(double theta) {
    return tensor(qubit_state(std::numbers::pi / 2, 0.0), qubit_state(theta, 0.0));
}

PureState psi_theta_state(double theta) { return psi_family_state(std::numbers::pi / 2, theta); }

PureState psi_family_state(double theta1, double theta2) {
    Vector v(4);
    v << std::cos(theta1 / 2), std::sin(theta1 / 2), std::cos(theta2 / 2), std::sin(theta2 / 2);
    return PureState::normalized(2, v / std::sqrt(2.0));
}

PureState complex_example_state() {
    const double pi = std::numbers::pi;
    Vector v(4);
    v << -0.3, -0.2 * std::polar(1.0, -3.0 * pi / 5.0), 0.8 * std::polar(1.0, -pi / 25.0),
        0.4796 * std::polar(1.0, -5.0 * pi / 12.0);
    return PureState::normalized(2, std::move(v));
}

FamilyPrediction family_prediction(FamilyKind kind, const std::vector<Complex>& coefficients,
                                   std::size_t n_qubits, std::size_t k) {
    if (k >= n_qubits) throw std::invalid_argument("family_prediction: qubit out of range");
    FamilyPrediction p;
    switch (kind) {
        case FamilyKind::Product:
            p.character_sq = 1.0;
            break;
        case FamilyKind::Bipartite: {
            if (coefficients.size() != 2 || n_qubits != 3) {
                throw std::invalid_argument("family_prediction: bipartite row needs (a1, a2) on 3 qubits");
            }
            const double p1 = std::norm(coefficients[0]);
            const double p2 = std::norm(coefficients[1]);
            if (k == 0) {
                p.character_sq = 1.0;
            } else {
                p.pairwise_tangle = 4.0 * p1 * p2;
                p.character_sq = (p1 - p2) * (p1 - p2);
            }
            break;
        }
        case FamilyKind::GHZ: {
            if (coefficients.size() != 2) throw std::invalid_argument("family_prediction: GHZ needs (a1, a2)");
            const double p1 = std::norm(coefficients[0]);
            const double p2 = std::norm(coefficients[1]);
            p.n_tangle = 4.0 * p1 * p2;
            p.character_sq = (p1 - p2) * (p1 - p2);
            break;
        }
        case FamilyKind::W: {
            if (coefficients.size() != n_qubits) throw std::invalid_argument("family_prediction: W needs n amplitudes");
            const double pk = std::norm(coefficients[k]);
            double others = 0.0;
            for (std::size_t j = 0; j < n_qubits; ++j) {
                if (j != k) others += std::norm(coefficients[j]);
            }
            p.pairwise_tangle = 4.0 * pk * others;
            p.character_sq = (pk - others) * (pk - others);
            break;
        }
    }
    return p;
}

std::vector<FamilyCheck> check_family(FamilyKind kind, const std::vector<Complex>& coefficients,
                                      std::size_t n_qubits) {
    if (n_qubits < 3) throw std::invalid_argument("check_family: need at least three qubits");
    PureState state = PureState::basis(1, 0);
    switch (kind) {
        case FamilyKind::GHZ:
            if (coefficients.size() != 2) throw std::invalid_argument("check_family: GHZ needs (a1, a2)");
            state = ghz_state(n_qubits, coefficients[0], coefficients[1]);
            break;
        case FamilyKind::W:
            if (coefficients.size() != n_qubits) throw std::invalid_argument("check_family: W needs n amplitudes");
            state = w_state(coefficients);
            break;
        default:
            throw std::invalid_argument("check_family: only the GHZ_n and W_n families carry closed forms");
    }
    std::vector<FamilyCheck> out;
    for (std::size_t k = 0; k < n_qubits; ++k) {
        FamilyCheck c;
        c.qubit = k;
        const auto s = single_particle_character(state, k);
        const double ck = bipartite_concurrence(state, k);
        c.measured_pairwise_tangle = pairwise_tangle(state, k);
        c.measured_character_sq = s.character * s.character;
        c.measured_bipartite_sq = ck * ck;
        c.predicted = family_prediction(kind, coefficients, n_qubits, k);
        c.conjecture_sum = c.measured_pairwise_tangle + c.predicted.n_tangle + c.measured_character_sq;
        out.push_back(c);
    }
    return out;
}

}  // namespace qcomp
