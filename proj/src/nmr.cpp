#include "qcomp/nmr.hpp"

#include "qcomp/families.hpp"
#include "qcomp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace qcomp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_qubit(std::size_t q, std::size_t n, const char* who) {
    if (q >= n) {
        throw std::invalid_argument(std::string(who) + ": qubit " + std::to_string(q + 1) + " out of range for " +
                                    std::to_string(n) + " qubits");
    }
}

void check_angle(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void expect_params(const std::string& name, const std::vector<double>& params, std::size_t count) {
    if (params.size() != count) {
        throw std::invalid_argument("preset '" + name + "' takes " + std::to_string(count) + " parameter(s), got " +
                                    std::to_string(params.size()));
    }
    for (double p : params) check_angle(p, "preset parameter");
}

RFPulse rf(std::size_t q, double flip, double phase) { return RFPulse{q, flip, phase}; }

// J evolution by a signed angle; negative values use the pi sandwich on qubit 1.
PulseEvent signed_j(double theta) {
    if (theta >= 0.0) return JEvolution{theta};
    return PiSandwich{0, -theta};
}

PulseSequence psi2_sequence(double theta1, double theta2, double first_phase, const std::string& label) {
    return {label,
            {rf(0, kPi / 2, kPi / 2), rf(1, kPi / 2, first_phase), signed_j((theta1 - theta2) / 2),
             rf(1, kPi / 2, kPi), rf(1, (theta1 + theta2) / 2, kPi / 2)}};
}

std::size_t event_qubit_bound(const PulseEvent& e) {
    if (const auto* p = std::get_if<RFPulse>(&e)) return p->qubit + 1;
    if (std::holds_alternative<JEvolution>(e)) return 2;
    if (const auto* s = std::get_if<PiSandwich>(&e)) return std::max<std::size_t>(2, s->qubit + 1);
    return 0;
}

void check_event(const PulseEvent& e, std::size_t n) {
    const std::size_t need = event_qubit_bound(e);
    if (need > n) {
        throw std::invalid_argument("run_sequence: event needs " + std::to_string(need) + " qubits, state has " +
                                    std::to_string(n));
    }
    if ((std::holds_alternative<JEvolution>(e) || std::holds_alternative<PiSandwich>(e)) && n != 2) {
        throw std::invalid_argument("run_sequence: J evolution is defined for two-qubit systems only");
    }
    if (const auto* p = std::get_if<RFPulse>(&e)) {
        check_angle(p->flip, "RF flip angle");
        check_angle(p->phase, "RF phase");
    }
    if (const auto* j = std::get_if<JEvolution>(&e)) {
        check_angle(j->theta, "J evolution angle");
        if (j->theta < 0.0) throw std::invalid_argument("J evolution angle must be >= 0 (use a pi sandwich)");
    }
    if (const auto* s = std::get_if<PiSandwich>(&e)) {
        check_angle(s->theta, "pi sandwich angle");
        if (s->theta < 0.0) throw std::invalid_argument("pi sandwich angle must be >= 0");
    }
}

// Unitary events as a list of (local unitary, targets).
std::vector<std::pair<UnitaryOperator, QubitList>> event_unitaries(const PulseEvent& e) {
    std::vector<std::pair<UnitaryOperator, QubitList>> out;
    if (const auto* p = std::get_if<RFPulse>(&e)) {
        out.emplace_back(UnitaryOperator(rf_rotation(p->flip, p->phase)), QubitList{p->qubit});
    } else if (const auto* j = std::get_if<JEvolution>(&e)) {
        out.emplace_back(j_evolution_unitary(j->theta), QubitList{0, 1});
    } else if (const auto* s = std::get_if<PiSandwich>(&e)) {
        const UnitaryOperator flip(rf_rotation(kPi, 0.0));
        out.emplace_back(flip, QubitList{s->qubit});
        out.emplace_back(j_evolution_unitary(s->theta), QubitList{0, 1});
        out.emplace_back(flip, QubitList{s->qubit});
    }
    return out;
}

std::mt19937_64 noise_engine(const ReadoutNoise& noise) {
    std::seed_seq seq{static_cast<std::uint32_t>(noise.seed & 0xffffffffU), static_cast<std::uint32_t>(noise.seed >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

void SpinSystem::validate() const {
    if (n_qubits == 0) throw std::invalid_argument("SpinSystem: qubit count must be positive");
    if (weights.size() != n_qubits) throw std::invalid_argument("SpinSystem: need one weight per qubit");
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("SpinSystem: weights must be positive");
    }
    if (!(coupling_hz > 0.0) || !std::isfinite(coupling_hz)) throw std::invalid_argument("SpinSystem: J must be positive");
    if (!(polarization > 0.0 && polarization < 1.0)) {
        throw std::invalid_argument("SpinSystem: polarization must lie in (0, 1)");
    }
}

Matrix2 rf_rotation(double flip, double phase) {
    const Matrix2 axis = std::cos(phase) * pauli_x() + std::sin(phase) * pauli_y();
    return std::cos(flip / 2) * Matrix2::Identity() - Complex(0.0, std::sin(flip / 2)) * axis;
}

UnitaryOperator rf_pulse_unitary(std::size_t qubit, double flip, double phase, std::size_t n_qubits) {
    check_qubit(qubit, n_qubits, "rf_pulse_unitary");
    return UnitaryOperator(embed(rf_rotation(flip, phase), qubit, n_qubits));
}

UnitaryOperator j_evolution_unitary(double theta) {
    check_angle(theta, "J evolution angle");
    Matrix u = Matrix::Zero(4, 4);
    const Complex minus = std::polar(1.0, -theta / 2);
    const Complex plus = std::polar(1.0, theta / 2);
    u(0, 0) = minus;
    u(1, 1) = plus;
    u(2, 2) = plus;
    u(3, 3) = minus;
    return UnitaryOperator(std::move(u));
}

DensityMatrix gradient_pulse(const DensityMatrix& rho) { return dephase(rho); }

double j_evolution_time(double theta, const SpinSystem& system) {
    system.validate();
    return theta / (kPi * system.coupling_hz);
}

DensityMatrix thermal_state(const SpinSystem& system) {
    system.validate();
    const std::size_t n = system.n_qubits;
    double total = 0.0;
    for (double w : system.weights) total += w;
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        double z = 0.0;
        for (std::size_t q = 0; q < n; ++q) {
            const bool one = (static_cast<std::size_t>(i) >> (n - 1 - q)) & 1U;
            z += (one ? -1.0 : 1.0) * system.weights[q];
        }
        m(i, i) = (1.0 + system.polarization * z / total) / static_cast<double>(dim);
    }
    return DensityMatrix(n, std::move(m));
}

PulseSequence pseudo_pure_sequence(const SpinSystem& system, PseudoPureFlip flip) {
    system.validate();
    if (system.n_qubits != 2) throw std::invalid_argument("pseudo_pure_sequence: two-qubit systems only");
    double first = kPi / 3;
    if (flip == PseudoPureFlip::Calibrated) {
        const double ratio = 2.0 * system.weights[1] / system.weights[0];
        if (ratio > 1.0) {
            throw std::invalid_argument("pseudo_pure_sequence: weight ratio w1/w2 must be >= 2 for this sequence");
        }
        first = std::acos(ratio);
    }
    return {"pseudo-pure",
            {rf(0, first, kPi / 2), GradientPulse{}, rf(0, kPi / 4, kPi / 2), JEvolution{kPi / 2}, rf(0, kPi / 4, 0.0),
             GradientPulse{}}};
}

DensityMatrix pseudo_pure_prep(const SpinSystem& system, PseudoPureFlip flip) {
    return run_sequence(thermal_state(system), pseudo_pure_sequence(system, flip));
}

PseudoPureDecomposition pure_part(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    const Eigen::VectorXd& w = es.eigenvalues();
    const Eigen::Index d = w.size();
    if (d < 2) throw std::invalid_argument("pure_part: need at least a two-dimensional state");
    PseudoPureDecomposition out;
    out.lambda = w.head(d - 1).mean();
    out.epsilon = w(d - 1) - out.lambda;
    if (!(out.epsilon > 0.0)) throw std::invalid_argument("pure_part: state has no pseudo-pure component");
    const Vector top = es.eigenvectors().col(d - 1);
    out.state = PureState::normalized(rho.n_qubits(), top);
    const Matrix model = out.lambda * Matrix::Identity(d, d) + out.epsilon * top * top.adjoint();
    out.residual = (rho.matrix() - model).cwiseAbs().maxCoeff();
    return out;
}

PulseSequence transducer_sequence(std::size_t qubit, double phi) {
    return {"transducer", {rf(qubit, kPi, (-kPi - phi) / 2), rf(qubit, kPi / 2, kPi / 2)}};
}

PulseSequence preset_sequence(const std::string& name, const std::vector<double>& params) {
    if (name == "phi") {
        expect_params(name, params, 0);
        return {name, {rf(0, kPi / 2, kPi / 2), rf(1, kPi / 2, kPi / 2)}};
    }
    if (name == "psi" || name == "bell") {
        expect_params(name, params, 0);
        return {name, {rf(0, kPi / 2, kPi / 2), rf(1, kPi / 2, kPi / 2), JEvolution{kPi / 2}, rf(1, kPi / 2, 0.0)}};
    }
    if (name == "psi-literal") {
        expect_params(name, params, 0);
        return {name,
                {rf(0, kPi / 2, -kPi / 2), rf(0, kPi / 2, -kPi), rf(0, kPi / 2, kPi / 2), rf(1, kPi / 2, -kPi),
                 rf(1, kPi / 2, kPi / 2), JEvolution{kPi / 2}, rf(1, kPi / 2, kPi / 2)}};
    }
    if (name == "phi-theta") {
        expect_params(name, params, 1);
        return {name, {rf(0, kPi / 2, kPi / 2), rf(1, params[0], kPi / 2)}};
    }
    if (name == "psi-theta") {
        expect_params(name, params, 1);
        return psi2_sequence(kPi / 2, params[0], 0.0, name);
    }
    if (name == "psi2") {
        expect_params(name, params, 2);
        return psi2_sequence(params[0], params[1], 0.0, name);
    }
    if (name == "psi2-literal") {
        expect_params(name, params, 2);
        return psi2_sequence(params[0], params[1], kPi, name);
    }
    if (name == "transducer") {
        expect_params(name, params, 2);
        PulseSequence seq = transducer_sequence(0, params[0]);
        for (const auto& e : transducer_sequence(1, params[1]).events) seq.events.push_back(e);
        seq.label = name;
        return seq;
    }
    throw std::invalid_argument("unknown pulse-sequence preset '" + name + "'");
}

std::vector<std::string> preset_sequence_names() {
    return {"phi", "psi", "bell", "psi-literal", "phi-theta", "psi-theta", "psi2", "psi2-literal", "transducer"};
}

PureState preset_target(const std::string& name, const std::vector<double>& params) {
    if (name == "phi") {
        expect_params(name, params, 0);
        return phi_state();
    }
    if (name == "psi" || name == "bell") {
        expect_params(name, params, 0);
        return bell_state();
    }
    if (name == "phi-theta") {
        expect_params(name, params, 1);
        return phi_theta_state(params[0]);
    }
    if (name == "psi-theta") {
        expect_params(name, params, 1);
        return psi_theta_state(params[0]);
    }
    if (name == "psi2") {
        expect_params(name, params, 2);
        return psi_family_state(params[0], params[1]);
    }
    throw std::invalid_argument("preset '" + name + "' has no target state");
}

DensityMatrix run_sequence(const DensityMatrix& rho, const PulseSequence& seq) {
    DensityMatrix out = rho;
    for (const auto& e : seq.events) {
        check_event(e, rho.n_qubits());
        if (std::holds_alternative<GradientPulse>(e)) {
            out = gradient_pulse(out);
            continue;
        }
        for (const auto& [u, targets] : event_unitaries(e)) out = apply_unitary(out, u, targets);
    }
    return out;
}

UnitaryOperator sequence_unitary(const PulseSequence& seq, std::size_t n_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    Matrix total = Matrix::Identity(dim, dim);
    for (const auto& e : seq.events) {
        check_event(e, n_qubits);
        if (std::holds_alternative<GradientPulse>(e)) {
            throw std::invalid_argument("sequence_unitary: gradient pulses are not unitary");
        }
        for (const auto& [u, targets] : event_unitaries(e)) {
            Matrix full;
            if (targets.size() == 1) {
                full = embed(u.matrix(), targets[0], n_qubits);
            } else {
                full = u.matrix();
            }
            total = (full * total).eval();
        }
    }
    return UnitaryOperator(std::move(total));
}

ReadoutRecord readout_populations(const DensityMatrix& rho, std::size_t k, const ReadoutNoise& noise) {
    const std::size_t n = rho.n_qubits();
    check_qubit(k, n, "readout_populations");
    if (!(noise.sigma >= 0.0)) throw std::invalid_argument("readout noise sigma must be >= 0");
    const DensityMatrix dephased = gradient_pulse(rho);
    ReadoutRecord rec;
    rec.qubit = k;
    for (Eigen::Index i = 0; i < dephased.matrix().rows(); ++i) rec.populations.push_back(dephased.matrix()(i, i).real());

    // The readout pulse turns sz^(k) into sx^(k); the FID of qubit k splits
    // into one line per spectator configuration.
    const DensityMatrix read = apply_unitary(dephased, UnitaryOperator(rf_rotation(kPi / 2, kPi / 2)), {k});
    const std::size_t spectators = n - 1;
    rec.lines.assign(std::size_t{1} << spectators, 0.0);
    const std::size_t kbit = std::size_t{1} << (n - 1 - k);
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
        if (i & kbit) continue;
        // spectator index: drop bit k from i.
        const std::size_t high = i >> (n - k);
        const std::size_t low = i & (kbit - 1);
        const std::size_t x = (high << (n - 1 - k)) | low;
        const Complex coherence = read(i, i | kbit);
        rec.lines[x] = 2.0 * coherence.real();  // <sx> restricted to spectator x
    }
    if (noise.sigma > 0.0) {
        auto rng = noise_engine(noise);
        std::normal_distribution<double> normal(0.0, noise.sigma);
        for (double& l : rec.lines) l += normal(rng);
    }
    rec.signal = 0.0;
    for (double l : rec.lines) rec.signal += l;
    return rec;
}

double measure_predictability(const DensityMatrix& rho, std::size_t k, double reference, const ReadoutNoise& noise) {
    if (!(reference > 0.0)) throw std::invalid_argument("measure_predictability: reference must be positive");
    ReadoutRecord rec = readout_populations(rho, k, ReadoutNoise{});
    if (noise.sigma > 0.0) {
        for (double& l : rec.lines) l /= reference;
        auto rng = noise_engine(noise);
        std::normal_distribution<double> normal(0.0, noise.sigma);
        double sum = 0.0;
        for (double l : rec.lines) sum += l + normal(rng);
        return std::abs(sum);
    }
    return std::abs(rec.signal / reference);
}

RFPulse axis_rotation_pulse(std::size_t qubit, const BlochVector& axis) {
    const double norm = axis.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("axis_rotation_pulse: zero axis");
    const double polar = std::acos(std::clamp(axis.z / norm, -1.0, 1.0));
    const double phase = (std::hypot(axis.x, axis.y) > 0.0) ? std::atan2(-axis.x, axis.y) : 0.0;
    return RFPulse{qubit, polar, phase};
}

double measure_distinguishability(const DensityMatrix& rho, std::size_t k, const BlochVector& axis, double reference,
                                  const ReadoutNoise& noise) {
    if (rho.n_qubits() != 2) throw std::invalid_argument("measure_distinguishability: expected a two-qubit state");
    check_qubit(k, 2, "measure_distinguishability");
    if (!(reference > 0.0)) throw std::invalid_argument("measure_distinguishability: reference must be positive");
    const std::size_t ancilla = 1 - k;
    const PulseSequence r{"ancilla-rotation", {axis_rotation_pulse(ancilla, axis), GradientPulse{}}};
    ReadoutRecord rec = readout_populations(run_sequence(rho, r), k, ReadoutNoise{});
    std::mt19937_64 rng = noise_engine(noise);
    std::normal_distribution<double> normal(0.0, noise.sigma > 0.0 ? noise.sigma : 1.0);
    double sum = 0.0;
    for (double l : rec.lines) sum += std::abs(l / reference + (noise.sigma > 0.0 ? normal(rng) : 0.0));
    return sum;
}

double measure_distinguishability(const PureState& state, std::size_t k) {
    const DistinguishabilityResult d = distinguishability(state, k);
    const BlochVector axis = d.axis.value_or(BlochVector{0.0, 0.0, 1.0});
    return measure_distinguishability(DensityMatrix::from_pure(state), k, axis);
}

}  // namespace qcomp
