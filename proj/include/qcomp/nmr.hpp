#pragma once

// Pulse-level simulation of the two-spin NMR experiments.
//
// Conventions (calibrated against the preparation sequences):
//   [a]_b on qubit q  = exp(-i a/2 (sx cos b + sy sin b)) on q
//   J evolution theta = exp(-i theta/2 sz x sz), a free evolution of
//                       duration theta / (pi J) in the doubly rotating frame
//   gradient pulse    = full dephasing in the computational basis
// Sequences run left to right in time.

#include "qcomp/state.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qcomp {

struct RFPulse {
    std::size_t qubit = 0;  // 0-based
    double flip = 0.0;
    double phase = 0.0;
};

struct JEvolution {
    double theta = 0.0;  // >= 0
};

struct GradientPulse {};

/// [pi]_0 on `qubit`, J evolution by theta, [pi]_0 again: a J evolution by
/// -theta up to a global phase.
struct PiSandwich {
    std::size_t qubit = 0;
    double theta = 0.0;  // >= 0
};

using PulseEvent = std::variant<RFPulse, JEvolution, GradientPulse, PiSandwich>;

struct PulseSequence {
    std::string label;
    std::vector<PulseEvent> events;
};

struct SpinSystem {
    std::size_t n_qubits = 2;
    std::vector<double> weights{3.98, 1.0};  // thermal polarization weights (gamma ratio 1H : 13C)
    double coupling_hz = 214.95;             // J
    double polarization = 1e-5;              // thermal deviation scale

    /// Throws std::invalid_argument on non-positive weights or J, or a
    /// polarization that would make the thermal state non-positive.
    void validate() const;
};

Matrix2 rf_rotation(double flip, double phase);
UnitaryOperator rf_pulse_unitary(std::size_t qubit, double flip, double phase, std::size_t n_qubits);
UnitaryOperator j_evolution_unitary(double theta);

DensityMatrix gradient_pulse(const DensityMatrix& rho);

/// Evolution time in seconds of a J evolution by theta.
double j_evolution_time(double theta, const SpinSystem& system);

/// (1 + p (w1 Z1 + w2 Z2) / (w1 + w2)) / 4.
DensityMatrix thermal_state(const SpinSystem& system);

enum class PseudoPureFlip {
    Calibrated,  // arccos(2 w2 / w1): exact pseudo-pure output for any ratio >= 2
    Literal,     // pi/3: exact only at w1/w2 = 4
};

/// [t]^1_{pi/2} G [pi/4]^1_{pi/2} -(pi/2)/(pi J)- [pi/4]^1_0 G with t per `flip`.
PulseSequence pseudo_pure_sequence(const SpinSystem& system, PseudoPureFlip flip = PseudoPureFlip::Calibrated);
DensityMatrix pseudo_pure_prep(const SpinSystem& system, PseudoPureFlip flip = PseudoPureFlip::Calibrated);

/// rho = lambda I + epsilon |psi><psi|.
struct PseudoPureDecomposition {
    double lambda = 0.0;
    double epsilon = 0.0;
    PureState state = PureState::basis(1, 0);
    double residual = 0.0;  // max-abs deviation of rho from the fitted form
};
PseudoPureDecomposition pure_part(const DensityMatrix& rho);

/// Named state-preparation sequences: phi, psi (alias bell), psi-literal,
/// phi-theta [theta], psi-theta [theta], psi2 [theta1 theta2],
/// psi2-literal [theta1 theta2], transducer [phi1 phi2].
PulseSequence preset_sequence(const std::string& name, const std::vector<double>& params = {});
std::vector<std::string> preset_sequence_names();

/// Target state of a preparation preset (throws for psi-literal,
/// psi2-literal and transducer, which have no target).
PureState preset_target(const std::string& name, const std::vector<double>& params = {});

/// Pulse realization of the symmetric transducer of qubit q:
/// [pi]_{(-pi-phi)/2} [pi/2]_{pi/2}.
PulseSequence transducer_sequence(std::size_t qubit, double phi);

DensityMatrix run_sequence(const DensityMatrix& rho, const PulseSequence& seq);
/// Product of the unitary events; throws if the sequence holds a gradient.
UnitaryOperator sequence_unitary(const PulseSequence& seq, std::size_t n_qubits);

/// Line integrals of qubit k after gradient and readout pulse [pi/2]^k_{pi/2}.
/// lines[x] belongs to spectator configuration x (the other qubits in
/// increasing order): p(0_k, x) - p(1_k, x). Two lines for two qubits.
struct ReadoutRecord {
    std::size_t qubit = 0;
    std::vector<double> populations;  // after the gradient pulse
    std::vector<double> lines;
    double signal = 0.0;  // sum of both lines, i.e. <sz^(k)>
};

struct ReadoutNoise {
    double sigma = 0.0;  // Gaussian noise on each line integral
    std::uint64_t seed = 0;
};

ReadoutRecord readout_populations(const DensityMatrix& rho, std::size_t k, const ReadoutNoise& noise = {});

/// |sum of lines|. `reference` rescales line integrals (e.g. the pseudo-pure
/// epsilon, so results are in units of the pure-state signal).
double measure_predictability(const DensityMatrix& rho, std::size_t k, double reference = 1.0,
                              const ReadoutNoise& noise = {});

/// Pulse [polar(b)]_{atan2(-bx, by)} on `qubit`, which rotates Bloch axis b
/// onto +z.
RFPulse axis_rotation_pulse(std::size_t qubit, const BlochVector& axis);

/// Rotate the ancilla j = 1 - k so that `axis` lies along z, apply a
/// gradient, read out qubit k and sum the magnitudes of both lines.
double measure_distinguishability(const DensityMatrix& rho, std::size_t k, const BlochVector& axis,
                                  double reference = 1.0, const ReadoutNoise& noise = {});
/// Same protocol with the optimal axis computed from a pure state.
double measure_distinguishability(const PureState& state, std::size_t k);

}  // namespace qcomp
