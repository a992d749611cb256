#pragma once

// Two-particle interferometer: per-qubit transducers (phase shifter then
// beam splitter), detection and corrected joint probabilities, fringe sweeps
// and the maximization of the two-particle visibility.

#include "qcomp/state.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace qcomp {

struct TransducerSetting {
    double alpha = std::numbers::pi / 2;  // beam-splitter flip angle
    double xi = std::numbers::pi / 2;     // beam-splitter axis phase
    double phi = 0.0;                     // phase shift
};

struct TransducerConfig {
    std::array<TransducerSetting, 2> qubits{};
    // Optional detection basis per qubit: outcome x is the projector onto
    // W^dagger |x>, i.e. W is applied after the transducer. Empty means the
    // computational basis.
    std::array<std::optional<Matrix2>, 2> detection{};

    static TransducerConfig symmetric(double phi1 = 0.0, double phi2 = 0.0);
    TransducerConfig with_phases(double phi1, double phi2) const;
};

/// exp(i alpha/2 (sx cos xi + sy sin xi)) exp(-i phi/2 sz).
UnitaryOperator transducer(const TransducerSetting& setting);

/// Full two-qubit unitary of a configuration, detection basis included.
UnitaryOperator interferometer_unitary(const TransducerConfig& config);

struct DetectionProbabilities {
    std::array<double, 2> qubit1{};     // p(0_1), p(1_1)
    std::array<double, 2> qubit2{};     // p(0_2), p(1_2)
    std::array<double, 4> joint{};      // p(00), p(01), p(10), p(11)
    std::array<double, 4> corrected{};  // p(xy) - p(x)p(y) + 1/4
};

/// Marginals and corrected values recomputed from joint probabilities.
DetectionProbabilities probabilities_from_joint(const std::array<double, 4>& joint);

DetectionProbabilities detection_probabilities(const PureState& state, const TransducerConfig& config);
DetectionProbabilities detection_probabilities(const DensityMatrix& rho, const TransducerConfig& config);

std::array<double, 4> corrected_joint_probabilities(const PureState& state, const TransducerConfig& config);

struct MNCoefficients {
    Complex M;
    Complex N;
    double xi1 = 0.0;  // arg M
    double xi2 = 0.0;  // arg N
};

MNCoefficients mn_coefficients(const PureState& state);

/// Single-particle fringe visibility of qubit k (0-based) under the
/// configuration's beam splitter, phase swept over a period: p_max - p_min
/// of p(0_k). Equals (p_max - p_min)/(p_max + p_min) for the symmetric preset.
double fringe_visibility(const PureState& state, const TransducerConfig& config, std::size_t k);

/// Corrected two-particle visibility over (phi1, phi2) at the configuration's
/// beam-splitter settings: 2 (pbar_max - pbar_min). Equals 2(|M|+|N|) for
/// the symmetric preset.
double two_particle_visibility(const PureState& state, const TransducerConfig& config);

struct V12Maximum {
    double value = 0.0;
    TransducerConfig config;
};

/// Maximum of two_particle_visibility over (alpha_k, xi_k). Throws
/// std::runtime_error if the result misses the concurrence by more than 1e-4.
V12Maximum maximize_v12(const PureState& state);

enum class SweepMode { Joint, Phase1, Phase2 };

struct SweepSpec {
    SweepMode mode = SweepMode::Joint;
    std::size_t steps = 33;
    double start = 0.0;
    double stop = 2.0 * std::numbers::pi;
    double fixed_phase = std::numbers::pi / 2;  // phase of the qubit not swept
};

struct FringePoint {
    double phase = 0.0;
    DetectionProbabilities probabilities;
};

struct FringeScan {
    std::string parameter;  // "phi1", "phi2" or "phi1=phi2"
    SweepMode mode = SweepMode::Joint;
    std::vector<FringePoint> points;
};

/// Phases of the template config are overwritten by the sweep. With
/// noise_sigma > 0, Gaussian noise is added to each joint probability, which
/// is then clamped and renormalized; marginals follow from the noisy joint.
FringeScan sweep_fringes(const PureState& state, const TransducerConfig& config_template, const SweepSpec& sweep,
                         double noise_sigma = 0.0, std::uint64_t seed = 0);

/// Header and one row per phase point:
/// phase,p0_1,p1_1,p0_2,p1_2,pbar00,pbar01,pbar10,pbar11
void write_fringe_csv(std::ostream& out, const FringeScan& scan);

SweepMode parse_sweep_mode(const std::string& name);
std::string sweep_mode_name(SweepMode mode);

}  // namespace qcomp
