#include "oracles.hpp"
#include "qcomp/families.hpp"
#include "qcomp/interferometer.hpp"
#include "qcomp/measures.hpp"
#include "qcomp/nmr.hpp"
#include "qcomp/random.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qcomp;

namespace {

constexpr double kPi = std::numbers::pi;

const DensityMatrix& ket00() {
    static const DensityMatrix rho = DensityMatrix::from_pure(PureState::basis(2, 0));
    return rho;
}

Matrix j_oracle(double theta) {
    const Complex m = std::polar(1.0, -theta / 2), p = std::polar(1.0, theta / 2);
    Matrix u = Matrix::Zero(4, 4);
    u(0, 0) = m;
    u(1, 1) = p;
    u(2, 2) = p;
    u(3, 3) = m;
    return u;
}

}  // namespace

TEST_CASE("RF pulse and J evolution unitaries match their defining forms") {
    for (double flip = -1.0; flip < 4.0; flip += 0.7) {
        for (double phase = 0.0; phase < 2 * kPi; phase += 0.6) {
            const Matrix expected = oracle::spin_rotation(flip, std::cos(phase), std::sin(phase), 0.0);
            CHECK((Matrix(rf_rotation(flip, phase)) - expected).cwiseAbs().maxCoeff() < 1e-15);
        }
    }
    const Matrix on_second = rf_pulse_unitary(1, 0.4, 0.2, 2).matrix();
    CHECK((on_second - oracle::kron(Matrix::Identity(2, 2), Matrix(rf_rotation(0.4, 0.2)))).cwiseAbs().maxCoeff() < 1e-15);
    for (double t = 0.0; t < 7.0; t += 0.5) {
        CHECK((j_evolution_unitary(t).matrix() - j_oracle(t)).cwiseAbs().maxCoeff() < 1e-15);
        const Matrix sandwich = sequence_unitary({"s", {PiSandwich{0, t}}}, 2).matrix();
        CHECK(oracle::phase_distance(sandwich, j_oracle(-t)) < 1e-14);
        const Matrix sandwich2 = sequence_unitary({"s", {PiSandwich{1, t}}}, 2).matrix();
        CHECK(oracle::phase_distance(sandwich2, j_oracle(-t)) < 1e-14);
    }
    const SpinSystem sys;
    CHECK(j_evolution_time(kPi / 2, sys) == doctest::Approx(1.0 / (2 * 214.95)));
}

TEST_CASE("sequences run left to right in time") {
    const PulseSequence seq{"t", {RFPulse{0, 0.3, 0.0}, RFPulse{0, 0.5, kPi / 2}}};
    const Matrix expected = Matrix(rf_rotation(0.5, kPi / 2)) * Matrix(rf_rotation(0.3, 0.0));
    CHECK((sequence_unitary(seq, 1).matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(sequence_unitary({"g", {GradientPulse{}}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(run_sequence(DensityMatrix::maximally_mixed(3), {"j", {JEvolution{1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(run_sequence(ket00(), {"j", {JEvolution{-1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(run_sequence(ket00(), {"r", {RFPulse{2, 1.0, 0.0}}}), std::invalid_argument);
}

TEST_CASE("thermal state and pseudo-pure preparation") {
    SpinSystem sys;
    const DensityMatrix th = thermal_state(sys);
    const double p = sys.polarization, w1 = sys.weights[0], w2 = sys.weights[1];
    CHECK(th(0, 0).real() == doctest::Approx((1 + p * (w1 + w2) / (w1 + w2)) / 4));
    CHECK(th(1, 1).real() == doctest::Approx((1 + p * (w1 - w2) / (w1 + w2)) / 4));

    for (const double ratio : {2.5, 3.98, 4.0, 9.0}) {
        sys.weights = {ratio, 1.0};
        const DensityMatrix rho = pseudo_pure_prep(sys);
        double off = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (i != j) off = std::max(off, std::abs(rho(i, j)));
        CHECK(off < 1e-12);
        const auto pp = pure_part(rho);
        CHECK(pp.epsilon > 0.0);
        CHECK(pp.residual / pp.epsilon < 1e-9);
        CHECK(overlap(pp.state, PureState::basis(2, 0)) == doctest::Approx(1.0));
        // The three other populations are equal.
        CHECK(std::abs(rho(1, 1).real() - rho(2, 2).real()) < 1e-15);
        CHECK(std::abs(rho(1, 1).real() - rho(3, 3).real()) < 1e-15);
    }

    sys.weights = {4.0, 1.0};
    const auto literal4 = pure_part(pseudo_pure_prep(sys, PseudoPureFlip::Literal));
    CHECK(literal4.residual / literal4.epsilon < 1e-9);
    sys.weights = {3.98, 1.0};
    const auto literal = pure_part(pseudo_pure_prep(sys, PseudoPureFlip::Literal));
    CHECK(literal.residual / literal.epsilon > 1e-4);

    sys.weights = {1.5, 1.0};
    CHECK_THROWS_AS(pseudo_pure_prep(sys), std::invalid_argument);
    sys.weights = {3.98, 1.0};
    sys.polarization = 1.5;
    CHECK_THROWS_AS(sys.validate(), std::invalid_argument);
}

TEST_CASE("preparation presets reach their targets") {
    const SpinSystem sys;
    const DensityMatrix rho00 = pseudo_pure_prep(sys);
    auto check = [&](const std::string& name, const std::vector<double>& params) {
        const PureState target = preset_target(name, params);
        const PulseSequence seq = preset_sequence(name, params);
        CHECK(fidelity(target, run_sequence(ket00(), seq)) >= 1 - 1e-12);
        CHECK(overlap(target, pure_part(run_sequence(rho00, seq)).state) >= 1 - 1e-9);
    };
    check("phi", {});
    check("psi", {});
    check("bell", {});
    for (double t = -2.0; t < 4.0; t += 0.45) {
        check("phi-theta", {t});
        check("psi-theta", {t});
        for (double t2 = -1.0; t2 < 3.5; t2 += 0.8) check("psi2", {t, t2});
    }
    // The literal sequences fail in the documented ways.
    CHECK(fidelity(bell_state(), run_sequence(ket00(), preset_sequence("psi-literal"))) < 0.9);
    CHECK(fidelity(psi_family_state(0.6, 0.6), run_sequence(ket00(), preset_sequence("psi2-literal", {0.6, 0.6}))) < 0.5);
    CHECK_THROWS_AS(preset_target("transducer", {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(preset_sequence("psi2", {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(preset_sequence("nope"), std::invalid_argument);
    for (const auto& name : preset_sequence_names()) CHECK_FALSE(name.empty());
}

TEST_CASE("pulse transducer equals the transducer matrix up to a global phase") {
    for (int i = 0; i <= 32; ++i) {
        const double phi = 2 * kPi * i / 32;
        const Matrix pulses = sequence_unitary(transducer_sequence(0, phi), 1).matrix();
        CHECK(oracle::phase_distance(pulses, transducer(TransducerSetting{kPi / 2, kPi / 2, phi}).matrix()) < 1e-10);
    }
    const Matrix both = sequence_unitary(preset_sequence("transducer", {0.3, 1.7}), 2).matrix();
    CHECK(oracle::phase_distance(both, interferometer_unitary(TransducerConfig::symmetric(0.3, 1.7)).matrix()) < 1e-10);
}

TEST_CASE("readout lines are spectator-resolved population differences") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = oracle::ginibre_state(2, rng);
        for (std::size_t k = 0; k < 2; ++k) {
            const auto rec = readout_populations(rho, k);
            REQUIRE(rec.lines.size() == 2);
            for (std::size_t x = 0; x < 2; ++x) {
                const std::size_t i0 = k == 0 ? x : 2 * x;      // qubit k = 0
                const std::size_t i1 = k == 0 ? 2 + x : 2 * x + 1;  // qubit k = 1
                CHECK(std::abs(rec.lines[x] - (rho(i0, i0).real() - rho(i1, i1).real())) < 1e-14);
            }
            const Matrix z = embed(pauli_z(), k, 2);
            CHECK(std::abs(rec.signal - (rho.matrix() * z).trace().real()) < 1e-14);
            CHECK(std::abs(measure_predictability(rho, k) - predictability(rho, k)) < 1e-14);
        }
    }
    // Three qubits: four lines per qubit.
    const auto rec3 = readout_populations(DensityMatrix::from_pure(PureState::basis(3, 5)), 1);
    REQUIRE(rec3.lines.size() == 4);
    // |101>: qubit 1 is 0, spectators (q0, q2) = (1, 1) -> index 3.
    CHECK(rec3.lines[3] == doctest::Approx(1.0));
    CHECK(rec3.lines[0] == doctest::Approx(0.0));
}

TEST_CASE("phi state from the pseudo-pure state shows one positive line per qubit after the transducers") {
    const SpinSystem sys;
    const DensityMatrix rho00 = pseudo_pure_prep(sys);
    const double eps = pure_part(rho00).epsilon;
    PulseSequence seq = preset_sequence("phi");
    for (const auto& e : preset_sequence("transducer", {0.0, 0.0}).events) seq.events.push_back(e);
    const DensityMatrix out = run_sequence(rho00, seq);
    const auto r1 = readout_populations(out, 0);
    const auto r2 = readout_populations(out, 1);
    CHECK(r1.lines[0] / eps == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(r1.lines[1] / eps) < 1e-9);
    CHECK(std::abs(r1.lines[0] - r2.lines[0]) < 1e-15);
    CHECK(std::abs(r1.lines[1] - r2.lines[1]) < 1e-15);
}

TEST_CASE("axis rotation pulse brings the axis onto +z") {
    std::mt19937_64 rng(22);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        BlochVector b{g(rng), g(rng), g(rng)};
        b = b * (1.0 / b.norm());
        const RFPulse p = axis_rotation_pulse(0, b);
        const DensityMatrix rotated = apply_unitary(density_from_bloch(b), UnitaryOperator(rf_rotation(p.flip, p.phase)), {0});
        CHECK(bloch_vector(rotated).z == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(axis_rotation_pulse(0, BlochVector{}), std::invalid_argument);
}

TEST_CASE("simulated distinguishability measurement equals D") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const PureState psi = random_pure_state(2, 900 + seed);
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(std::abs(measure_distinguishability(psi, k) - distinguishability(psi, k).D) < 1e-12);
        }
    }
    // A non-optimal axis can only lower the result.
    const PureState psi = random_pure_state(2, 3);
    CHECK(measure_distinguishability(DensityMatrix::from_pure(psi), 0, BlochVector{1, 0, 0}) <=
          distinguishability(psi, 0).D + 1e-12);
}

TEST_CASE("readout noise is seeded") {
    const DensityMatrix rho = DensityMatrix::from_pure(random_pure_state(2, 4));
    const auto a = readout_populations(rho, 0, ReadoutNoise{0.01, 5});
    const auto b = readout_populations(rho, 0, ReadoutNoise{0.01, 5});
    const auto c = readout_populations(rho, 0, ReadoutNoise{0.01, 6});
    CHECK(a.lines == b.lines);
    CHECK(a.lines != c.lines);
    CHECK_THROWS_AS(readout_populations(rho, 0, ReadoutNoise{-1.0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(measure_predictability(rho, 0, 0.0), std::invalid_argument);
}
