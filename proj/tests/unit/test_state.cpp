#include "oracles.hpp"
#include "qcomp/random.hpp"
#include "qcomp/state.hpp"

#include <doctest.h>

#include <numbers>
#include <stdexcept>

using namespace qcomp;

TEST_CASE("pure state construction validates length and norm") {
    Vector v(4);
    v << 1.0, 0.0, 0.0, 0.0;
    CHECK_NOTHROW(PureState(2, v));
    CHECK_THROWS_AS(PureState(3, v), std::invalid_argument);
    v(1) = 1.0;
    CHECK_THROWS_AS(PureState(2, v), std::invalid_argument);
    const PureState s = PureState::normalized(2, v);
    CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(PureState::normalized(2, Vector::Zero(4)), std::invalid_argument);
    CHECK_THROWS_AS(PureState::basis(2, 4), std::invalid_argument);
}

TEST_CASE("density matrix construction rejects invalid operators") {
    Matrix m = Matrix::Identity(4, 4) / 4.0;
    CHECK_NOTHROW(DensityMatrix(2, m));
    Matrix bad_trace = Matrix::Identity(4, 4) / 2.0;
    CHECK_THROWS_AS(DensityMatrix(2, bad_trace), std::invalid_argument);
    Matrix non_herm = m;
    non_herm(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix(2, non_herm), std::invalid_argument);
    Matrix negative = Matrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(1, negative), std::invalid_argument);
}

TEST_CASE("unitary validation and composition order") {
    CHECK_THROWS_AS(UnitaryOperator(Matrix::Identity(2, 2) * 2.0), std::invalid_argument);
    const UnitaryOperator x{Matrix(pauli_x())};
    const UnitaryOperator h(Matrix(oracle::spin_rotation(std::numbers::pi / 2, 0, 1, 0)));
    // (a * b) applies b first.
    const PureState zero = PureState::basis(1, 0);
    const PureState out = apply_unitary(zero, x * h, {0});
    const Vector expected = Matrix(pauli_x()) * (h.matrix() * zero.amplitudes());
    CHECK((out.amplitudes() - expected).norm() < 1e-15);
}

TEST_CASE("apply_unitary on chosen targets matches a Kronecker-product oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const PureState psi = oracle::haar_state(3, rng);
        const UnitaryOperator u = random_unitary(2, 100 + trial);
        const Matrix I = Matrix::Identity(2, 2);
        // Target qubit 1 of 3.
        const Matrix full = oracle::kron(oracle::kron(I, u.matrix()), I);
        const Vector expected = full * psi.amplitudes();
        CHECK((apply_unitary(psi, u, {1}).amplitudes() - expected).norm() < 1e-13);

        // Two-qubit gate on (2, 0): targets[0] is the most significant.
        const UnitaryOperator u2 = random_unitary(4, 200 + trial);
        Matrix perm = Matrix::Zero(8, 8);  // maps |q0 q1 q2> to |q2 q0 q1>
        for (std::size_t i = 0; i < 8; ++i) {
            const std::size_t q0 = (i >> 2) & 1U, q1 = (i >> 1) & 1U, q2 = i & 1U;
            perm(static_cast<Eigen::Index>((q2 << 2) | (q0 << 1) | q1), static_cast<Eigen::Index>(i)) = 1.0;
        }
        const Matrix full2 = perm.transpose() * oracle::kron(u2.matrix(), I) * perm;
        CHECK((apply_unitary(psi, u2, {2, 0}).amplitudes() - full2 * psi.amplitudes()).norm() < 1e-13);
    }
    const PureState psi = PureState::basis(2, 0);
    CHECK_THROWS_AS(apply_unitary(psi, UnitaryOperator::identity(4), {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(apply_unitary(psi, UnitaryOperator::identity(2), {2}), std::invalid_argument);
    CHECK_THROWS_AS(apply_unitary(psi, UnitaryOperator::identity(4), {0}), std::invalid_argument);
}

TEST_CASE("marginal and partial trace agree with explicit summation") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const PureState psi = oracle::haar_state(3, rng);
        for (std::size_t k = 0; k < 3; ++k) {
            const Matrix expected = oracle::reduced(psi.amplitudes(), k, 3);
            CHECK((marginal(psi, {k}).matrix() - expected).cwiseAbs().maxCoeff() < 1e-14);
            CHECK((partial_trace(DensityMatrix::from_pure(psi), {k}).matrix() - expected).cwiseAbs().maxCoeff() < 1e-14);
        }
        const Matrix pair = oracle::reduced_pair(psi.amplitudes(), 0, 2, 3);
        CHECK((marginal(psi, {0, 2}).matrix() - pair).cwiseAbs().maxCoeff() < 1e-14);
        const Matrix a = split_amplitudes(psi, {0, 2});
        CHECK((a * a.adjoint() - pair).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("bloch vectors, purity, mixing and dephasing") {
    const BlochVector s{0.3, -0.4, 0.5};
    const DensityMatrix rho = density_from_bloch(s);
    const BlochVector back = bloch_vector(rho);
    CHECK(back.x == doctest::Approx(0.3));
    CHECK(back.y == doctest::Approx(-0.4));
    CHECK(back.z == doctest::Approx(0.5));
    CHECK(purity(rho) == doctest::Approx((1.0 + s.dot(s)) / 2.0));
    CHECK_THROWS_AS(density_from_bloch({1.0, 1.0, 0.0}), std::invalid_argument);

    const DensityMatrix plus = DensityMatrix::from_pure(PureState(1, Vector::Constant(2, 1.0 / std::sqrt(2.0))));
    const DensityMatrix d = dephase(plus);
    CHECK(std::abs(d(0, 1)) == 0.0);
    CHECK(purity(mix(plus, d, 0.5)) == doctest::Approx(0.625));
    CHECK_THROWS_AS(mix(plus, d, 1.5), std::invalid_argument);

    const auto ev = spectrum(mix(plus, DensityMatrix::maximally_mixed(1), 0.5));
    CHECK(ev(0) == doctest::Approx(0.25));
    CHECK(ev(1) == doctest::Approx(0.75));
}

TEST_CASE("tensor, overlap and fidelity") {
    const PureState a = PureState::basis(1, 0);
    const PureState b = PureState::basis(1, 1);
    const PureState ab = tensor(a, b);
    CHECK(ab.n_qubits() == 2);
    CHECK(std::abs(ab[1] - Complex(1.0)) < 1e-15);
    CHECK(overlap(ab, PureState::basis(2, 1)) == doctest::Approx(1.0));
    const PureState phased(2, ab.amplitudes() * std::polar(1.0, 0.7));
    CHECK(overlap(ab, phased) == doctest::Approx(1.0));
    CHECK(fidelity(ab, DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.25));
    CHECK((embed(pauli_z(), 1, 2) - oracle::kron(Matrix::Identity(2, 2), Matrix(pauli_z()))).norm() < 1e-15);
}

TEST_CASE("random generators are seeded and valid") {
    const PureState a = random_pure_state(3, 42);
    const PureState b = random_pure_state(3, 42);
    const PureState c = random_pure_state(3, 43);
    CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);
    CHECK((a.amplitudes() - c.amplitudes()).norm() > 1e-3);
    const UnitaryOperator u = random_unitary(4, 9);
    CHECK((u.matrix().adjoint() * u.matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    const DensityMatrix rho = random_mixed_state(2, 3);
    CHECK(spectrum(rho).minCoeff() > -1e-12);
    CHECK(purity(rho) < 1.0 - 1e-6);
    CHECK(purity(random_mixed_state(2, 3, 0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(random_pure_state(0, 1), std::invalid_argument);
}
