#include "qcomp/interferometer.hpp"

#include "qcomp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <stdexcept>

namespace qcomp {

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kPi = std::numbers::pi;

void check_two_qubits(std::size_t n, const char* who) {
    if (n != 2) throw std::invalid_argument(std::string(who) + ": expected a two-qubit state");
}

Matrix2 phase_shifter(double phi) {
    Matrix2 p = Matrix2::Zero();
    p(0, 0) = std::polar(1.0, -phi / 2.0);
    p(1, 1) = std::polar(1.0, phi / 2.0);
    return p;
}

Matrix2 beam_splitter(double alpha, double xi) {
    // exp(i a/2 n.sigma) = cos(a/2) + i sin(a/2) n.sigma for unit n.
    const Matrix2 axis = std::cos(xi) * pauli_x() + std::sin(xi) * pauli_y();
    return std::cos(alpha / 2.0) * Matrix2::Identity() + Complex(0.0, std::sin(alpha / 2.0)) * axis;
}

Matrix2 setting_matrix(const TransducerSetting& s) { return beam_splitter(s.alpha, s.xi) * phase_shifter(s.phi); }

Matrix2 measured_matrix(const TransducerConfig& config, std::size_t k) {
    Matrix2 m = setting_matrix(config.qubits[k]);
    if (config.detection[k]) m = (*config.detection[k]) * m;
    return m;
}

// Bloch vector n with M^dagger sz M = n.sigma: p(0) - p(1) = n.s.
Vec3 observable_axis(const Matrix2& m) {
    const Matrix2 o = m.adjoint() * pauli_z() * m;
    return {o(0, 1).real(), -o(0, 1).imag(), ((o(0, 0) - o(1, 1)) / 2.0).real()};
}

Vec3 rotate_z(const Vec3& v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x() - s * v.y(), s * v.x() + c * v.y(), v.z()};
}

// n_k(phi) = Rz(-phi) n_k(0); only the phase-free axis is needed.
Vec3 axis_at_zero_phase(const TransducerConfig& config, std::size_t k) {
    TransducerConfig c = config;
    c.qubits[k].phi = 0.0;
    return observable_axis(measured_matrix(c, k));
}

struct Correlations {
    Vec3 s1;
    Vec3 s2;
    Mat3 k;  // T - s1 s2^T
};

Matrix kron2(const Matrix2& a, const Matrix2& b) {
    Matrix out(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    }
    return out;
}

Correlations correlations(const PureState& state) {
    const std::array<Matrix2, 3> paulis{pauli_x(), pauli_y(), pauli_z()};
    const Vector& a = state.amplitudes();
    auto expect = [&](const Matrix& op) { return (a.adjoint() * op * a)(0, 0).real(); };
    Correlations c;
    const Matrix2 id = Matrix2::Identity();
    Mat3 t;
    for (int i = 0; i < 3; ++i) {
        const Matrix2& pi = paulis[static_cast<std::size_t>(i)];
        c.s1(i) = expect(kron2(pi, id));
        c.s2(i) = expect(kron2(id, pi));
        for (int j = 0; j < 3; ++j) t(i, j) = expect(kron2(pi, paulis[static_cast<std::size_t>(j)]));
    }
    c.k = t - c.s1 * c.s2.transpose();
    return c;
}

double transverse(const Vec3& v) { return std::hypot(v.x(), v.y()); }

// Extremes over phi2 of n1^T K n2(phi2) for a fixed n1.
std::pair<double, double> inner_extremes(const Vec3& n1, const Mat3& k, const Vec3& n2_axis) {
    const Vec3 w = k.transpose() * n1;
    const double base = w.z() * n2_axis.z();
    const double swing = transverse(w) * transverse(n2_axis);
    return {base + swing, base - swing};
}

template <typename F>
double golden_max(F&& f, double lo, double hi) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return std::max(fc, fd);
}

// Global maximum over a periodic variable: dense grid, then golden-section
// refinement around the best few grid points.
template <typename F>
double periodic_max(F&& f) {
    constexpr int kGrid = 256;
    const double h = 2.0 * kPi / kGrid;
    std::vector<std::pair<double, double>> samples;
    samples.reserve(kGrid);
    for (int i = 0; i < kGrid; ++i) samples.emplace_back(f(i * h), i * h);
    std::partial_sort(samples.begin(), samples.begin() + 4, samples.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    double best = samples.front().first;
    for (int i = 0; i < 4; ++i) {
        const double x = samples[static_cast<std::size_t>(i)].second;
        best = std::max(best, golden_max(f, x - h, x + h));
    }
    return best;
}

double v12_from_correlations(const Mat3& k, const TransducerConfig& config) {
    const Vec3 a1 = axis_at_zero_phase(config, 0);
    const Vec3 a2 = axis_at_zero_phase(config, 1);
    const double fmax = periodic_max([&](double phi1) { return inner_extremes(rotate_z(a1, -phi1), k, a2).first; });
    const double fmin = -periodic_max([&](double phi1) { return -inner_extremes(rotate_z(a1, -phi1), k, a2).second; });
    return std::max(0.0, (fmax - fmin) / 2.0);
}

}  // namespace

TransducerConfig TransducerConfig::symmetric(double phi1, double phi2) {
    TransducerConfig c;
    c.qubits[0].phi = phi1;
    c.qubits[1].phi = phi2;
    return c;
}

TransducerConfig TransducerConfig::with_phases(double phi1, double phi2) const {
    TransducerConfig c = *this;
    c.qubits[0].phi = phi1;
    c.qubits[1].phi = phi2;
    return c;
}

UnitaryOperator transducer(const TransducerSetting& setting) { return UnitaryOperator(setting_matrix(setting)); }

UnitaryOperator interferometer_unitary(const TransducerConfig& config) {
    return tensor(UnitaryOperator(measured_matrix(config, 0)), UnitaryOperator(measured_matrix(config, 1)));
}

DetectionProbabilities probabilities_from_joint(const std::array<double, 4>& joint) {
    DetectionProbabilities p;
    p.joint = joint;
    p.qubit1 = {joint[0] + joint[1], joint[2] + joint[3]};
    p.qubit2 = {joint[0] + joint[2], joint[1] + joint[3]};
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            p.corrected[2 * x + y] = joint[2 * x + y] - p.qubit1[x] * p.qubit2[y] + 0.25;
        }
    }
    return p;
}

DetectionProbabilities detection_probabilities(const PureState& state, const TransducerConfig& config) {
    check_two_qubits(state.n_qubits(), "detection_probabilities");
    const Vector out = interferometer_unitary(config).matrix() * state.amplitudes();
    std::array<double, 4> joint{};
    for (std::size_t i = 0; i < 4; ++i) joint[i] = std::norm(out(static_cast<Eigen::Index>(i)));
    return probabilities_from_joint(joint);
}

DetectionProbabilities detection_probabilities(const DensityMatrix& rho, const TransducerConfig& config) {
    check_two_qubits(rho.n_qubits(), "detection_probabilities");
    const Matrix u = interferometer_unitary(config).matrix();
    const Matrix out = u * rho.matrix() * u.adjoint();
    std::array<double, 4> joint{};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        joint[i] = out(idx, idx).real();
    }
    return probabilities_from_joint(joint);
}

std::array<double, 4> corrected_joint_probabilities(const PureState& state, const TransducerConfig& config) {
    return detection_probabilities(state, config).corrected;
}

MNCoefficients mn_coefficients(const PureState& state) {
    check_two_qubits(state.n_qubits(), "mn_coefficients");
    const Complex g1 = state[0], g2 = state[1], g3 = state[2], g4 = state[3];
    const Complex c1 = g1 * std::conj(g3) + g2 * std::conj(g4);
    const Complex c2 = g1 * std::conj(g2) + g3 * std::conj(g4);
    MNCoefficients r;
    r.M = g1 * std::conj(g4) - c1 * c2;
    r.N = g2 * std::conj(g3) - c1 * std::conj(c2);
    r.xi1 = std::arg(r.M);
    r.xi2 = std::arg(r.N);
    return r;
}

double fringe_visibility(const PureState& state, const TransducerConfig& config, std::size_t k) {
    check_two_qubits(state.n_qubits(), "fringe_visibility");
    if (k > 1) throw std::invalid_argument("fringe_visibility: qubit out of range");
    const BlochVector s = bloch_vector(marginal(state, {k}));
    return transverse(axis_at_zero_phase(config, k)) * std::hypot(s.x, s.y);
}

double two_particle_visibility(const PureState& state, const TransducerConfig& config) {
    check_two_qubits(state.n_qubits(), "two_particle_visibility");
    return v12_from_correlations(correlations(state).k, config);
}

V12Maximum maximize_v12(const PureState& state) {
    check_two_qubits(state.n_qubits(), "maximize_v12");
    const Mat3 k = correlations(state).k;
    const double c = concurrence(state);

    V12Maximum best;
    best.config = TransducerConfig::symmetric();
    best.value = v12_from_correlations(k, best.config);

    // Closed-form start: n1 sweeps the equator through a top left-singular
    // vector u of K (the top singular space of a pure state is degenerate, so
    // an equatorial u exists); n2's cone passes through v = K^T u / sigma.
    Eigen::JacobiSVD<Mat3> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector3d sv = svd.singularValues();
    if (sv(0) > 1e-14) {
        const Vec3 u0 = svd.matrixU().col(0);
        const Vec3 u1 = svd.matrixU().col(1);
        Vec3 u = u0;
        if (sv(0) - sv(1) <= 1e-9 * std::max(1.0, sv(0))) {
            const Vec3 cand = u1.z() * u0 - u0.z() * u1;
            if (cand.norm() > 1e-12) u = cand.normalized();
        }
        const Vec3 v = (k.transpose() * u) / sv(0);
        TransducerConfig start = TransducerConfig::symmetric();
        start.qubits[0].alpha = std::acos(std::clamp(u.z(), -1.0, 1.0));
        start.qubits[1].alpha = std::acos(std::clamp(v.z() / std::max(v.norm(), 1e-300), -1.0, 1.0));
        const double value = v12_from_correlations(k, start);
        if (value > best.value) {
            best.value = value;
            best.config = start;
        }
    }

    // Pattern search over (alpha1, xi1, alpha2, xi2) as a guard.
    for (double step = 0.05; step > 1e-9; step /= 4.0) {
        bool improved = true;
        int rounds = 0;
        while (improved && rounds++ < 50) {
            improved = false;
            for (int p = 0; p < 4; ++p) {
                for (double sign : {1.0, -1.0}) {
                    TransducerConfig trial = best.config;
                    auto& s = trial.qubits[static_cast<std::size_t>(p / 2)];
                    (p % 2 == 0 ? s.alpha : s.xi) += sign * step;
                    const double value = v12_from_correlations(k, trial);
                    if (value > best.value + 1e-15) {
                        best.value = value;
                        best.config = trial;
                        improved = true;
                    }
                }
            }
        }
        if (std::abs(best.value - c) < 1e-13) break;
    }
    if (std::abs(best.value - c) > 1e-4) {
        throw std::runtime_error("maximize_v12: optimizer reached " + std::to_string(best.value) +
                                 " but the concurrence is " + std::to_string(c));
    }
    return best;
}

FringeScan sweep_fringes(const PureState& state, const TransducerConfig& config_template, const SweepSpec& sweep,
                         double noise_sigma, std::uint64_t seed) {
    check_two_qubits(state.n_qubits(), "sweep_fringes");
    if (sweep.steps < 4) throw std::invalid_argument("sweep_fringes: need at least 4 steps");
    if (!std::isfinite(sweep.start) || !std::isfinite(sweep.stop) || !(sweep.stop > sweep.start)) {
        throw std::invalid_argument("sweep_fringes: phase range must be increasing and finite");
    }
    if (!(noise_sigma >= 0.0)) throw std::invalid_argument("sweep_fringes: noise sigma must be >= 0");
    FringeScan scan;
    scan.mode = sweep.mode;
    scan.parameter = sweep.mode == SweepMode::Joint ? "phi1=phi2" : (sweep.mode == SweepMode::Phase1 ? "phi1" : "phi2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);
    const double h = (sweep.stop - sweep.start) / static_cast<double>(sweep.steps - 1);
    for (std::size_t i = 0; i < sweep.steps; ++i) {
        const double x = sweep.start + h * static_cast<double>(i);
        double phi1 = x;
        double phi2 = x;
        if (sweep.mode == SweepMode::Phase1) phi2 = sweep.fixed_phase;
        if (sweep.mode == SweepMode::Phase2) phi1 = sweep.fixed_phase;
        FringePoint point;
        point.phase = x;
        point.probabilities = detection_probabilities(state, config_template.with_phases(phi1, phi2));
        if (noise_sigma > 0.0) {
            std::array<double, 4> joint = point.probabilities.joint;
            double total = 0.0;
            for (double& p : joint) {
                p = std::clamp(p + normal(rng), 0.0, 1.0);
                total += p;
            }
            for (double& p : joint) p = total > 0.0 ? p / total : 0.25;
            point.probabilities = probabilities_from_joint(joint);
        }
        scan.points.push_back(point);
    }
    return scan;
}

void write_fringe_csv(std::ostream& out, const FringeScan& scan) {
    out << "phase,p0_1,p1_1,p0_2,p1_2,pbar00,pbar01,pbar10,pbar11\n";
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(15);
    for (const auto& pt : scan.points) {
        const auto& p = pt.probabilities;
        out << pt.phase << ',' << p.qubit1[0] << ',' << p.qubit1[1] << ',' << p.qubit2[0] << ',' << p.qubit2[1];
        for (double v : p.corrected) out << ',' << v;
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

SweepMode parse_sweep_mode(const std::string& name) {
    if (name == "joint") return SweepMode::Joint;
    if (name == "phi1") return SweepMode::Phase1;
    if (name == "phi2") return SweepMode::Phase2;
    throw std::invalid_argument("unknown sweep mode '" + name + "' (expected joint, phi1 or phi2)");
}

std::string sweep_mode_name(SweepMode mode) {
    switch (mode) {
        case SweepMode::Joint: return "joint";
        case SweepMode::Phase1: return "phi1";
        case SweepMode::Phase2: return "phi2";
    }
    return "joint";
}

}  // namespace qcomp
