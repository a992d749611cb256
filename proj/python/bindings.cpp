#include "qcomp/cli.hpp"
#include "qcomp/experiments.hpp"
#include "qcomp/interferometer.hpp"
#include "qcomp/measures.hpp"
#include "qcomp/nmr.hpp"
#include "qcomp/pulse_format.hpp"
#include "qcomp/relations.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace py = pybind11;
using namespace qcomp;

namespace {

std::size_t qubits_for(Eigen::Index dim) {
    std::size_t n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    if (dim < 2 || (Eigen::Index{1} << n) != dim) {
        throw std::invalid_argument("dimension must be a power of two >= 2");
    }
    return n;
}

// A 1-D array is a pure state, a 2-D array a density matrix.
StateSource to_state(const py::array& a) {
    if (a.ndim() == 1) {
        const Vector v = a.cast<Vector>();
        return PureState(qubits_for(v.size()), v);
    }
    if (a.ndim() == 2) {
        const Matrix m = a.cast<Matrix>();
        if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
        return DensityMatrix(qubits_for(m.rows()), m);
    }
    throw std::invalid_argument("state must be a 1-D amplitude vector or a 2-D density matrix");
}

PureState to_pure(const py::array& a) {
    auto s = to_state(a);
    if (auto* p = std::get_if<PureState>(&s)) return *p;
    throw std::invalid_argument("a pure state (1-D amplitude vector) is required");
}

DensityMatrix to_density(const py::array& a) {
    auto s = to_state(a);
    if (auto* p = std::get_if<PureState>(&s)) return DensityMatrix::from_pure(*p);
    return std::get<DensityMatrix>(s);
}

py::object from_state(const StateSource& s) {
    if (auto* p = std::get_if<PureState>(&s)) return py::cast(Vector(p->amplitudes()));
    return py::cast(Matrix(std::get<DensityMatrix>(s).matrix()));
}

py::object bloch(const std::optional<BlochVector>& b) {
    if (!b) return py::none();
    return py::make_tuple(b->x, b->y, b->z);
}

py::dict profile_dict(const SingleParticleProfile& s) {
    py::dict d;
    d["qubit"] = s.qubit;
    d["V"] = s.visibility;
    d["P"] = s.predictability;
    d["S"] = s.character;
    return d;
}

TransducerConfig make_config(const std::array<double, 2>& alpha, const std::array<double, 2>& xi) {
    TransducerConfig c = TransducerConfig::symmetric();
    for (std::size_t k = 0; k < 2; ++k) {
        c.qubits[k].alpha = alpha[k];
        c.qubits[k].xi = xi[k];
    }
    return c;
}

py::object nan_to_none(double x) { return std::isnan(x) ? py::object(py::none()) : py::object(py::float_(x)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Complementarity relations, interferometer and NMR simulation for few-qubit states.";
    constexpr double half_pi = std::numbers::pi / 2;

    m.def(
        "preset_state",
        [](const std::string& name, const std::vector<double>& params, std::uint64_t seed, bool normalize) {
            return from_state(make_preset_state(name, params, seed, normalize));
        },
        py::arg("name"), py::arg("params") = std::vector<double>{}, py::arg("seed") = 0,
        py::arg("normalize") = false, "Amplitude vector (or density matrix for random-mixed) of a named preset.");

    m.def(
        "visibility",
        [](const py::array& a, std::size_t k) {
            auto s = to_state(a);
            return std::visit([k](const auto& st) { return visibility(st, k); }, s);
        },
        py::arg("state"), py::arg("k"));
    m.def(
        "predictability",
        [](const py::array& a, std::size_t k) {
            auto s = to_state(a);
            return std::visit([k](const auto& st) { return predictability(st, k); }, s);
        },
        py::arg("state"), py::arg("k"));
    m.def(
        "single_particle_character",
        [](const py::array& a, std::size_t k) {
            auto s = to_state(a);
            return profile_dict(std::visit([k](const auto& st) { return single_particle_character(st, k); }, s));
        },
        py::arg("state"), py::arg("k"));
    m.def(
        "concurrence",
        [](const py::array& a) {
            auto s = to_state(a);
            return std::visit([](const auto& st) { return concurrence(st); }, s);
        },
        py::arg("state"));
    m.def(
        "distinguishability",
        [](const py::array& a, std::size_t k) {
            const auto r = distinguishability(to_pure(a), k);
            py::dict d;
            d["D"] = r.D;
            d["axis"] = bloch(r.axis);
            return d;
        },
        py::arg("state"), py::arg("k"));
    m.def(
        "tangle_profile",
        [](const py::array& a, std::size_t k) {
            const auto t = tangle_profile(to_pure(a), k);
            py::dict d;
            d["C_rest"] = t.bipartite_concurrence;
            d["tau2"] = t.pairwise_tangle;
            d["tau3"] = t.three_tangle ? py::object(py::float_(*t.three_tangle)) : py::object(py::none());
            return d;
        },
        py::arg("state"), py::arg("k"));

    m.def(
        "two_particle_visibility",
        [](const py::array& a, std::array<double, 2> alpha, std::array<double, 2> xi) {
            return two_particle_visibility(to_pure(a), make_config(alpha, xi));
        },
        py::arg("state"), py::arg("alpha") = std::array<double, 2>{half_pi, half_pi},
        py::arg("xi") = std::array<double, 2>{half_pi, half_pi});
    m.def(
        "max_v12",
        [](const py::array& a) {
            const auto r = maximize_v12(to_pure(a));
            py::dict d;
            d["value"] = r.value;
            d["alpha"] = py::make_tuple(r.config.qubits[0].alpha, r.config.qubits[1].alpha);
            d["xi"] = py::make_tuple(r.config.qubits[0].xi, r.config.qubits[1].xi);
            return d;
        },
        py::arg("state"));

    m.def(
        "verify",
        [](const py::array& a, std::optional<double> tol) {
            const Tolerances t = tol ? Tolerances::uniform(*tol) : Tolerances{};
            auto s = to_state(a);
            const auto rep = std::visit([&t](const auto& st) { return verify_relations(st, t); }, s);
            py::list rels;
            for (const auto& r : rep.relations) {
                py::dict d;
                d["name"] = r.name;
                d["lhs"] = nan_to_none(r.lhs);
                d["rhs"] = nan_to_none(r.rhs);
                d["residual"] = nan_to_none(r.residual);
                d["tolerance"] = nan_to_none(r.tolerance);
                d["verdict"] = verdict_name(r.verdict);
                rels.append(d);
            }
            py::dict out;
            out["all_passed"] = rep.all_passed();
            out["relations"] = rels;
            return out;
        },
        py::arg("state"), py::arg("tol") = py::none());

    m.def(
        "fringe_scan",
        [](const py::array& a, const std::string& mode, std::size_t steps, double fixed_phase, double noise,
           std::uint64_t seed) {
            SweepSpec spec;
            spec.mode = parse_sweep_mode(mode);
            spec.steps = steps;
            spec.fixed_phase = fixed_phase;
            const auto scan = sweep_fringes(to_pure(a), TransducerConfig::symmetric(), spec, noise, seed);
            const auto n = static_cast<Eigen::Index>(scan.points.size());
            Eigen::VectorXd phase(n);
            Eigen::MatrixXd marg(n, 4);
            Eigen::MatrixXd pbar(n, 4);
            for (Eigen::Index i = 0; i < n; ++i) {
                const auto& pt = scan.points[static_cast<std::size_t>(i)];
                phase(i) = pt.phase;
                marg.row(i) << pt.probabilities.qubit1[0], pt.probabilities.qubit1[1], pt.probabilities.qubit2[0],
                    pt.probabilities.qubit2[1];
                for (Eigen::Index j = 0; j < 4; ++j) pbar(i, j) = pt.probabilities.corrected[static_cast<std::size_t>(j)];
            }
            py::dict d;
            d["phase"] = phase;
            d["p0_1"] = Eigen::VectorXd(marg.col(0));
            d["p1_1"] = Eigen::VectorXd(marg.col(1));
            d["p0_2"] = Eigen::VectorXd(marg.col(2));
            d["p1_2"] = Eigen::VectorXd(marg.col(3));
            d["pbar"] = pbar;
            return d;
        },
        py::arg("state"), py::arg("mode") = "joint", py::arg("steps") = 33, py::arg("fixed_phase") = half_pi,
        py::arg("noise") = 0.0, py::arg("seed") = 0);

    m.def(
        "theta_grid",
        [](double noise, std::uint64_t seed, std::size_t fringe_steps) {
            ThetaGridSpec spec;
            spec.noise = noise;
            spec.seed = seed;
            spec.fringe_steps = fringe_steps;
            const auto res = run_theta_grid(spec);
            py::list rows;
            for (const auto& r : res.rows) {
                py::dict d;
                d["theta1"] = r.theta1;
                d["theta2"] = r.theta2;
                d["V"] = r.V;
                d["P"] = r.P;
                d["S"] = r.S;
                d["D"] = r.D;
                d["V12"] = r.V12;
                d["C"] = r.C;
                d["C_from_D"] = r.C_from_D;
                rows.append(d);
            }
            py::dict out;
            out["rows"] = rows;
            out["radius_v12_s"] = res.radius_v12_s;
            out["radius_d_v"] = res.radius_d_v;
            return out;
        },
        py::arg("noise") = 0.0, py::arg("seed") = 0, py::arg("fringe_steps") = 33);

    m.def(
        "pseudo_pure_prep",
        [](std::vector<double> weights, double polarization, bool literal_flip) {
            SpinSystem sys;
            sys.weights = std::move(weights);
            sys.polarization = polarization;
            return Matrix(
                pseudo_pure_prep(sys, literal_flip ? PseudoPureFlip::Literal : PseudoPureFlip::Calibrated).matrix());
        },
        py::arg("weights") = std::vector<double>{3.98, 1.0}, py::arg("polarization") = 1e-5,
        py::arg("literal_flip") = false);

    m.def(
        "run_pulse_sequence",
        [](const py::array& a, std::optional<std::string> preset, const std::vector<double>& params,
           std::optional<std::string> pulses) {
            if (preset.has_value() == pulses.has_value()) {
                throw std::invalid_argument("give exactly one of preset or pulses");
            }
            const PulseSequence seq = preset ? preset_sequence(*preset, params) : parse_pulse_sequence_text(*pulses);
            return Matrix(run_sequence(to_density(a), seq).matrix());
        },
        py::arg("state"), py::arg("preset") = py::none(), py::arg("params") = std::vector<double>{},
        py::arg("pulses") = py::none(), "Runs a named preparation sequence or pulse-file text on a state.");

    m.def(
        "nmr_readout",
        [](const py::array& a, std::size_t k, double reference) {
            const auto rec = readout_populations(to_density(a), k);
            py::dict d;
            d["populations"] = rec.populations;
            std::vector<double> lines = rec.lines;
            for (auto& x : lines) x /= reference;
            d["lines"] = lines;
            d["signal"] = rec.signal / reference;
            return d;
        },
        py::arg("rho"), py::arg("k"), py::arg("reference") = 1.0);
}
