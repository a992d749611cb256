#include "qcomp/cli.hpp"

#include "qcomp/experiments.hpp"
#include "qcomp/families.hpp"
#include "qcomp/fit.hpp"
#include "qcomp/interferometer.hpp"
#include "qcomp/measures.hpp"
#include "qcomp/nmr.hpp"
#include "qcomp/pulse_format.hpp"
#include "qcomp/random.hpp"
#include "qcomp/relations.hpp"
#include "qcomp/state_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qcomp {

namespace {

constexpr double kPi = std::numbers::pi;

// Relation failures surface as exit code 1.
struct RelationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SourceOptions {
    std::string state_file;
    std::string preset;
    std::vector<double> params;
    bool normalize = false;
};

struct CommonOptions {
    SourceOptions source;
    std::uint64_t seed = 0;
    double noise = 0.0;
    std::optional<double> tol;
    std::string out;
};

std::size_t as_count(double v, const std::string& what) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 20.0) {
        throw std::invalid_argument(what + " must be an integer in [1, 20]");
    }
    return static_cast<std::size_t>(v);
}

void need_params(const std::string& name, const std::vector<double>& p, std::size_t lo, std::size_t hi) {
    if (p.size() < lo || p.size() > hi) {
        std::ostringstream msg;
        msg << "preset '" << name << "' takes ";
        if (lo == hi) {
            msg << lo;
        } else {
            msg << lo << " to " << hi;
        }
        msg << " parameter(s), got " << p.size();
        throw std::invalid_argument(msg.str());
    }
    for (double v : p) {
        if (!std::isfinite(v)) throw std::invalid_argument("preset parameters must be finite");
    }
}

std::vector<Complex> real_coefficients(const std::vector<double>& values, bool normalize, const std::string& who) {
    std::vector<Complex> out(values.begin(), values.end());
    double norm2 = 0.0;
    for (const auto& c : out) norm2 += std::norm(c);
    if (normalize) {
        if (!(norm2 > 0.0)) throw std::invalid_argument(who + ": coefficients are all zero");
        for (auto& c : out) c /= std::sqrt(norm2);
    } else if (std::abs(norm2 - 1.0) > kConstructionTol) {
        throw std::invalid_argument(who + ": coefficients are not normalized (pass --normalize to rescale)");
    }
    return out;
}

StateSource load_source(const SourceOptions& src, std::uint64_t seed) {
    const bool has_file = !src.state_file.empty();
    const bool has_preset = !src.preset.empty();
    if (has_file == has_preset) throw std::invalid_argument("give exactly one of --state or --preset");
    if (has_file) {
        if (!src.params.empty()) throw std::invalid_argument("--params applies to --preset only");
        return load_state_file(src.state_file, src.normalize);
    }
    return make_preset_state(src.preset, src.params, seed, src.normalize);
}

PureState require_pure(const StateSource& s, std::size_t n_qubits, const std::string& command) {
    const auto* p = std::get_if<PureState>(&s);
    if (!p) throw std::invalid_argument(command + " needs a pure state");
    if (n_qubits != 0 && p->n_qubits() != n_qubits) {
        throw std::invalid_argument(command + " needs a " + std::to_string(n_qubits) + "-qubit state");
    }
    return *p;
}

// Writes to --out when given, otherwise to `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot write output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }
    bool to_file() const { return file_.is_open(); }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void add_source_options(CLI::App* cmd, SourceOptions& src) {
    auto* state = cmd->add_option("--state", src.state_file, "JSON state file");
    auto* preset = cmd->add_option("--preset", src.preset, "Named state preset");
    state->excludes(preset);
    preset->excludes(state);
    cmd->add_option("--params", src.params, "Preset parameters (radians, counts, coefficients)")->expected(0, -1);
    cmd->add_flag("--normalize", src.normalize, "Rescale amplitudes/coefficients to unit norm");
}

void add_common(CLI::App* cmd, CommonOptions& o) {
    add_source_options(cmd, o.source);
    cmd->add_option("--seed", o.seed, "Seed for random presets and noise");
    cmd->add_option("--noise", o.noise, "Gaussian noise sigma")->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol", o.tol, "Tolerance override (all relation classes)")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "Output file");
}

// ---- verify ----

int cmd_verify(const CommonOptions& o, std::ostream& out) {
    const StateSource source = load_source(o.source, o.seed);
    const Tolerances tol = o.tol ? Tolerances::uniform(*o.tol) : Tolerances{};
    const ComplementarityReport report =
        std::holds_alternative<PureState>(source) ? verify_relations(std::get<PureState>(source), tol)
                                                  : verify_relations(std::get<DensityMatrix>(source), tol);
    write_report_table(out, report);
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw std::invalid_argument("cannot write output file '" + o.out + "'");
        write_report_jsonl(f, report);
    }
    return report.all_passed() ? kExitOk : kExitRelationFailure;
}

// ---- fringes ----

struct FringeOptions {
    std::string mode = "joint";
    std::size_t steps = 33;
    double fixed_phase = kPi / 2;
    std::array<double, 2> alpha{kPi / 2, kPi / 2};
    std::array<double, 2> xi{kPi / 2, kPi / 2};
    bool fit = false;
};

int cmd_fringes(const CommonOptions& o, const FringeOptions& f, std::ostream& out) {
    const PureState state = require_pure(load_source(o.source, o.seed), 2, "fringes");
    TransducerConfig config = TransducerConfig::symmetric();
    for (std::size_t k = 0; k < 2; ++k) {
        config.qubits[k].alpha = f.alpha[k];
        config.qubits[k].xi = f.xi[k];
    }
    SweepSpec sweep;
    sweep.mode = parse_sweep_mode(f.mode);
    sweep.steps = f.steps;
    sweep.fixed_phase = f.fixed_phase;
    const FringeScan scan = sweep_fringes(state, config, sweep, o.noise, o.seed);
    Sink sink(o.out, out);
    write_fringe_csv(sink.get(), scan);
    if (f.fit) {
        std::vector<double> x;
        std::vector<double> x_joint;
        std::vector<double> p1, p2, pbar;
        for (const auto& pt : scan.points) {
            x.push_back(pt.phase);
            // In a joint sweep pbar oscillates in phi1 + phi2 = 2 x.
            x_joint.push_back(sweep.mode == SweepMode::Joint ? 2.0 * pt.phase : pt.phase);
            p1.push_back(pt.probabilities.qubit1[0]);
            p2.push_back(pt.probabilities.qubit2[0]);
            pbar.push_back(pt.probabilities.corrected[0]);
        }
        auto& s = sink.get();
        s << std::setprecision(10);
        if (sweep.mode != SweepMode::Phase2) s << "# fit V1 = " << fit_cosine(x, p1).visibility() << '\n';
        if (sweep.mode != SweepMode::Phase1) s << "# fit V2 = " << fit_cosine(x, p2).visibility() << '\n';
        s << "# fit V12 = " << fit_cosine(x_joint, pbar).visibility() << '\n';
    }
    return kExitOk;
}

// ---- theta-grid ----

int cmd_theta_grid(const CommonOptions& o, ThetaGridSpec spec, std::ostream& out) {
    spec.noise = o.noise;
    spec.seed = o.seed;
    const ThetaGridResult result = run_theta_grid(spec);
    Sink sink(o.out, out);
    write_theta_grid_csv(sink.get(), result);
    if (sink.to_file()) {
        out << std::setprecision(10) << "circle radius (V12,S1) = " << result.radius_v12_s[0]
            << "\ncircle radius (V12,S2) = " << result.radius_v12_s[1]
            << "\ncircle radius (D1,V1) = " << result.radius_d_v[0] << "\ncircle radius (D2,V2) = " << result.radius_d_v[1]
            << '\n';
    }
    if (o.noise == 0.0) {
        // Noiseless runs must reproduce the identities.
        const double tol = o.tol.value_or(1e-9);
        for (const auto& r : result.rows) {
            for (std::size_t k = 0; k < 2; ++k) {
                if (std::abs(r.C_from_D[k] - r.C) > tol || std::abs(r.V12 - r.C) > tol) {
                    throw RelationFailure("theta grid: concurrence estimates disagree at theta1 = " +
                                          std::to_string(r.theta1));
                }
            }
        }
    }
    return kExitOk;
}

// ---- nmr ----

struct NmrOptions {
    std::string sequence;
    std::vector<double> sequence_params;
    std::string pulses;
    std::vector<double> weights{3.98, 1.0};
    double polarization = 1e-5;
    bool literal_flip = false;
    bool distinguishability = false;
};

int cmd_nmr(const CommonOptions& o, const NmrOptions& n, std::ostream& out) {
    if (!n.sequence.empty() && !n.pulses.empty()) throw std::invalid_argument("give at most one of --sequence or --pulses");
    if (n.sequence.empty() && !n.sequence_params.empty()) throw std::invalid_argument("--seq-params needs --sequence");
    PulseSequence seq{"none", {}};
    if (!n.sequence.empty()) seq = preset_sequence(n.sequence, n.sequence_params);
    if (!n.pulses.empty()) seq = load_pulse_file(n.pulses);

    DensityMatrix initial = DensityMatrix::maximally_mixed(1);
    double reference = 1.0;
    std::string origin;
    const bool has_source = !o.source.state_file.empty() || !o.source.preset.empty();
    if (has_source) {
        const StateSource src = load_source(o.source, o.seed);
        initial = std::holds_alternative<PureState>(src) ? DensityMatrix::from_pure(std::get<PureState>(src))
                                                         : std::get<DensityMatrix>(src);
        origin = !o.source.state_file.empty() ? o.source.state_file : o.source.preset;
    } else {
        if (!o.source.params.empty()) throw std::invalid_argument("--params applies to --preset only");
        SpinSystem system;
        system.weights = n.weights;
        system.polarization = n.polarization;
        initial = pseudo_pure_prep(system, n.literal_flip ? PseudoPureFlip::Literal : PseudoPureFlip::Calibrated);
        reference = pure_part(initial).epsilon;
        origin = "pseudo-pure";
    }
    const DensityMatrix final_state = run_sequence(initial, seq);

    Sink sink(o.out, out);
    auto& s = sink.get();
    s << std::setprecision(12);
    s << "# initial " << origin << ", sequence " << seq.label << " (" << seq.events.size() << " events)\n";
    s << "# line integrals in units of " << (reference == 1.0 ? "the input state" : "the pseudo-pure epsilon")
      << " (reference " << reference << ")\n";
    if (!n.sequence.empty()) {
        try {
            const PureState target = preset_target(n.sequence, n.sequence_params);
            const double fid = reference == 1.0 ? fidelity(target, final_state)
                                                : fidelity(target, DensityMatrix::from_pure(pure_part(final_state).state));
            s << "# fidelity with preset target = " << fid << '\n';
        } catch (const std::invalid_argument&) {
            // presets without a target state
        }
    }
    const std::size_t nq = final_state.n_qubits();
    s << "index,basis,population\n";
    const DensityMatrix dephased = gradient_pulse(final_state);
    for (std::size_t i = 0; i < dephased.dimension(); ++i) {
        std::string bits;
        for (std::size_t q = 0; q < nq; ++q) bits += ((i >> (nq - 1 - q)) & 1U) ? '1' : '0';
        s << i << ',' << bits << ',' << dephased(i, i).real() << '\n';
    }
    std::vector<ReadoutRecord> records;
    for (std::size_t k = 0; k < nq; ++k) {
        records.push_back(readout_populations(final_state, k, ReadoutNoise{o.noise, o.seed * 131 + k}));
    }
    s << "qubit,spectator,line_integral\n";
    for (const auto& rec : records) {
        for (std::size_t x = 0; x < rec.lines.size(); ++x) {
            s << rec.qubit + 1 << ',' << x << ',' << rec.lines[x] / reference << '\n';
        }
    }
    const bool want_d = n.distinguishability;
    if (want_d && nq != 2) throw std::invalid_argument("--distinguishability needs a two-qubit state");
    s << "qubit,signal,predictability" << (want_d ? ",distinguishability" : "") << '\n';
    std::optional<PureState> pure;
    if (want_d) pure = pure_part(final_state).state;
    for (const auto& rec : records) {
        const double signal = rec.signal / reference;
        s << rec.qubit + 1 << ',' << signal << ',' << std::abs(signal);
        if (want_d) {
            const auto axis = distinguishability(*pure, rec.qubit).axis.value_or(BlochVector{0.0, 0.0, 1.0});
            s << ','
              << measure_distinguishability(final_state, rec.qubit, axis, reference,
                                            ReadoutNoise{o.noise, o.seed * 131 + 17 + rec.qubit});
        }
        s << '\n';
    }
    return kExitOk;
}

// ---- max-v12 ----

int cmd_max_v12(const CommonOptions& o, std::ostream& out) {
    const PureState state = require_pure(load_source(o.source, o.seed), 2, "max-v12");
    const double c = concurrence(state);
    const double sym = two_particle_visibility(state, TransducerConfig::symmetric());
    V12Maximum best;
    try {
        best = maximize_v12(state);
    } catch (const std::runtime_error& e) {
        throw RelationFailure(e.what());
    }
    const double tol = o.tol.value_or(1e-6);
    Sink sink(o.out, out);
    auto& s = sink.get();
    s << std::setprecision(12);
    s << "quantity,value\n";
    s << "C," << c << '\n';
    s << "V12_symmetric," << sym << '\n';
    s << "V12_max," << best.value << '\n';
    s << "alpha1," << best.config.qubits[0].alpha << '\n';
    s << "xi1," << best.config.qubits[0].xi << '\n';
    s << "alpha2," << best.config.qubits[1].alpha << '\n';
    s << "xi2," << best.config.qubits[1].xi << '\n';
    s << "residual," << best.value - c << '\n';
    return std::abs(best.value - c) <= tol ? kExitOk : kExitRelationFailure;
}

}  // namespace

StateSource make_preset_state(const std::string& name, const std::vector<double>& p, std::uint64_t seed,
                              bool normalize) {
    if (name == "phi") {
        need_params(name, p, 0, 0);
        return phi_state();
    }
    if (name == "bell" || name == "psi") {
        need_params(name, p, 0, 0);
        return bell_state();
    }
    if (name == "phi-theta") {
        need_params(name, p, 1, 1);
        return phi_theta_state(p[0]);
    }
    if (name == "psi-theta") {
        need_params(name, p, 1, 1);
        return psi_theta_state(p[0]);
    }
    if (name == "psi2") {
        need_params(name, p, 2, 2);
        return psi_family_state(p[0], p[1]);
    }
    if (name == "complex") {
        need_params(name, p, 0, 0);
        return complex_example_state();
    }
    if (name == "ghz") {
        need_params(name, p, 1, 3);
        const std::size_t n = as_count(p[0], "ghz qubit count");
        if (n < 2) throw std::invalid_argument("ghz needs at least two qubits");
        if (p.size() == 2) throw std::invalid_argument("ghz takes n or n a1 a2");
        if (p.size() == 1) return ghz_state(n, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
        const auto c = real_coefficients({p[1], p[2]}, normalize, "ghz");
        return ghz_state(n, c[0], c[1]);
    }
    if (name == "w") {
        need_params(name, p, 1, 21);
        const std::size_t n = as_count(p[0], "w qubit count");
        if (n < 2) throw std::invalid_argument("w needs at least two qubits");
        if (p.size() == 1) return w_state(n);
        if (p.size() != n + 1) throw std::invalid_argument("w takes n followed by n amplitudes");
        return w_state(real_coefficients(std::vector<double>(p.begin() + 1, p.end()), normalize, "w"));
    }
    if (name == "product") {
        need_params(name, p, 1, 41);
        const std::size_t n = as_count(p[0], "product qubit count");
        if (p.size() != 1 && p.size() != 1 + 2 * n) {
            throw std::invalid_argument("product takes n, optionally followed by (polar azimuth) per qubit");
        }
        std::vector<PureState> factors;
        for (std::size_t q = 0; q < n; ++q) {
            factors.push_back(p.size() == 1 ? PureState::basis(1, 0) : qubit_state(p[1 + 2 * q], p[2 + 2 * q]));
        }
        return product_state(factors);
    }
    if (name == "bipartite") {
        need_params(name, p, 0, 2);
        if (p.size() == 1) throw std::invalid_argument("bipartite takes a1 a2");
        if (p.empty()) return bipartite_family_state(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
        const auto c = real_coefficients({p[0], p[1]}, normalize, "bipartite");
        return bipartite_family_state(c[0], c[1]);
    }
    if (name == "random") {
        need_params(name, p, 0, 1);
        return random_pure_state(p.empty() ? 2 : as_count(p[0], "random qubit count"), seed);
    }
    if (name == "random-mixed") {
        need_params(name, p, 0, 2);
        const std::size_t n = p.empty() ? 2 : as_count(p[0], "random-mixed qubit count");
        std::size_t env = n;
        if (p.size() == 2) {
            if (!(p[1] >= 0.0) || p[1] != std::floor(p[1]) || p[1] > 10.0) {
                throw std::invalid_argument("random-mixed environment size must be an integer in [0, 10]");
            }
            env = static_cast<std::size_t>(p[1]);
        }
        return random_mixed_state(n, seed, env);
    }
    throw std::invalid_argument("unknown state preset '" + name + "'");
}

std::vector<std::string> preset_state_names() {
    return {"phi", "bell", "psi", "phi-theta", "psi-theta", "psi2", "complex", "ghz",
            "w", "product", "bipartite", "random", "random-mixed"};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantitative complementarity relations: verification, interferometry and NMR simulation", "qcomp"};
    app.require_subcommand(1);

    CommonOptions verify_opts, fringe_opts, grid_opts, nmr_opts, v12_opts;
    FringeOptions fringe;
    ThetaGridSpec grid;
    NmrOptions nmr;

    auto* verify = app.add_subcommand("verify", "Evaluate every applicable complementarity relation");
    add_common(verify, verify_opts);

    auto* fringes = app.add_subcommand("fringes", "Phase sweep of detection and corrected joint probabilities");
    add_common(fringes, fringe_opts);
    fringes->add_option("--mode", fringe.mode, "joint, phi1 or phi2")->check(CLI::IsMember({"joint", "phi1", "phi2"}));
    fringes->add_option("--steps", fringe.steps, "Phase points over [0, 2pi]")->check(CLI::Range(4, 100000));
    fringes->add_option("--fixed-phase", fringe.fixed_phase, "Phase of the qubit not swept");
    fringes->add_option("--alpha1", fringe.alpha[0], "Beam-splitter flip angle, qubit 1");
    fringes->add_option("--alpha2", fringe.alpha[1], "Beam-splitter flip angle, qubit 2");
    fringes->add_option("--xi1", fringe.xi[0], "Beam-splitter axis phase, qubit 1");
    fringes->add_option("--xi2", fringe.xi[1], "Beam-splitter axis phase, qubit 2");
    fringes->add_flag("--fit", fringe.fit, "Append fitted visibilities as comment lines");

    auto* theta = app.add_subcommand("theta-grid", "Visibility / predictability / distinguishability over theta1");
    add_common(theta, grid_opts);
    theta->add_option("--theta-sum", grid.theta_sum, "theta1 + theta2");
    theta->add_option("--start", grid.start, "First theta1");
    theta->add_option("--stop", grid.stop, "Last theta1");
    theta->add_option("--step", grid.step, "theta1 increment");
    theta->add_option("--polarization", grid.system.polarization, "Thermal polarization scale");
    theta->add_option("--steps", grid.fringe_steps, "Phase points per fringe sweep")->check(CLI::Range(4, 100000));

    auto* nmr_cmd = app.add_subcommand("nmr", "Run a pulse sequence and read out populations and line integrals");
    add_common(nmr_cmd, nmr_opts);
    nmr_cmd->add_option("--sequence", nmr.sequence, "Pulse-sequence preset");
    nmr_cmd->add_option("--seq-params", nmr.sequence_params, "Pulse-sequence preset parameters")->expected(0, -1);
    nmr_cmd->add_option("--pulses", nmr.pulses, "Pulse-sequence file");
    nmr_cmd->add_option("--weights", nmr.weights, "Thermal weights w1 w2")->expected(2);
    nmr_cmd->add_option("--polarization", nmr.polarization, "Thermal polarization scale");
    nmr_cmd->add_flag("--literal-flip", nmr.literal_flip, "Use pi/3 as the first pseudo-pure flip angle");
    nmr_cmd->add_flag("--distinguishability", nmr.distinguishability, "Also run the ancilla-measurement protocol");

    auto* v12 = app.add_subcommand("max-v12", "Maximize the two-particle visibility over beam-splitter settings");
    add_common(v12, v12_opts);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitBadInput;
    }

    try {
        if (*verify) return cmd_verify(verify_opts, out);
        if (*fringes) return cmd_fringes(fringe_opts, fringe, out);
        if (*theta) return cmd_theta_grid(grid_opts, grid, out);
        if (*nmr_cmd) return cmd_nmr(nmr_opts, nmr, out);
        if (*v12) return cmd_max_v12(v12_opts, out);
    } catch (const RelationFailure& e) {
        err << "qcomp: " << e.what() << '\n';
        return kExitRelationFailure;
    } catch (const std::invalid_argument& e) {
        err << "qcomp: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        err << "qcomp: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitBadInput;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace qcomp
