// One pass/fail line per acceptance criterion; exit status 1 if any fails.

#include "qcomp/experiments.hpp"
#include "qcomp/families.hpp"
#include "qcomp/interferometer.hpp"
#include "qcomp/measures.hpp"
#include "qcomp/nmr.hpp"
#include "qcomp/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace qcomp;

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

class Runner {
public:
    void run(const std::string& name, double time_limit, const std::function<Outcome()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass;
        std::string timing = fmt("time=%.3fs", secs);
        if (time_limit > 0) {
            timing += fmt(" (limit %gs)", time_limit);
            if (secs > time_limit) pass = false;
        }
        std::printf("%s  %-34s %s %s\n", pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), timing.c_str());
        std::fflush(stdout);
        failures_ += pass ? 0 : 1;
    }
    int failures() const { return failures_; }

private:
    int failures_ = 0;
};

// Tracks the largest deviation seen against a tolerance.
struct MaxErr {
    double value = 0.0;
    void add(double err) { value = std::max(value, std::isfinite(err) ? err : INFINITY); }
    void add(double got, double want) { add(std::abs(got - want)); }
};

std::vector<double> theta_points() {
    std::vector<double> t;
    for (int m = 0; m <= 8; ++m) t.push_back(-kPi / 4 + m * kPi / 8);
    return t;
}

std::vector<Complex> draw_coefficients(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> a(n);
    double norm2 = 0.0;
    for (auto& c : a) {
        c = Complex(g(rng), g(rng));
        norm2 += std::norm(c);
    }
    for (auto& c : a) c /= std::sqrt(norm2);
    return a;
}

Outcome table_one() {
    MaxErr err;
    for (double t1 : theta_points()) {
        const double t2 = kPi / 2 - t1;
        const PureState psi = psi_family_state(t1, t2);
        const double hs = (t1 + t2) / 2, hd = (t1 - t2) / 2;
        const double c = std::abs(std::sin(hd));
        err.add(concurrence(psi), c);
        err.add(two_particle_visibility(psi, TransducerConfig::symmetric()), c);
        const double v[2] = {std::abs(std::cos(hd)), std::abs(std::sin(hs) * std::cos(hd))};
        const double p[2] = {0.0, std::abs(std::cos(hs) * std::cos(hd))};
        const double d[2] = {c, std::sqrt(1 - sq(std::sin(hs) * std::cos(hd)))};
        for (std::size_t k = 0; k < 2; ++k) {
            const auto s = single_particle_character(psi, k);
            err.add(s.visibility, v[k]);
            err.add(s.predictability, p[k]);
            err.add(s.character, std::abs(std::cos(hd)));
            err.add(distinguishability(psi, k).D, d[k]);
        }
    }
    return {err.value <= 1e-10, fmt("9 points, max_err=%.2e", err.value) + " tol=1e-10"};
}

Outcome complex_example() {
    const PureState psi = complex_example_state();
    const double c = concurrence(psi);
    const double v12 = two_particle_visibility(psi, TransducerConfig::symmetric());
    const double vmax = maximize_v12(psi).value;
    const bool pass = std::abs(c - 0.2110) <= 5e-4 && std::abs(v12 - 0.1627) <= 5e-4 && std::abs(vmax - 0.2110) <= 1e-4;
    return {pass, fmt("C=%.6f", c) + fmt(" V12sym=%.6f", v12) + fmt(" V12max=%.6f", vmax) +
                      " (ref 0.2110/0.1627, tol 5e-4/5e-4/1e-4)"};
}

Outcome identity_suites() {
    MaxErr two, three, pivot;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const PureState psi = random_pure_state(2, seed);
        const double c = concurrence(psi);
        for (std::size_t k = 0; k < 2; ++k) {
            const auto s = single_particle_character(psi, k);
            const double d = distinguishability(psi, k).D;
            two.add(sq(c) + sq(s.visibility) + sq(s.predictability), 1.0);
            two.add(sq(d) + sq(s.visibility), 1.0);
            two.add(sq(d), sq(s.predictability) + sq(c));
        }
    }
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const PureState psi = random_pure_state(3, 100000 + seed);
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t k = 0; k < 3; ++k) {
            const auto t = tangle_profile(psi, k);
            const double tau3 = t.three_tangle.value();
            three.add(tau3 + t.pairwise_tangle + sq(single_particle_character(psi, k).character), 1.0);
            lo = std::min(lo, tau3);
            hi = std::max(hi, tau3);
        }
        pivot.add(hi - lo);
    }
    const bool pass = two.value <= 1e-10 && three.value <= 1e-9 && pivot.value <= 1e-9;
    return {pass, fmt("2q max_err=%.2e (tol 1e-10)", two.value) + fmt(", 3q max_err=%.2e", three.value) +
                      fmt(", pivot spread=%.2e (tol 1e-9)", pivot.value)};
}

Outcome inequality_suites() {
    double worst_mixed = -INFINITY;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const DensityMatrix rho = random_mixed_state(2, seed, 1 + seed % 3);
        const double c = concurrence(rho);
        for (std::size_t k = 0; k < 2; ++k) {
            worst_mixed = std::max(worst_mixed, sq(c) + sq(visibility(rho, k)) + sq(predictability(rho, k)));
        }
    }
    std::mt19937_64 rng(9001);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
    double worst_config = -INFINITY;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const PureState psi = random_pure_state(2, 50000 + i);
        TransducerConfig cfg;
        for (auto& q : cfg.qubits) {
            q.alpha = angle(rng) / 2;
            q.xi = angle(rng);
        }
        if (i % 2) {
            for (std::size_t k = 0; k < 2; ++k) cfg.detection[k] = Matrix2(random_unitary(2, 70000 + 2 * i + k).matrix());
        }
        const double v12 = two_particle_visibility(psi, cfg);
        for (std::size_t k = 0; k < 2; ++k) {
            worst_config = std::max(worst_config, sq(fringe_visibility(psi, cfg, k)) + sq(v12));
        }
    }
    const bool pass = worst_mixed <= 1 + 1e-9 && worst_config <= 1 + 1e-9;
    return {pass, fmt("max C^2+Vk^2+Pk^2=%.12f", worst_mixed) + fmt(", max Vk^2+V12^2=%.12f (bound 1+1e-9)", worst_config)};
}

Outcome table_two() {
    std::mt19937_64 rng(31337);
    MaxErr err;
    for (int draw = 0; draw < 20; ++draw) {
        std::vector<PureState> factors;
        for (int q = 0; q < 3; ++q) {
            const auto a = draw_coefficients(2, rng);
            Vector v(2);
            v << a[0], a[1];
            factors.emplace_back(1, v);
        }
        const auto b = draw_coefficients(2, rng);
        const auto w = draw_coefficients(3, rng);
        const auto g = draw_coefficients(2, rng);
        struct Row {
            FamilyKind kind;
            PureState state;
            std::vector<Complex> coeff;
        };
        const Row rows[] = {{FamilyKind::Product, product_state(factors), {}},
                            {FamilyKind::Bipartite, bipartite_family_state(b[0], b[1]), b},
                            {FamilyKind::W, w_state(w), w},
                            {FamilyKind::GHZ, ghz_state(3, g[0], g[1]), g}};
        for (const auto& row : rows) {
            for (std::size_t k = 0; k < 3; ++k) {
                const auto pred = family_prediction(row.kind, row.coeff, 3, k);
                const auto t = tangle_profile(row.state, k);
                err.add(t.three_tangle.value(), pred.n_tangle);
                err.add(t.pairwise_tangle, pred.pairwise_tangle);
                err.add(sq(single_particle_character(row.state, k).character), pred.character_sq);
            }
        }
    }
    return {err.value <= 1e-9, fmt("4 rows x 20 draws, max_err=%.2e tol=1e-9", err.value)};
}

Outcome n_qubit_families() {
    std::mt19937_64 rng(4242);
    MaxErr closed, identity, sums;
    for (std::size_t n = 3; n <= 6; ++n) {
        for (const FamilyKind kind : {FamilyKind::GHZ, FamilyKind::W}) {
            const auto coeff = draw_coefficients(kind == FamilyKind::GHZ ? 2 : n, rng);
            double total = 0.0;
            for (const auto& c : check_family(kind, coeff, n)) {
                closed.add(c.measured_pairwise_tangle, c.predicted.pairwise_tangle);
                closed.add(c.measured_character_sq, c.predicted.character_sq);
                identity.add(c.measured_bipartite_sq + c.measured_character_sq, 1.0);
                total += c.measured_bipartite_sq + c.measured_character_sq;
            }
            sums.add(total, static_cast<double>(n));
        }
    }
    const bool pass = closed.value <= 1e-9 && identity.value <= 1e-9 && sums.value <= 1e-8;
    return {pass, fmt("closed-form err=%.2e", closed.value) + fmt(", C^2+S^2 err=%.2e (tol 1e-9)", identity.value) +
                      fmt(", sum err=%.2e (tol 1e-8)", sums.value)};
}

Outcome nmr_end_to_end() {
    const SpinSystem system;
    const DensityMatrix rho00 = pseudo_pure_prep(system);
    double off = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) off = std::max(off, std::abs(rho00(i, j)));
    const auto pp = pure_part(rho00);
    const double pp_err = pp.residual / pp.epsilon;
    const double pp_overlap = overlap(pp.state, PureState::basis(2, 0));

    double worst_fid = 1.0;
    const DensityMatrix ket00 = DensityMatrix::from_pure(PureState::basis(2, 0));
    auto check_preset = [&](const std::string& name, const std::vector<double>& params) {
        const PulseSequence seq = preset_sequence(name, params);
        const PureState target = preset_target(name, params);
        worst_fid = std::min(worst_fid, fidelity(target, run_sequence(ket00, seq)));
        worst_fid = std::min(worst_fid, overlap(target, pure_part(run_sequence(rho00, seq)).state) *
                                            overlap(target, pure_part(run_sequence(rho00, seq)).state));
    };
    check_preset("phi", {});
    check_preset("psi", {});
    for (double t = 0.0; t <= kPi + 1e-12; t += kPi / 8) {
        check_preset("phi-theta", {t});
        check_preset("psi-theta", {t});
    }
    for (double t1 : theta_points()) {
        check_preset("psi2", {t1, kPi / 2 - t1});
        check_preset("psi2", {kPi / 2 - t1, t1});
    }

    double transducer_dev = 0.0;
    for (int i = 0; i < 33; ++i) {
        const double phi = 2 * kPi * i / 32;
        const Matrix pulses = sequence_unitary(transducer_sequence(0, phi), 1).matrix();
        const Matrix direct = transducer(TransducerSetting{kPi / 2, kPi / 2, phi}).matrix();
        Eigen::Index r = 0, c = 0;
        direct.cwiseAbs().maxCoeff(&r, &c);
        const Complex ph = pulses(r, c) / direct(r, c);
        transducer_dev = std::max(transducer_dev, (pulses - (ph / std::abs(ph)) * direct).cwiseAbs().maxCoeff());
    }

    MaxErr measured;
    for (double t1 : theta_points()) {
        const double t2 = kPi / 2 - t1;
        const PureState target = psi_family_state(t1, t2);
        const DensityMatrix prepared = run_sequence(rho00, preset_sequence("psi2", {t1, t2}));
        for (std::size_t k = 0; k < 2; ++k) {
            measured.add(measure_predictability(prepared, k, pp.epsilon), predictability(target, k));
            const auto dist = distinguishability(target, k);
            const BlochVector axis = dist.axis.value_or(BlochVector{0, 0, 1});
            measured.add(measure_distinguishability(prepared, k, axis, pp.epsilon), dist.D);
        }
    }

    const bool pass = off < 1e-12 && pp_err <= 1e-9 && std::abs(pp_overlap - 1.0) <= 1e-12 && worst_fid >= 1 - 1e-9 &&
                      transducer_dev <= 1e-10 && measured.value <= 1e-9;
    return {pass, fmt("offdiag=%.1e", off) + fmt(" pp_resid/eps=%.1e", pp_err) + fmt(" min_fid=1-%.1e", 1 - worst_fid) +
                      fmt(" transducer_dev=%.1e", transducer_dev) + fmt(" P/D err=%.1e", measured.value)};
}

Outcome circle_fit() {
    const ThetaGridResult clean = run_theta_grid(ThetaGridSpec{});
    double clean_err = 0.0;
    for (double r : {clean.radius_v12_s[0], clean.radius_v12_s[1], clean.radius_d_v[0], clean.radius_d_v[1]}) {
        clean_err = std::max(clean_err, std::abs(r - 1.0));
    }
    std::array<double, 4> mean{};
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        ThetaGridSpec spec;
        spec.noise = 0.03;
        spec.seed = static_cast<std::uint64_t>(s + 1);
        const auto res = run_theta_grid(spec);
        mean[0] += res.radius_v12_s[0] / seeds;
        mean[1] += res.radius_v12_s[1] / seeds;
        mean[2] += res.radius_d_v[0] / seeds;
        mean[3] += res.radius_d_v[1] / seeds;
    }
    bool in_range = true;
    for (double m : mean) in_range = in_range && m >= 0.95 && m <= 1.02;
    return {clean_err <= 1e-9 && in_range,
            fmt("noiseless |r-1|=%.1e (tol 1e-9); sigma=0.03 x 50 seeds mean r = ", clean_err) + fmt("%.4f", mean[0]) +
                fmt("/%.4f", mean[1]) + fmt("/%.4f", mean[2]) + fmt("/%.4f in [0.95, 1.02]", mean[3])};
}

Outcome concurrence_cross_check() {
    const ThetaGridResult res = run_theta_grid(ThetaGridSpec{});
    MaxErr v12, from_d;
    for (const auto& row : res.rows) {
        const double c = std::abs(std::sin(row.theta1 - kPi / 4));
        v12.add(row.V12, c);
        from_d.add(row.C_from_D[0], c);
        from_d.add(row.C_from_D[1], c);
    }
    return {v12.value <= 1e-9 && from_d.value <= 1e-9 && res.rows.size() == 9,
            fmt("V12 err=%.1e", v12.value) + fmt(", sqrt(D^2-P^2) err=%.1e (tol 1e-9)", from_d.value)};
}

}  // namespace

int main() {
    Runner r;
    r.run("table-i-reproduction", 1.0, table_one);
    r.run("complex-example", 5.0, complex_example);
    r.run("identity-suites", 30.0, identity_suites);
    r.run("inequality-suites", 30.0, inequality_suites);
    r.run("table-ii-reproduction", 0.0, table_two);
    r.run("n-qubit-generalization", 0.0, n_qubit_families);
    r.run("nmr-end-to-end", 10.0, nmr_end_to_end);
    r.run("circle-fit", 0.0, circle_fit);
    r.run("concurrence-cross-check", 0.0, concurrence_cross_check);
    std::printf("%d criteria failed\n", r.failures());
    return r.failures() == 0 ? 0 : 1;
}
