#include "qcomp/experiments.hpp"

#include "qcomp/families.hpp"
#include "qcomp/fit.hpp"
#include "qcomp/interferometer.hpp"
#include "qcomp/measures.hpp"

#include <cmath>
#include <limits>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace qcomp {

namespace {

constexpr double kResolution = 64 * std::numeric_limits<double>::epsilon();

// Distinct, reproducible seeds for every noisy sub-measurement.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t channel) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index * 16 + channel + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CosineFit fit_series(const FringeScan& scan, int channel) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& pt : scan.points) {
        x.push_back(pt.phase);
        const auto& p = pt.probabilities;
        y.push_back(channel == 0 ? p.qubit1[0] : channel == 1 ? p.qubit2[0] : p.corrected[0]);
    }
    return fit_cosine(x, y);
}

}  // namespace

std::vector<double> theta_grid_points(const ThetaGridSpec& spec) {
    if (!std::isfinite(spec.start) || !std::isfinite(spec.stop) || !std::isfinite(spec.step) || !(spec.step > 0.0)) {
        throw std::invalid_argument("theta grid: start, stop and a positive step are required");
    }
    std::vector<double> out;
    for (std::size_t m = 0;; ++m) {
        const double t = spec.start + static_cast<double>(m) * spec.step;
        if (t > spec.stop + 1e-9) break;
        out.push_back(t);
        if (out.size() > 100000) throw std::invalid_argument("theta grid: too many points");
    }
    if (out.empty()) throw std::invalid_argument("theta grid: empty grid (start > stop)");
    return out;
}

ThetaGridResult run_theta_grid(const ThetaGridSpec& spec) {
    if (!(spec.noise >= 0.0)) throw std::invalid_argument("theta grid: noise must be >= 0");
    const auto thetas = theta_grid_points(spec);
    const DensityMatrix rho00 = pseudo_pure_prep(spec.system);
    const double reference = pure_part(rho00).epsilon;

    ThetaGridResult result;
    std::vector<std::pair<double, double>> circle_vs[2];
    std::vector<std::pair<double, double>> circle_dv[2];
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        ThetaGridRow row;
        row.theta1 = thetas[i];
        row.theta2 = spec.theta_sum - row.theta1;
        const PureState target = psi_family_state(row.theta1, row.theta2);

        // Visibilities: scan phi1 with phi2 fixed, then phi2 with phi1 fixed.
        SweepSpec sweep;
        sweep.steps = spec.fringe_steps;
        sweep.mode = SweepMode::Phase1;
        const FringeScan scan1 = sweep_fringes(target, TransducerConfig::symmetric(), sweep, spec.noise,
                                               derive_seed(spec.seed, i, 0));
        sweep.mode = SweepMode::Phase2;
        const FringeScan scan2 = sweep_fringes(target, TransducerConfig::symmetric(), sweep, spec.noise,
                                               derive_seed(spec.seed, i, 1));
        row.V[0] = fit_series(scan1, 0).visibility();
        row.V[1] = fit_series(scan2, 1).visibility();
        row.V12 = 0.5 * (fit_series(scan1, 2).visibility() + fit_series(scan2, 2).visibility());

        // Predictability and distinguishability from the simulated NMR run.
        const DensityMatrix prepared = run_sequence(rho00, preset_sequence("psi2", {row.theta1, row.theta2}));
        for (std::size_t k = 0; k < 2; ++k) {
            row.P[k] = measure_predictability(prepared, k, reference,
                                              ReadoutNoise{spec.noise, derive_seed(spec.seed, i, 2 + k)});
            const auto axis = distinguishability(target, k).axis.value_or(BlochVector{0.0, 0.0, 1.0});
            row.D[k] = measure_distinguishability(prepared, k, axis, reference,
                                                  ReadoutNoise{spec.noise, derive_seed(spec.seed, i, 4 + k)});
            row.S[k] = std::hypot(row.V[k], row.P[k]);
            // sqrt amplifies rounding near C = 0, so gaps below the readout
            // resolution count as zero.
            const double gap = row.D[k] - row.P[k];
            const double sum = row.D[k] + row.P[k];
            row.C_from_D[k] = gap <= kResolution * sum ? 0.0 : std::sqrt(gap * sum);
            circle_vs[k].emplace_back(row.V12, row.S[k]);
            circle_dv[k].emplace_back(row.D[k], row.V[k]);
        }
        row.C = std::abs(std::sin((row.theta1 - row.theta2) / 2));
        result.rows.push_back(row);
    }
    for (std::size_t k = 0; k < 2; ++k) {
        result.radius_v12_s[k] = fit_circle_radius(circle_vs[k]);
        result.radius_d_v[k] = fit_circle_radius(circle_dv[k]);
    }
    return result;
}

void write_theta_grid_csv(std::ostream& out, const ThetaGridResult& result) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << "theta1,theta2,V1,V2,P1,P2,S1,S2,D1,D2,V12,C,C_from_D1,C_from_D2\n";
    out << std::setprecision(12);
    for (const auto& r : result.rows) {
        out << r.theta1 << ',' << r.theta2 << ',' << r.V[0] << ',' << r.V[1] << ',' << r.P[0] << ',' << r.P[1] << ','
            << r.S[0] << ',' << r.S[1] << ',' << r.D[0] << ',' << r.D[1] << ',' << r.V12 << ',' << r.C << ','
            << r.C_from_D[0] << ',' << r.C_from_D[1] << '\n';
    }
    out << "# circle radius (V12,S1) = " << result.radius_v12_s[0] << '\n';
    out << "# circle radius (V12,S2) = " << result.radius_v12_s[1] << '\n';
    out << "# circle radius (D1,V1) = " << result.radius_d_v[0] << '\n';
    out << "# circle radius (D2,V2) = " << result.radius_d_v[1] << '\n';
    out.flags(flags);
    out.precision(precision);
}

}  // namespace qcomp
