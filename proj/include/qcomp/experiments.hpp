#pragma once

// The theta-grid experiment on the psi(theta1, theta2) family: fringe sweeps
// for the visibilities, NMR readout for predictability and
// distinguishability, and circle fits of (V12, S_k) and (D_k, V_k).

#include "qcomp/nmr.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <vector>

namespace qcomp {

struct ThetaGridSpec {
    double theta_sum = std::numbers::pi / 2;  // theta1 + theta2
    double start = -std::numbers::pi / 4;
    double stop = 3 * std::numbers::pi / 4;
    double step = std::numbers::pi / 8;
    std::size_t fringe_steps = 33;
    double noise = 0.0;  // sigma on joint probabilities and line integrals
    std::uint64_t seed = 0;
    // Results are in units of the pseudo-pure epsilon and do not depend on
    // the polarization scale; a large one keeps full double precision.
    SpinSystem system{2, {3.98, 1.0}, 214.95, 0.5};
};

struct ThetaGridRow {
    double theta1 = 0.0;
    double theta2 = 0.0;
    std::array<double, 2> V{};
    std::array<double, 2> P{};
    std::array<double, 2> S{};
    std::array<double, 2> D{};
    double V12 = 0.0;
    double C = 0.0;                       // |sin((theta1 - theta2)/2)|
    std::array<double, 2> C_from_D{};     // sqrt(D_k^2 - P_k^2)
};

struct ThetaGridResult {
    std::vector<ThetaGridRow> rows;
    std::array<double, 2> radius_v12_s{};  // circle fit of (V12, S_k)
    std::array<double, 2> radius_d_v{};    // circle fit of (D_k, V_k)
};

/// theta1 values start, start+step, ... up to stop (inclusive within 1e-9).
std::vector<double> theta_grid_points(const ThetaGridSpec& spec);

/// Throws std::invalid_argument on an empty grid or invalid parameters.
ThetaGridResult run_theta_grid(const ThetaGridSpec& spec);

/// Header row then one row per grid point; circle radii as trailing comments.
void write_theta_grid_csv(std::ostream& out, const ThetaGridResult& result);

}  // namespace qcomp
