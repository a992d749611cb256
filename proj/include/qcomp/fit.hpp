#pragma once

// Least-squares fits used on fringe and grid data.

#include <optional>
#include <utility>
#include <vector>

namespace qcomp {

/// y = A cos(x - x0) + B.
struct CosineFit {
    double amplitude = 0.0;      // A >= 0
    std::optional<double> x0;    // empty when A == 0
    double baseline = 0.0;       // B
    double rms_residual = 0.0;

    /// (p_max - p_min) / (p_max + p_min) = A / B; 0 when B <= 0.
    double visibility() const { return baseline > 0.0 ? amplitude / baseline : 0.0; }
};

/// Linear least squares on [cos x, sin x, 1]. Throws std::invalid_argument on
/// fewer than 4 samples, mismatched lengths or a rank-deficient design.
CosineFit fit_cosine(const std::vector<double>& x, const std::vector<double>& y);

/// Radius of the origin-centred circle x^2 + y^2 = r^2 that minimizes
/// sum (x^2 + y^2 - r^2)^2, i.e. r = sqrt(mean(x^2 + y^2)).
double fit_circle_radius(const std::vector<std::pair<double, double>>& points);

}  // namespace qcomp
