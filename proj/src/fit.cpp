#include "qcomp/fit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace qcomp {

CosineFit fit_cosine(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_cosine: x and y differ in length");
    if (x.size() < 4) throw std::invalid_argument("fit_cosine: need at least 4 samples");
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        design(i, 0) = std::cos(xi);
        design(i, 1) = std::sin(xi);
        design(i, 2) = 1.0;
        rhs(i) = y[static_cast<std::size_t>(i)];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < 3) throw std::invalid_argument("fit_cosine: samples do not determine a cosine (rank deficient)");
    const Eigen::Vector3d coef = qr.solve(rhs);

    CosineFit fit;
    fit.baseline = coef(2);
    fit.amplitude = std::hypot(coef(0), coef(1));
    const double scale = std::max(1.0, std::abs(fit.baseline));
    if (fit.amplitude <= 1e-12 * scale) {
        fit.amplitude = 0.0;
    } else {
        fit.x0 = std::atan2(coef(1), coef(0));
    }
    fit.rms_residual = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
    return fit;
}

double fit_circle_radius(const std::vector<std::pair<double, double>>& points) {
    if (points.empty()) throw std::invalid_argument("fit_circle_radius: no points");
    double sum = 0.0;
    for (const auto& [px, py] : points) sum += px * px + py * py;
    return std::sqrt(sum / static_cast<double>(points.size()));
}

}  // namespace qcomp
