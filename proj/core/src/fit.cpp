#include "bgas/fit.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "bgas/errors.hpp"

namespace bgas {

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorKind::config, "line fit needs at least two points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw Error(ErrorKind::solver, "degenerate abscissae in line fit");
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    f.points = x.size();
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.rms_residual = std::sqrt(ss / n);
    return f;
}

LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0.0 && y[i] != 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(std::abs(y[i])));
        }
    }
    return fit_line(lx, ly);
}

PolyFit fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree,
                       double max_condition) {
    if (degree < 0) throw Error(ErrorKind::config, "polynomial degree must be nonnegative");
    const std::size_t n = x.size();
    if (y.size() != n || n < static_cast<std::size_t>(degree + 1))
        throw Error(ErrorKind::config, "not enough points for the requested polynomial degree");

    Eigen::MatrixXd A(n, degree + 1);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p = 1.0;
        for (int j = 0; j <= degree; ++j) {
            A(i, j) = p;
            p *= x[i];
        }
        b(i) = y[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    if (!(cond < max_condition))
        throw Error(ErrorKind::solver,
                    "ill-conditioned fit design matrix (condition estimate " + std::to_string(cond) +
                        "); widen the sample range");
    Eigen::VectorXd c = svd.solve(b);

    PolyFit f;
    f.condition = cond;
    f.coeffs.assign(c.data(), c.data() + c.size());
    f.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.residuals[i] = y[i] - eval_polynomial(f.coeffs, x[i]);
    return f;
}

double eval_polynomial(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace bgas
