#pragma once

#include <cstddef>
#include <vector>

namespace bgas {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares y ~ intercept + slope * x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Slope of log|y| against log(x); points with y == 0 or x <= 0 are skipped.
LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct PolyFit {
    std::vector<double> coeffs;      // c0 + c1 x + ... + cp x^p
    std::vector<double> residuals;   // y_i - fit(x_i)
    double condition = 0.0;          // design-matrix condition estimate
};

// Least-squares polynomial fit of given degree. Throws ErrorKind::solver when
// the design matrix condition exceeds max_condition (sample range too narrow).
PolyFit fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree,
                       double max_condition = 1e12);

double eval_polynomial(const std::vector<double>& coeffs, double x);

}  // namespace bgas
