#pragma once

#include <boost/rational.hpp>

namespace bgas {

using Rational = boost::rational<long long>;

// Taylor coefficients of the square-root factors of the excitation-space
// expansion, kept exact:
//   c_0^(l) = 1,   c_j^(l) = (l - 1/2)(l + 1/2) ... (l + j - 3/2) / j!
//   d_{j,nu} = sum_{l=0..nu} c_l^(0) c_{nu-l}^(0) c_{j-nu}^(l)
// so that sqrt(1 - x) = sum_j c_j^(0) x^j and
// sqrt((1 - lam (n-1))(1 - lam n)) = sum_j lam^j sum_nu d_{j,nu} (n-1)^nu.
Rational c_coeff(int j, int ell);
Rational d_coeff(int j, int nu);

inline double c_coeff_d(int j, int ell = 0) { return boost::rational_cast<double>(c_coeff(j, ell)); }
inline double d_coeff_d(int j, int nu) { return boost::rational_cast<double>(d_coeff(j, nu)); }

}  // namespace bgas
