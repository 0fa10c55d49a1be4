#include "bgas/expansion_coeffs.hpp"

#include "bgas/errors.hpp"

namespace bgas {

Rational c_coeff(int j, int ell) {
    if (j < 0 || ell < 0) throw Error(ErrorKind::config, "coefficient indices must be nonnegative");
    if (j == 0) return Rational(1);
    // product of j half-integer factors (ell + i - 1/2), i = 0..j-1, over j!
    Rational acc(1);
    for (int i = 0; i < j; ++i) {
        acc *= Rational(2 * (ell + i) - 1, 2);
        acc /= Rational(i + 1);
    }
    return acc;
}

Rational d_coeff(int j, int nu) {
    if (nu < 0 || j < nu) throw Error(ErrorKind::config, "d_{j,nu} requires j >= nu >= 0");
    Rational acc(0);
    for (int ell = 0; ell <= nu; ++ell) acc += c_coeff(ell, 0) * c_coeff(nu - ell, 0) * c_coeff(j - nu, ell);
    return acc;
}

}  // namespace bgas
