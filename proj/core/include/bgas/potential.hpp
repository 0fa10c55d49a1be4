#pragma once

#include <cmath>
#include <map>
#include <string>

#include "bgas/lattice.hpp"

namespace bgas {

// Interaction described by its Fourier coefficients vhat >= 0 (positive
// type), vhat(-k) = vhat(k). The scale lambda_scale realizes the family
// vhat_L(k) := vhat(k / L).
//
// Two kinds:
//   gaussian   vhat(k) = g * exp(-|k|^2 / (2 s^2))   (unbounded support)
//   tabulated  explicit nonnegative values on a finite symmetric support,
//              plus the k = 0 value; zero outside the support.
struct PotentialSpec {
    enum class Kind { gaussian, tabulated };

    Kind kind = Kind::gaussian;
    int dim = 1;
    double lambda_scale = 1.0;

    // gaussian
    double g = 1.0;  // strength, energy units
    double s = 1.0;  // width, momentum units

    // tabulated
    double v0 = 0.0;                                       // vhat(0)
    std::map<std::array<std::int64_t, 3>, double> entries;  // n -> vhat(2*pi*n), > 0 only

    static PotentialSpec gaussian(int dim, double g, double s, double lambda_scale = 1.0);
    static PotentialSpec tabulated(int dim, double v0,
                                   std::vector<std::pair<Momentum, double>> values,
                                   double lambda_scale = 1.0);

    bool is_gaussian() const { return kind == Kind::gaussian; }

    // JSON schema (External Interfaces):
    //   {"kind":"gaussian","g":..,"s":..,"dim":..,"lambda_scale":..}
    //   {"kind":"tabulated","v0":..,"entries":[{"n":[..],"v":..},..],"dim":..,"lambda_scale":..}
    static PotentialSpec from_json_text(const std::string& text);
    std::string to_json_text() const;

    std::string describe() const;
};

// vhat(k / lambda_scale). Exactly even: depends on k only through n and
// |n|^2. For a scaled tabulated spec the value is zero unless k/lambda_scale
// falls back onto the tabulated grid.
double vhat(const PotentialSpec& spec, const Momentum& k);

// Gaussian evaluated at integer squared norm |n|^2 (isotropy fast path).
double vhat_gaussian_norm2(const PotentialSpec& spec, double norm2_int);

// Nonzero support as a ModeSet. Only defined for tabulated kind; the
// gaussian has unbounded support and throws.
ModeSet support(const PotentialSpec& spec);

// supp u sum_closure(supp): the exact summation domain for every
// Theorem-2-style coefficient of a band-limited potential.
ModeSet effective_domain(const PotentialSpec& spec);

}  // namespace bgas
