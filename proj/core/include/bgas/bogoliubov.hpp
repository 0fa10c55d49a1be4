#pragma once

#include <vector>

#include "bgas/lattice.hpp"
#include "bgas/potential.hpp"

namespace bgas {

// Per-mode quasiparticle quantities for k != 0:
//   eps   = sqrt(k^4 + 2 k^2 vhat(k))          dispersion, > 0
//   alpha = vhat / (k^2 + vhat + eps)          in [0, 1)
//   sigma = 1 / sqrt(1 - alpha^2)              >= 1
//   gamma = alpha * sigma                      >= 0
// alpha uses the rationalized (subtraction-free) denominator; sigma is
// derived from alpha so that sigma^2 - gamma^2 = 1 holds to machine
// precision by construction.
struct QPCoefficients {
    double eps = 0.0;
    double alpha = 0.0;
    double sigma = 1.0;
    double gamma = 0.0;
};

QPCoefficients qp_coeffs(const PotentialSpec& spec, const Momentum& k);

// Same formulas from precomputed k^2 and vhat(k); k2 must be positive.
QPCoefficients qp_from_values(double k2, double vh);

// e_B := -1/2 sum_{k in M} alpha_k vhat(k).
double e_B(const ModeSet& m, const PotentialSpec& spec, unsigned workers = 1);

// Cross-check form 1/2 sum (eps - k^2 - vhat), accumulated in extended
// precision: the summand is a difference of nearly equal quantities and
// double precision loses ~3 digits to cancellation. Agrees with e_B to
// relative 1e-12.
double e_B_alt(const ModeSet& m, const PotentialSpec& spec);

class QpTable;

// f(k): the two-creation matrix-element function of the second-order
// coefficient; inner sums run over l in M (with l != 0, l != k). The QpTable
// overload is the same computation on the cached mode data.
double f_coeff(const ModeSet& m, const PotentialSpec& spec, const Momentum& k);
double f_coeff(const QpTable& tab, const Momentum& k);

// Two-creation part of the transformed quadratic Hamiltonian: f(k) / 2.
double hqp2_coeff(const ModeSet& m, const PotentialSpec& spec, const Momentum& k);
double hqp2_coeff(const QpTable& tab, const Momentum& k);

// Cubic matrix-element functions; require k, l, k+l all nonzero.
// g1 is symmetric under k <-> l; g2 is symmetric under any exchange of the
// roles of (k, l, -k-l).
double g1_coeff(const PotentialSpec& spec, const Momentum& k, const Momentum& l);
double g2_coeff(const PotentialSpec& spec, const Momentum& k, const Momentum& l);

// Per-ModeSet cache of mode data used by the series assembly loops. The
// per-index functions above stay pure; this is the callers' memo.
class QpTable {
public:
    QpTable(const ModeSet& m, const PotentialSpec& spec);

    const ModeSet& modes() const { return *modes_; }
    const PotentialSpec& spec() const { return *spec_; }
    std::size_t size() const { return k2_.size(); }

    double k2(std::size_t i) const { return k2_[i]; }
    double vh(std::size_t i) const { return vh_[i]; }
    double eps(std::size_t i) const { return eps_[i]; }
    double sigma(std::size_t i) const { return sigma_[i]; }
    double gamma(std::size_t i) const { return gamma_[i]; }
    double alpha(std::size_t i) const { return alpha_[i]; }

    // Quantities at arbitrary lattice points (sums/differences of modes).
    // For an isotropic spec these resolve through a table indexed by the
    // integer |n|^2; otherwise they are computed on demand.
    double vh_at(const Momentum& p) const;
    QPCoefficients qp_at(const Momentum& p) const;

private:
    const ModeSet* modes_;
    const PotentialSpec* spec_;
    std::vector<double> k2_, vh_, eps_, sigma_, gamma_, alpha_;

    // isotropic lookup by integer |n|^2, covering |n_i + n_j|^2
    bool isotropic_ = false;
    std::vector<double> iso_vh_, iso_eps_, iso_sigma_, iso_gamma_;
};

}  // namespace bgas
