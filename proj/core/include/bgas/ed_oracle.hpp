#pragma once

#include <optional>

#include "bgas/operators.hpp"
#include "bgas/series.hpp"
#include "bgas/solvers.hpp"

namespace bgas {

struct EdOptions {
    SolverOptions solver;
    bool momentum_restrict = true;          // --full-space disables
    std::size_t dim_limit = OccupationBasis::default_dim_limit;
    std::size_t stored_nnz_limit = 40'000'000;  // above this go matrix-free
};

// Ground energy of the N-body torus Hamiltonian on modes M u {0} at the
// explicit coupling lambda.
double nbody_ground_energy(const ModeSet& m, int n_particles, double lambda,
                           const PotentialSpec& spec, const EdOptions& opts = {});

// Binding energy Delta E = E(N, lam_N v) - E(N-1, lam_N v) with the same
// coupling lam_N = 1/(N-1) on both sides.
double binding_energy(int n_particles, const PotentialSpec& spec, const ModeSet& m,
                      const EdOptions& opts = {});

struct BindingFit {
    std::vector<int> n_values;
    std::vector<double> lambdas;       // 1/(N-1)
    std::vector<double> delta_e;
    std::vector<double> energies_n;    // E(N)
    std::vector<double> energies_nm1;  // E(N-1)

    std::vector<double> coeffs;        // b0, b1, ..., b_order
    std::vector<double> coeff_stderr;  // from the LSQ covariance
    std::vector<double> residuals;     // full-sample fit residuals
    double condition = 0.0;

    // Slope of log|dE - quadratic| against log lambda, measured on the
    // largest-lambda points against a fit anchored on the smallest-lambda
    // half (where the truncated series is most accurate).
    double residual_exponent = 0.0;
    std::size_t exponent_points = 0;

    // Closed-form targets on the same mode set.
    double e0_closed = 0.0, e1_closed = 0.0, e2_closed = 0.0;
};

// Least-squares fit of Delta E(N) against {1, lambda, ..., lambda^order},
// plus the residual-vs-lambda^{order+1} exponent and comparison columns.
BindingFit fit_binding_series(const std::vector<int>& n_list, const PotentialSpec& spec,
                              const ModeSet& m, int order = 2, const EdOptions& opts = {});

// Fit-only entry point (synthetic data, tests).
BindingFit fit_binding_data(const std::vector<int>& n_list, const std::vector<double>& delta_e,
                            int order);

}  // namespace bgas
