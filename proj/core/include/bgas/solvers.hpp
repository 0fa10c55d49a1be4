#pragma once

#include <cstdint>
#include <vector>

#include "bgas/sparse.hpp"

namespace bgas {

struct SolverOptions {
    double tol = 1e-10;               // residual target relative to the norm estimate
    int lanczos_block = 140;          // Krylov steps per restart
    int max_restarts = 60;
    std::size_t dense_threshold = 2000;  // dense diagonalization below this dimension
    unsigned workers = 0;             // 0 = hardware default
    std::uint64_t seed = 0x2545F4914F6CDD1Dull;
};

struct GroundState {
    double energy = 0.0;
    std::vector<double> vector;
    double residual = 0.0;  // ||(H - E) x||
    int iterations = 0;     // total operator applications
};

// Lowest eigenpair of a symmetric operator. norm_estimate scales the
// convergence test: accept when ||(H-E)x|| <= tol * max(1, norm_estimate).
// Lanczos with full reorthogonalization and deterministic seeded start;
// throws ErrorKind::solver with the residual on non-convergence.
GroundState ground_state(const LinearOperator& h, double norm_estimate, const SolverOptions& opts);

// Dense path below opts.dense_threshold, Lanczos above.
GroundState ground_state(const SparseHermitian& h, const SolverOptions& opts);

// Solves (h0 - e0) y = r restricted to the orthogonal complement of chi0
// (conjugate gradient on the projected operator, re-projection every step).
// r is projected internally; the result satisfies <chi0, y> = 0.
// Throws ErrorKind::solver on stagnation.
std::vector<double> solve_projected(const LinearOperator& h0, double e0,
                                    const std::vector<double>& chi0, const std::vector<double>& r,
                                    double tol, int max_iterations = 20000);

// Deterministic normalized pseudo-random vector.
std::vector<double> seeded_vector(std::size_t dim, std::uint64_t seed);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);
void axpy(double a, const std::vector<double>& x, std::vector<double>& y);

}  // namespace bgas
