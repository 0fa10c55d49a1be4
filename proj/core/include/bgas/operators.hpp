#pragma once

#include "bgas/fock_basis.hpp"
#include "bgas/potential.hpp"
#include "bgas/sparse.hpp"

namespace bgas {

// Second-quantized operators restricted to an occupation basis. On the torus
// the building blocks in Fourier representation are
//   K0 = dGamma(qTq)      = sum_{k!=0} k^2 a+_k a_k                (diagonal)
//   K1                    = sum_{k!=0} vhat(k) a+_k a_k            (diagonal)
//   K2                    = 1/2 sum_{k!=0} vhat(k) a+_k a+_{-k}
//   K3                    = sum_{k,l!=0, k+l!=0} vhat(k) a+_k a+_l a_{k+l}
//   K4 = 1/2 sum_{j,k,l!=0, j!=l, j+k-l!=0} vhat(j-l) a+_j a+_k a_l a_{j+k-l}
// Amplitudes whose target state leaves the basis are dropped (truncation);
// momentum conservation is structural.

std::vector<double> diag_kinetic(const OccupationBasis& b);                          // K0
std::vector<double> diag_k1(const OccupationBasis& b, const PotentialSpec& spec);    // K1
std::vector<double> diag_number(const OccupationBasis& b);                           // N_perp

SparseMatrix k2_matrix(const OccupationBasis& b, const PotentialSpec& spec);
SparseMatrix k3_matrix(const OccupationBasis& b, const PotentialSpec& spec);
SparseMatrix k4_matrix(const OccupationBasis& b, const PotentialSpec& spec);

// Bogoliubov Hamiltonian H0 = K0 + K1 + (K2 + h.c.).
SparseHermitian build_H0(const OccupationBasis& b, const PotentialSpec& spec);

// dGamma(qTq) = sum k^2 a+_k a_k.
SparseHermitian build_dGamma_qTq(const OccupationBasis& b);

enum class HjVariant { plain, tilde };

// Perturbation orders j = 1..4 of the lambda^{j/2} expansion:
//   H1 = K3 + h.c.
//   H2 = -(N-1) K1 - (K2 (N - 1/2) + h.c.) + K4
//   H3 = c1 (K3 (N-1) + h.c.)            with c1 = -1/2
//   H4 = sum_nu d_{2,nu} (K2 (N-1)^nu + h.c.) = -(1/8)(K2 + h.c.)
// The tilde variants are assembled through the torus identities
//   H~1 = H1,  H~2 = H2 - H0 + dGamma(qTq),  H~3 = H3 - H1/2,  H~4 = H4.
SparseHermitian build_Hj(const OccupationBasis& b, const PotentialSpec& spec, int j,
                         HjVariant variant);

// The number-conserving square-root form H^<(N) evaluated exactly on the
// occupation eigenspaces:
//   K0 + (N-Np)/(N-1) K1 + (K2 sqrt([(N-Np)(N-Np-1)]+)/(N-1) + h.c.)
//      + (K3 sqrt([N-Np]+)/(N-1) + h.c.) + K4/(N-1)
SparseHermitian build_hN_exact(const OccupationBasis& b, const PotentialSpec& spec, int n_particles);

// Full N-body torus Hamiltonian on modes M u {0} at explicit coupling lambda:
//   sum_k k^2 a+_k a_k + (lambda/2) sum_{q,k,l} vhat(q) a+_{k+q} a+_{l-q} a_l a_k
SparseHermitian build_nbody_hamiltonian(const OccupationBasis& b, double lambda,
                                        const PotentialSpec& spec);

// Matrix-free application of the same operator (for dimensions where the
// stored form is too large). The basis and spec must outlive the operator.
LinearOperator nbody_operator(const OccupationBasis& b, double lambda, const PotentialSpec& spec,
                              unsigned workers = 1);

// Estimated stored-matrix entry count, used to pick stored vs matrix-free.
std::size_t nbody_nnz_estimate(const OccupationBasis& b, const PotentialSpec& spec);

}  // namespace bgas
