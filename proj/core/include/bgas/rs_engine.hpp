#pragma once

#include <array>
#include <optional>

#include "bgas/operators.hpp"
#include "bgas/solvers.hpp"

namespace bgas {

// Rayleigh-Schrodinger engine on a truncated excitation basis: builds
// H0..H4 (plain and tilde), the ground pair (E0, chi0) of H0, the reduced
// resolvents O_m, and the order-l coefficients
//   E_l = sum_{nu, |j| = 2l, |m| = nu-1} (1/kappa) <chi0| H_j1 O_m1 ... H_jnu |chi0>
// with kappa(m) = 1 + #{mu : m_mu = 0} and O_0 = -P0, O_k = Q0/(E0-H0)^k.
class RsEngine {
public:
    RsEngine(const OccupationBasis& basis, const PotentialSpec& spec, SolverOptions opts = {});

    const OccupationBasis& basis() const { return *basis_; }
    const GroundState& ground() const { return ground_; }
    const SparseHermitian& h0() const { return h0_; }
    const SparseHermitian& hj(int j, HjVariant v) const;

    // O_m x: m = 0 gives -<chi0,x> chi0; m > 0 applies m projected solves of
    // (E0 - H0) y = Q0 x, re-projecting after each.
    std::vector<double> apply_resolvent(int m, const std::vector<double>& x) const;

    struct Term {
        int nu = 0;
        std::vector<int> j;  // composition of 2l, parts in 1..4
        std::vector<int> m;  // composition of nu-1 into nonnegative parts
        int kappa = 1;
        double value = 0.0;
    };
    struct Energy {
        double value = 0.0;
        std::vector<Term> terms;
    };

    // Order-l coefficient with the full (nu, j, m) ledger. l in {1, 2}.
    Energy rs_energy(int ell, HjVariant variant) const;

    // E_l - E~_l.
    double binding_coefficient(int ell) const;

private:
    const OccupationBasis* basis_;
    SparseHermitian h0_;
    std::array<SparseHermitian, 4> plain_, tilde_;
    GroundState ground_;
    SolverOptions opts_;
};

struct RsSweepRow {
    int n_max = 0;
    std::size_t dim = 0;
    double e1 = 0.0, e1_tilde = 0.0, e1_binding = 0.0;
    double e2 = 0.0, e2_tilde = 0.0, e2_binding = 0.0;
};

// Runs the engine over an n_max sweep on a fixed mode set; order in {1,2}.
std::vector<RsSweepRow> rs_binding_sweep(const ModeSet& modes, const PotentialSpec& spec,
                                         const std::vector<int>& nmax_list, int order,
                                         SolverOptions opts = {});

struct TaylorRow {
    int n_particles = 0;
    double lambda = 0.0;
    double residual = 0.0;  // ||(H^<(N) - H0 - sum_{j<=a} lam^{j/2} H_j) psi||
};

struct TaylorProbe {
    int a = 0;
    std::vector<TaylorRow> rows;
    double exponent = 0.0;  // fitted slope of log r against log lambda
};

// Residual of the partial expansion against the exact H^<(N) on a fixed
// small basis, for a deterministic probe vector supported on states with
// total occupation <= probe_n_max (a generic low sector keeps every omitted
// order visible without letting high number-powers dominate).
TaylorProbe taylor_residual_probe(const OccupationBasis& basis, const PotentialSpec& spec, int a,
                                  const std::vector<int>& n_list, int probe_n_max = 3,
                                  std::uint64_t seed = 421);

}  // namespace bgas
