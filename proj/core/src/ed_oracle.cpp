#include "bgas/ed_oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "bgas/fit.hpp"

namespace bgas {

double nbody_ground_energy(const ModeSet& m, int n_particles, double lambda,
                           const PotentialSpec& spec, const EdOptions& opts) {
    const auto basis =
        OccupationBasis::nbody(m, n_particles, opts.momentum_restrict, opts.dim_limit);
    if (nbody_nnz_estimate(basis, spec) <= opts.stored_nnz_limit) {
        const auto h = build_nbody_hamiltonian(basis, lambda, spec);
        return ground_state(h, opts.solver).energy;
    }
    const auto op = nbody_operator(basis, lambda, spec, opts.solver.workers);
    // inf-norm estimate from the diagonal dominance scale: kinetic diagonal
    // plus an interaction bound |lambda| vhat(0) N^2
    const double vh0 = spec.is_gaussian() ? spec.g : spec.v0;
    double kin_max = 0.0;
    for (const auto& k : basis.mode_list()) kin_max = std::max(kin_max, k.k2());
    const double norm_est = kin_max * n_particles +
                            std::abs(lambda) * std::max(vh0, 1.0) * n_particles * n_particles;
    return ground_state(op, norm_est, opts.solver).energy;
}

double binding_energy(int n_particles, const PotentialSpec& spec, const ModeSet& m,
                      const EdOptions& opts) {
    if (n_particles < 2) throw_config("binding energy needs N >= 2", "N");
    const double lam = 1.0 / (n_particles - 1.0);
    const double en = nbody_ground_energy(m, n_particles, lam, spec, opts);
    const double enm1 = nbody_ground_energy(m, n_particles - 1, lam, spec, opts);
    return en - enm1;
}

namespace {

void fit_core(BindingFit& fit, int order) {
    const std::size_t n = fit.n_values.size();
    const PolyFit pf = fit_polynomial(fit.lambdas, fit.delta_e, order);
    fit.coeffs = pf.coeffs;
    fit.residuals = pf.residuals;
    fit.condition = pf.condition;

    // standard errors from the unscaled LSQ covariance (A^T A)^{-1} s^2
    {
        Eigen::MatrixXd a(n, order + 1);
        for (std::size_t i = 0; i < n; ++i) {
            double p = 1.0;
            for (int j = 0; j <= order; ++j) {
                a(i, j) = p;
                p *= fit.lambdas[i];
            }
        }
        const Eigen::MatrixXd ata = a.transpose() * a;
        const Eigen::MatrixXd cov = ata.inverse();
        double ss = 0.0;
        for (double r : fit.residuals) ss += r * r;
        const double dof = std::max<double>(1.0, static_cast<double>(n) - (order + 1));
        fit.coeff_stderr.resize(order + 1);
        for (int j = 0; j <= order; ++j)
            fit.coeff_stderr[j] = std::sqrt(std::max(0.0, cov(j, j) * ss / dof));
    }

    // Residual exponent: anchor the polynomial on the smallest-lambda half
    // (at least order+2 points), then regress log|residual| on log lambda
    // over the remaining larger-lambda points, where the next-order term is
    // visible. Full-sample LSQ residuals oscillate around zero and carry no
    // usable slope.
    fit.residual_exponent = 0.0;
    fit.exponent_points = 0;
    const std::size_t anchor = std::max<std::size_t>(order + 2, n / 2);
    if (n >= anchor + 2) {
        // lambdas are descending in N order; sort indices by lambda ascending
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a_, std::size_t b_) { return fit.lambdas[a_] < fit.lambdas[b_]; });
        std::vector<double> ax, ay;
        for (std::size_t i = 0; i < anchor; ++i) {
            ax.push_back(fit.lambdas[idx[i]]);
            ay.push_back(fit.delta_e[idx[i]]);
        }
        const PolyFit anchored = fit_polynomial(ax, ay, order);
        std::vector<double> ls, rs;
        for (std::size_t i = anchor; i < n; ++i) {
            const double lam = fit.lambdas[idx[i]];
            const double r = fit.delta_e[idx[i]] - eval_polynomial(anchored.coeffs, lam);
            if (r != 0.0) {
                ls.push_back(lam);
                rs.push_back(std::abs(r));
            }
        }
        if (ls.size() >= 2) {
            fit.residual_exponent = fit_loglog(ls, rs).slope;
            fit.exponent_points = ls.size();
        }
    }
}

}  // namespace

BindingFit fit_binding_data(const std::vector<int>& n_list, const std::vector<double>& delta_e,
                            int order) {
    if (n_list.size() != delta_e.size() || n_list.size() < static_cast<std::size_t>(order) + 2)
        throw_config("need at least order+2 binding energies", "N_list");
    BindingFit fit;
    fit.n_values = n_list;
    fit.delta_e = delta_e;
    for (int n : n_list) {
        if (n < 2) throw_config("N values must be >= 2", "N_list");
        fit.lambdas.push_back(1.0 / (n - 1.0));
    }
    fit_core(fit, order);
    return fit;
}

BindingFit fit_binding_series(const std::vector<int>& n_list, const PotentialSpec& spec,
                              const ModeSet& m, int order, const EdOptions& opts) {
    if (order != 2 && order != 1) throw_config("fit order must be 1 or 2", "order");
    if (n_list.size() < static_cast<std::size_t>(order) + 2)
        throw_config("need at least order+2 values of N", "N_list");
    {
        auto [lo, hi] = std::minmax_element(n_list.begin(), n_list.end());
        if (*lo < 2) throw_config("N values must be >= 2", "N_list");
        const double spread = (*hi - 1.0) / (*lo - 1.0);
        if (spread < 4.0)
            throw_config("N_list must spread lambda_N over at least a factor 4 (got " +
                             std::to_string(spread) + ")",
                         "N_list");
    }

    BindingFit fit;
    fit.n_values = n_list;
    for (int n : n_list) {
        fit.lambdas.push_back(1.0 / (n - 1.0));
        const double lam = fit.lambdas.back();
        const double en = nbody_ground_energy(m, n, lam, spec, opts);
        const double enm1 = nbody_ground_energy(m, n - 1, lam, spec, opts);
        fit.energies_n.push_back(en);
        fit.energies_nm1.push_back(enm1);
        fit.delta_e.push_back(en - enm1);
    }
    fit_core(fit, order);

    fit.e0_closed = e0_binding(spec);
    fit.e1_closed = e1_binding(m, spec, E1Form::compact, opts.solver.workers);
    fit.e2_closed = order >= 2 ? e2_binding(m, spec, opts.solver.workers) : 0.0;
    return fit;
}

}  // namespace bgas
