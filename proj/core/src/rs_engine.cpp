#include "bgas/rs_engine.hpp"

#include <cmath>

#include "bgas/fit.hpp"

namespace bgas {

RsEngine::RsEngine(const OccupationBasis& basis, const PotentialSpec& spec, SolverOptions opts)
    : basis_(&basis), opts_(opts) {
    h0_ = build_H0(basis, spec);
    for (int j = 1; j <= 4; ++j) {
        plain_[j - 1] = build_Hj(basis, spec, j, HjVariant::plain);
        tilde_[j - 1] = build_Hj(basis, spec, j, HjVariant::tilde);
    }
    ground_ = ground_state(h0_, opts_);
}

const SparseHermitian& RsEngine::hj(int j, HjVariant v) const {
    if (j < 1 || j > 4) throw Error(ErrorKind::config, "H_j with j in {1,..,4}");
    return v == HjVariant::plain ? plain_[j - 1] : tilde_[j - 1];
}

std::vector<double> RsEngine::apply_resolvent(int m, const std::vector<double>& x) const {
    const auto& chi0 = ground_.vector;
    if (m == 0) {
        std::vector<double> y(x.size(), 0.0);
        axpy(-dot(chi0, x), chi0, y);
        return y;
    }
    const auto op = h0_.as_operator(opts_.workers);
    std::vector<double> y = x;
    for (int pass = 0; pass < m; ++pass) {
        // (E0 - H0) z = Q0 y  <=>  (H0 - E0) z = -Q0 y
        std::vector<double> rhs(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) rhs[i] = -y[i];
        y = solve_projected(op, ground_.energy, chi0, rhs, opts_.tol);
    }
    return y;
}

namespace {

void compositions_of(int total, int parts, int max_part, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        if (total >= 1 && total <= max_part) {
            cur.push_back(total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = 1; first <= total - (parts - 1) && first <= max_part; ++first) {
        cur.push_back(first);
        compositions_of(total - first, parts - 1, max_part, cur, out);
        cur.pop_back();
    }
}

void weak_compositions_of(int total, int parts, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int first = 0; first <= total; ++first) {
        cur.push_back(first);
        weak_compositions_of(total - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

RsEngine::Energy RsEngine::rs_energy(int ell, HjVariant variant) const {
    if (ell < 1 || ell > 2)
        throw_config("the engine evaluates E_l for l in {1,2}; higher orders need H_j with j > 4",
                     "order");
    const auto& chi0 = ground_.vector;
    Energy energy;
    Kahan total;
    for (int nu = 1; nu <= 2 * ell; ++nu) {
        std::vector<std::vector<int>> js, ms;
        std::vector<int> scratch;
        compositions_of(2 * ell, nu, 4, scratch, js);
        weak_compositions_of(nu - 1, nu - 1, scratch, ms);
        for (const auto& j : js) {
            for (const auto& m : ms) {
                Term term;
                term.nu = nu;
                term.j = j;
                term.m = m;
                term.kappa = 1;
                for (int x : m)
                    if (x == 0) ++term.kappa;
                // right-to-left application
                std::vector<double> psi(chi0.size());
                hj(j[nu - 1], variant).matvec(chi0.data(), psi.data(), opts_.workers);
                for (int t = nu - 2; t >= 0; --t) {
                    psi = apply_resolvent(m[t], psi);
                    std::vector<double> next(psi.size());
                    hj(j[t], variant).matvec(psi.data(), next.data(), opts_.workers);
                    psi = std::move(next);
                }
                term.value = dot(chi0, psi) / term.kappa;
                total.add(term.value);
                energy.terms.push_back(std::move(term));
            }
        }
    }
    energy.value = total.value();
    return energy;
}

double RsEngine::binding_coefficient(int ell) const {
    return rs_energy(ell, HjVariant::plain).value - rs_energy(ell, HjVariant::tilde).value;
}

std::vector<RsSweepRow> rs_binding_sweep(const ModeSet& modes, const PotentialSpec& spec,
                                         const std::vector<int>& nmax_list, int order,
                                         SolverOptions opts) {
    if (order < 1 || order > 2) throw_config("order must be 1 or 2", "order");
    std::vector<RsSweepRow> rows;
    for (int n_max : nmax_list) {
        const auto basis = OccupationBasis::excitation(modes, n_max);
        RsEngine engine(basis, spec, opts);
        RsSweepRow row;
        row.n_max = n_max;
        row.dim = basis.size();
        row.e1 = engine.rs_energy(1, HjVariant::plain).value;
        row.e1_tilde = engine.rs_energy(1, HjVariant::tilde).value;
        row.e1_binding = row.e1 - row.e1_tilde;
        if (order >= 2) {
            row.e2 = engine.rs_energy(2, HjVariant::plain).value;
            row.e2_tilde = engine.rs_energy(2, HjVariant::tilde).value;
            row.e2_binding = row.e2 - row.e2_tilde;
        }
        rows.push_back(row);
    }
    return rows;
}

TaylorProbe taylor_residual_probe(const OccupationBasis& basis, const PotentialSpec& spec, int a,
                                  const std::vector<int>& n_list, int probe_n_max,
                                  std::uint64_t seed) {
    if (a < 0 || a > 4) throw_config("taylor probe supports a in {0,..,4}", "order");
    for (int n : n_list)
        if (n - 1 <= basis.n_max())
            throw_config("probe requires n_max << min(N_list)", "N");

    // deterministic probe on the low-occupation sector
    std::vector<double> psi = seeded_vector(basis.size(), seed);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis.total_occupation(i) > probe_n_max) psi[i] = 0.0;
    const double pn = norm2(psi);
    if (pn == 0.0) throw Error(ErrorKind::internal, "probe sector is empty");
    for (auto& e : psi) e /= pn;

    const SparseHermitian h0 = build_H0(basis, spec);
    std::array<SparseHermitian, 4> hjs;
    for (int j = 1; j <= 4; ++j) hjs[j - 1] = build_Hj(basis, spec, j, HjVariant::plain);

    TaylorProbe probe;
    probe.a = a;
    std::vector<double> lams, rs;
    for (int n : n_list) {
        const double lam = 1.0 / (n - 1.0);
        const SparseHermitian hex = build_hN_exact(basis, spec, n);
        std::vector<double> acc(basis.size()), tmp(basis.size());
        hex.matvec(psi.data(), acc.data());
        h0.matvec(psi.data(), tmp.data());
        axpy(-1.0, tmp, acc);
        for (int j = 1; j <= a; ++j) {
            hjs[j - 1].matvec(psi.data(), tmp.data());
            axpy(-std::pow(lam, j / 2.0), tmp, acc);
        }
        TaylorRow row;
        row.n_particles = n;
        row.lambda = lam;
        row.residual = norm2(acc);
        probe.rows.push_back(row);
        lams.push_back(lam);
        rs.push_back(row.residual);
    }
    probe.exponent = fit_loglog(lams, rs).slope;
    return probe;
}

}  // namespace bgas
