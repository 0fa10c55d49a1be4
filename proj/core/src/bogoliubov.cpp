#include "bgas/bogoliubov.hpp"

#include <cassert>
#include <cmath>

#include "bgas/summation.hpp"

namespace bgas {

QPCoefficients qp_from_values(double k2, double vh) {
    assert(k2 > 0.0);
    QPCoefficients q;
    q.eps = std::sqrt(k2 * k2 + 2.0 * k2 * vh);
    q.alpha = vh == 0.0 ? 0.0 : vh / (k2 + vh + q.eps);
    q.sigma = 1.0 / std::sqrt(1.0 - q.alpha * q.alpha);
    q.gamma = q.alpha * q.sigma;
    return q;
}

QPCoefficients qp_coeffs(const PotentialSpec& spec, const Momentum& k) {
    if (k.is_zero()) throw Error(ErrorKind::config, "quasiparticle coefficients are defined for k != 0");
    return qp_from_values(k.k2(), vhat(spec, k));
}

double e_B(const ModeSet& m, const PotentialSpec& spec, unsigned workers) {
    const auto& modes = m.modes();
    return parallel_sum_sharded(modes.size(), workers, [&](std::size_t i, Kahan& acc) {
        const double vh = vhat(spec, modes[i]);
        if (vh == 0.0) return;
        acc.add(-0.5 * qp_from_values(modes[i].k2(), vh).alpha * vh);
    });
}

double e_B_alt(const ModeSet& m, const PotentialSpec& spec) {
    long double acc = 0.0L;
    for (const auto& k : m) {
        const long double vh = vhat(spec, k);
        if (vh == 0.0L) continue;  // eps == k^2 exactly, zero contribution
        const long double k2 = k.k2();
        const long double eps = sqrtl(k2 * k2 + 2.0L * k2 * vh);
        acc += 0.5L * (eps - k2 - vh);
    }
    return static_cast<double>(acc);
}

double f_coeff(const QpTable& tab, const Momentum& k) {
    if (k.is_zero()) throw Error(ErrorKind::config, "f(k) is defined for k != 0");
    const auto qk = tab.qp_at(k);
    const double vk = tab.vh_at(k);
    const double sk = qk.sigma, gk = qk.gamma;
    const auto& modes = tab.modes().modes();

    Kahan cross;   // -sum_{l != 0, k} vhat(k-l) gamma_l (sk^2 sl + 2 sk gl gk + sl gk^2)
    Kahan gamma2;  // sum gamma_l^2
    Kahan vgl;     // sum vhat(l) gamma_l (sigma_l - gamma_l)
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double gl = tab.gamma(j);
        if (gl == 0.0) continue;
        const double sl = tab.sigma(j);
        gamma2.add(gl * gl);
        vgl.add(tab.vh(j) * gl * (sl - gl));
        if (modes[j] == k) continue;
        const double vd = tab.vh_at(k - modes[j]);
        cross.add(-vd * gl * (sk * sk * sl + 2.0 * sk * gl * gk + sl * gk * gk));
    }
    return cross.value() - vk * (sk - gk) * (sk - gk) * gamma2.value() - 2.0 * sk * gk * vgl.value() +
           2.0 * vk * gk * (sk - gk) * (sk - gk) * (sk - gk) + 0.5 * vk * (sk * sk + gk * gk);
}

double f_coeff(const ModeSet& m, const PotentialSpec& spec, const Momentum& k) {
    return f_coeff(QpTable(m, spec), k);
}

double hqp2_coeff(const QpTable& tab, const Momentum& k) { return 0.5 * f_coeff(tab, k); }

double hqp2_coeff(const ModeSet& m, const PotentialSpec& spec, const Momentum& k) {
    return 0.5 * f_coeff(m, spec, k);
}

namespace {

struct Triple {
    double vk, vl, vkl;
    double sk, gk, sl, gl, skl, gkl;
};

Triple triple_of(const PotentialSpec& spec, const Momentum& k, const Momentum& l) {
    const Momentum kl = k + l;
    if (k.is_zero() || l.is_zero() || kl.is_zero())
        throw Error(ErrorKind::config, "g-coefficients require k, l, k+l all nonzero");
    const auto qk = qp_coeffs(spec, k);
    const auto ql = qp_coeffs(spec, l);
    const auto qkl = qp_coeffs(spec, kl);
    return {vhat(spec, k), vhat(spec, l), vhat(spec, kl),
            qk.sigma, qk.gamma, ql.sigma, ql.gamma, qkl.sigma, qkl.gamma};
}

}  // namespace

double g1_coeff(const PotentialSpec& spec, const Momentum& k, const Momentum& l) {
    const Triple t = triple_of(spec, k, l);
    const double A = t.vk * (t.skl * t.sl + t.gkl * t.gl) * (t.sk - t.gk);
    const double B = t.vl * (t.skl * t.sk + t.gkl * t.gk) * (t.sl - t.gl);
    const double C = t.vkl * (t.sl * t.gk + t.sk * t.gl) * (t.skl - t.gkl);
    return 0.5 * ((A + B) - C);
}

double g2_coeff(const PotentialSpec& spec, const Momentum& k, const Momentum& l) {
    const Triple t = triple_of(spec, k, l);
    const double A = t.vk * (t.gkl * t.sl + t.skl * t.gl) * (t.sk - t.gk);
    const double B = t.vl * (t.gkl * t.sk + t.skl * t.gk) * (t.sl - t.gl);
    const double C = t.vkl * (t.sl * t.gk + t.sk * t.gl) * (t.skl - t.gkl);
    return -((A + B) + C) / 6.0;
}

QpTable::QpTable(const ModeSet& m, const PotentialSpec& spec) : modes_(&m), spec_(&spec) {
    const std::size_t n = m.size();
    k2_.resize(n);
    vh_.resize(n);
    eps_.resize(n);
    sigma_.resize(n);
    gamma_.resize(n);
    alpha_.resize(n);
    std::int64_t max_norm2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& k = m[i];
        max_norm2 = std::max(max_norm2, k.norm2_int());
        k2_[i] = k.k2();
        vh_[i] = vhat(spec, k);
        const auto q = qp_from_values(k2_[i], vh_[i]);
        eps_[i] = q.eps;
        sigma_[i] = q.sigma;
        gamma_[i] = q.gamma;
        alpha_[i] = q.alpha;
    }
    isotropic_ = spec.is_gaussian();
    if (isotropic_) {
        // |n_i (+/-) n_j|^2 <= 4 max|n|^2; one entry per integer norm.
        const std::size_t span = static_cast<std::size_t>(4 * max_norm2) + 1;
        iso_vh_.resize(span);
        iso_eps_.resize(span);
        iso_sigma_.resize(span);
        iso_gamma_.resize(span);
        for (std::size_t q2 = 0; q2 < span; ++q2) {
            iso_vh_[q2] = vhat_gaussian_norm2(spec, static_cast<double>(q2));
            if (q2 == 0) {
                iso_eps_[0] = 0.0;
                iso_sigma_[0] = 1.0;
                iso_gamma_[0] = 0.0;
                continue;
            }
            const auto q = qp_from_values(two_pi * two_pi * static_cast<double>(q2), iso_vh_[q2]);
            iso_eps_[q2] = q.eps;
            iso_sigma_[q2] = q.sigma;
            iso_gamma_[q2] = q.gamma;
        }
    }
}

double QpTable::vh_at(const Momentum& p) const {
    if (isotropic_) {
        const auto q2 = static_cast<std::size_t>(p.norm2_int());
        if (q2 < iso_vh_.size()) return iso_vh_[q2];
        return vhat_gaussian_norm2(*spec_, static_cast<double>(q2));
    }
    return vhat(*spec_, p);
}

QPCoefficients QpTable::qp_at(const Momentum& p) const {
    if (isotropic_) {
        const auto q2 = static_cast<std::size_t>(p.norm2_int());
        if (q2 != 0 && q2 < iso_eps_.size())
            return {iso_eps_[q2], iso_gamma_[q2] / iso_sigma_[q2], iso_sigma_[q2], iso_gamma_[q2]};
    }
    return qp_from_values(p.k2(), vh_at(p));
}

}  // namespace bgas
