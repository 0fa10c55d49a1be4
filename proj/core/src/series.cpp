#include "bgas/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bgas/parallel.hpp"
#include "bgas/summation.hpp"

namespace bgas {

double e0_binding(const PotentialSpec& spec) {
    // vhat_L(0) = vhat(0) for every scale
    return spec.is_gaussian() ? spec.g : spec.v0;
}

double e1_binding(const ModeSet& m, const PotentialSpec& spec, E1Form form, unsigned workers) {
    const auto& modes = m.modes();
    switch (form) {
        case E1Form::compact:
            return parallel_sum_sharded(modes.size(), workers, [&](std::size_t i, Kahan& acc) {
                const double vh = vhat(spec, modes[i]);
                if (vh == 0.0) return;
                const double a = qp_from_values(modes[i].k2(), vh).alpha;
                acc.add(-vh * a / (1.0 + a));
            });
        case E1Form::e0_minus_kinetic: {
            const double kinetic = parallel_sum_sharded(modes.size(), workers, [&](std::size_t i, Kahan& acc) {
                const double vh = vhat(spec, modes[i]);
                if (vh == 0.0) return;
                const double a = qp_from_values(modes[i].k2(), vh).alpha;
                acc.add(modes[i].k2() * a * a / (1.0 - a * a));
            });
            return e_B(m, spec, workers) - kinetic;
        }
    }
    throw Error(ErrorKind::internal, "unknown E1 form");
}

bool covers_effective_domain(const ModeSet& m, const PotentialSpec& spec) {
    if (spec.is_gaussian()) return false;  // unbounded support is never covered
    for (const auto& k : effective_domain(spec))
        if (!m.contains(k)) return false;
    return true;
}

namespace {

// Shared per-pair geometry of the double sums. All heavy loops live here so
// the theorem route and the assembly route read identically shaped code while
// grouping the brackets differently.
struct PairTerms {
    double t3 = 0.0;        // 12 (k+l)^2 sg (g1/eps_kl)(g2/E3)
    double t4 = 0.0;        // -18 (k+l)^2 (s^2+g^2) (g2/E3)^2
    double theorem = 0.0;   // 6 * [(k+l)^2 g2/E3][2 sg g1/eps_kl - 3 (s^2+g^2) g2/E3]
    bool alive = false;
};

inline PairTerms pair_terms(const QpTable& tab, std::size_t i, std::size_t j) {
    PairTerms out;
    const auto& modes = tab.modes().modes();
    const Momentum kl = modes[i] + modes[j];
    if (kl.is_zero()) return out;

    const double vk = tab.vh(i), vl = tab.vh(j);
    const double vkl = tab.vh_at(kl);
    // Vanishing-support shortcut: with fewer than two of {k, l, k+l} in the
    // support every bracket of g1 and g2 is zero.
    if ((vk != 0.0) + (vl != 0.0) + (vkl != 0.0) < 2) return out;

    const double sk = tab.sigma(i), gk = tab.gamma(i);
    const double sl = tab.sigma(j), gl = tab.gamma(j);
    const auto qkl = tab.qp_at(kl);
    const double skl = qkl.sigma, gkl = qkl.gamma;

    const double A1 = vk * (skl * sl + gkl * gl) * (sk - gk);
    const double B1 = vl * (skl * sk + gkl * gk) * (sl - gl);
    const double C = vkl * (sl * gk + sk * gl) * (skl - gkl);
    const double g1 = 0.5 * ((A1 + B1) - C);

    const double A2 = vk * (gkl * sl + skl * gl) * (sk - gk);
    const double B2 = vl * (gkl * sk + skl * gk) * (sl - gl);
    const double g2 = -((A2 + B2) + C) / 6.0;

    const double kl2 = kl.k2();
    const double E3 = tab.eps(i) + tab.eps(j) + qkl.eps;
    const double g2E3 = g2 / E3;

    out.t3 = 12.0 * kl2 * skl * gkl * (g1 / qkl.eps) * g2E3;
    out.t4 = -18.0 * kl2 * (skl * skl + gkl * gkl) * g2E3 * g2E3;
    out.theorem = 6.0 * (kl2 * g2E3) * (2.0 * skl * gkl * g1 / qkl.eps - 3.0 * (skl * skl + gkl * gkl) * g2E3);
    out.alive = true;
    return out;
}

}  // namespace

double e2_binding(const ModeSet& m_eff, const PotentialSpec& spec, unsigned workers) {
    const QpTable tab(m_eff, spec);
    const auto& modes = m_eff.modes();
    const std::size_t n = modes.size();

    const double single = parallel_sum_sharded(n, workers, [&](std::size_t i, Kahan& acc) {
        if (tab.gamma(i) == 0.0) return;
        const double x = tab.k2(i) * tab.gamma(i) * tab.sigma(i);
        acc.add(x / tab.eps(i) * (x - f_coeff(tab, modes[i])));
    });

    const double dbl = parallel_sum_sharded(n, workers, [&](std::size_t i, Kahan& acc) {
        for (std::size_t j = 0; j < n; ++j) {
            const PairTerms pt = pair_terms(tab, i, j);
            if (pt.alive) acc.add(pt.theorem);
        }
    }, 8);

    return single + dbl;
}

E2Breakdown e2_binding_qp_assembly(const ModeSet& m_eff, const PotentialSpec& spec,
                                   unsigned workers) {
    const QpTable tab(m_eff, spec);
    const auto& modes = m_eff.modes();
    const std::size_t n = modes.size();

    E2Breakdown out;
    out.term1 = parallel_sum_sharded(n, workers, [&](std::size_t i, Kahan& acc) {
        if (tab.gamma(i) == 0.0) return;
        acc.add(-2.0 * tab.k2(i) * tab.gamma(i) * tab.sigma(i) * hqp2_coeff(tab, modes[i]) / tab.eps(i));
    });
    out.term2 = parallel_sum_sharded(n, workers, [&](std::size_t i, Kahan& acc) {
        if (tab.gamma(i) == 0.0) return;
        const double x = tab.k2(i) * tab.sigma(i) * tab.gamma(i);
        acc.add(x * x / tab.eps(i));
    });
    // Both cubic brackets in one sweep over pairs; per-row compensated
    // partials folded in canonical row order.
    std::vector<Kahan> t3(n), t4(n);
    parallel_for_chunks(n, workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const PairTerms pt = pair_terms(tab, i, j);
                if (!pt.alive) continue;
                t3[i].add(pt.t3);
                t4[i].add(pt.t4);
            }
    });
    Kahan s3, s4;
    for (std::size_t i = 0; i < n; ++i) {
        s3.add(t3[i].sum);
        s3.add(t3[i].comp);
        s4.add(t4[i].sum);
        s4.add(t4[i].comp);
    }
    out.term3 = s3.value();
    out.term4 = s4.value();
    return out;
}

SeriesResult convergence_study(const PotentialSpec& spec, int dim, std::vector<double> cutoffs,
                               unsigned workers) {
    if (cutoffs.empty()) throw_config("convergence study needs at least one cutoff", "cutoffs");
    for (std::size_t i = 1; i < cutoffs.size(); ++i)
        if (!(cutoffs[i] > cutoffs[i - 1]))
            throw_config("cutoffs must be strictly increasing", "cutoffs");

    SeriesResult res;
    res.e0_binding = e0_binding(spec);
    for (double c : cutoffs) {
        const ModeSet m = ModeSet::ball(dim, c);
        ConvergencePoint p;
        p.cutoff = c;
        p.modes = m.size();
        p.e1 = e1_binding(m, spec, E1Form::compact, workers);
        p.e2 = e2_binding(m, spec, workers);
        res.convergence.push_back(p);
    }
    const ModeSet last = ModeSet::ball(dim, cutoffs.back());
    res.e1_binding = res.convergence.back().e1;
    res.e1_binding_alt = e1_binding(last, spec, E1Form::e0_minus_kinetic, workers);
    res.e2_binding = res.convergence.back().e2;
    res.e2_qp = e2_binding_qp_assembly(last, spec, workers);
    if (!spec.is_gaussian()) res.domain_warning = !covers_effective_domain(last, spec);

    std::ostringstream os;
    os << "ball(dim=" << dim << ", cutoff=" << cutoffs.back() << ") with " << last.size() << " modes";
    res.mode_set_summary = os.str();

    if (cutoffs.size() < 3) {
        res.tail_fit_skipped = true;
        return res;
    }
    auto tail = [&](auto value_of) -> std::optional<TailFit> {
        const double ref = value_of(res.convergence.back());
        std::vector<double> cs, ds;
        const std::size_t first = res.convergence.size() >= 4 ? res.convergence.size() - 4 : 0;
        for (std::size_t i = first; i + 1 < res.convergence.size(); ++i) {
            const double d = std::abs(value_of(res.convergence[i]) - ref);
            if (d > 0.0) {
                cs.push_back(res.convergence[i].cutoff);
                ds.push_back(d);
            }
        }
        if (cs.size() < 2) return std::nullopt;  // already exact (band-limited plateau)
        const LinearFit f = fit_loglog(cs, ds);
        TailFit t;
        t.exponent = -f.slope;
        const auto& prev = res.convergence[res.convergence.size() - 2];
        const auto& lastp = res.convergence.back();
        const double r = std::pow(lastp.cutoff / prev.cutoff, t.exponent);
        t.extrapolated = r > 1.0
                             ? value_of(lastp) + (value_of(lastp) - value_of(prev)) / (r - 1.0)
                             : value_of(lastp);
        return t;
    };
    res.e1_tail = tail([](const ConvergencePoint& p) { return p.e1; });
    res.e2_tail = tail([](const ConvergencePoint& p) { return p.e2; });
    return res;
}

ScalingProbe scaling_probe(const PotentialSpec& spec, int dim, std::vector<double> lambda_list,
                           double cutoff_factor, unsigned workers) {
    if (!spec.is_gaussian())
        throw_config("scaling probe requires a gaussian potential (smooth vhat)", "potential.kind");
    if (lambda_list.size() < 2) throw_config("scaling probe needs at least two scales", "lambda_scale");
    for (std::size_t i = 1; i < lambda_list.size(); ++i)
        if (!(lambda_list[i] > lambda_list[i - 1]))
            throw_config("lambda scales must be strictly increasing", "lambda_scale");

    ScalingProbe probe;
    probe.cutoff_factor = cutoff_factor;
    for (double L : lambda_list) {
        PotentialSpec scaled = spec;
        scaled.lambda_scale = L;
        ScalingRow row;
        row.lambda = L;
        row.cutoff = std::max(cutoff_factor * spec.s * L, 2.1 * two_pi);
        const ModeSet m = ModeSet::ball(dim, row.cutoff);
        row.modes = m.size();
        row.e2 = e2_binding(m, scaled, workers);
        row.e2_over_l2 = row.e2 / (L * L);

        // The remark's leading term: sum_k (k^2 gamma sigma / eps)
        //   sum_{l != 0, k} vhat((k-l)/Lambda) gamma_l sigma_k^2 sigma_l
        const QpTable tab(m, scaled);
        const auto& modes = m.modes();
        row.leading_sum = parallel_sum_sharded(m.size(), workers, [&](std::size_t i, Kahan& acc) {
            if (tab.gamma(i) == 0.0) return;
            const double pre = tab.k2(i) * tab.gamma(i) * tab.sigma(i) / tab.eps(i) * tab.sigma(i) * tab.sigma(i);
            Kahan inner;
            for (std::size_t j = 0; j < modes.size(); ++j) {
                if (j == i) continue;
                inner.add(tab.vh_at(modes[i] - modes[j]) * tab.gamma(j) * tab.sigma(j));
            }
            acc.add(pre * inner.value());
        }, 8);
        row.ratio = row.e2 != 0.0 ? row.leading_sum / row.e2 : 0.0;
        probe.rows.push_back(row);
    }

    const std::size_t n = probe.rows.size();
    {
        std::vector<double> ls, es;
        for (std::size_t i = n >= 3 ? n - 3 : 0; i < n; ++i) {
            ls.push_back(probe.rows[i].lambda);
            es.push_back(probe.rows[i].e2);
        }
        probe.loglog_slope = fit_loglog(ls, es).slope;
    }
    // Local slopes at geometric midpoints, extrapolated linearly in
    // 1/Lambda to remove the O(Lambda) subleading contribution.
    probe.leading_exponent = probe.loglog_slope;
    if (n >= 3 && probe.rows[n - 1].e2 > 0.0 && probe.rows[n - 2].e2 > 0.0 && probe.rows[n - 3].e2 > 0.0) {
        auto local = [&](std::size_t i) {
            return std::log(probe.rows[i + 1].e2 / probe.rows[i].e2) /
                   std::log(probe.rows[i + 1].lambda / probe.rows[i].lambda);
        };
        const double p1 = local(n - 3), p2 = local(n - 2);
        const double x1 = 1.0 / std::sqrt(probe.rows[n - 3].lambda * probe.rows[n - 2].lambda);
        const double x2 = 1.0 / std::sqrt(probe.rows[n - 2].lambda * probe.rows[n - 1].lambda);
        probe.leading_exponent = p2 - (p1 - p2) * x2 / (x1 - x2);
    }
    return probe;
}

}  // namespace bgas
