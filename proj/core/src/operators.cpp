#include "bgas/operators.hpp"

#include <algorithm>
#include <cmath>

#include "bgas/expansion_coeffs.hpp"
#include "bgas/parallel.hpp"

namespace bgas {

namespace {

void require_excitation(const OccupationBasis& b, const char* who) {
    if (b.has_zero_mode())
        throw Error(ErrorKind::internal, std::string(who) + " expects an excitation basis (no zero mode)");
}

// Mode index within the (sorted) basis mode list; -1 if absent.
int mode_index(const OccupationBasis& b, const Momentum& k) {
    const auto& ml = b.mode_list();
    auto it = std::lower_bound(ml.begin(), ml.end(), k);
    if (it == ml.end() || !(*it == k)) return -1;
    return static_cast<int>(it - ml.begin());
}

struct TermSink {
    const OccupationBasis& basis;
    std::vector<Triplet>& out;
    std::uint32_t col = 0;

    void emit(std::span<const occ_t> occ, double amp) {
        if (amp == 0.0) return;
        const auto row = basis.find(occ);
        if (row < 0) return;  // truncated away
        out.push_back({static_cast<std::uint32_t>(row), col, amp});
    }
};

}  // namespace

std::vector<double> diag_kinetic(const OccupationBasis& b) {
    std::vector<double> d(b.size(), 0.0);
    const auto& modes = b.mode_list();
    for (std::size_t i = 0; i < b.size(); ++i) {
        const auto occ = b.state(i);
        double acc = 0.0;
        for (int m = 0; m < b.num_modes(); ++m) acc += occ[m] * modes[m].k2();
        d[i] = acc;
    }
    return d;
}

std::vector<double> diag_k1(const OccupationBasis& b, const PotentialSpec& spec) {
    std::vector<double> d(b.size(), 0.0);
    const auto& modes = b.mode_list();
    std::vector<double> vh(b.num_modes());
    for (int m = 0; m < b.num_modes(); ++m) vh[m] = modes[m].is_zero() ? 0.0 : vhat(spec, modes[m]);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const auto occ = b.state(i);
        double acc = 0.0;
        for (int m = 0; m < b.num_modes(); ++m) acc += occ[m] * vh[m];
        d[i] = acc;
    }
    return d;
}

std::vector<double> diag_number(const OccupationBasis& b) {
    std::vector<double> d(b.size(), 0.0);
    const int z = b.zero_mode_index();
    for (std::size_t i = 0; i < b.size(); ++i) {
        int n = b.total_occupation(i);
        if (z >= 0) n -= b.state(i)[z];
        d[i] = n;
    }
    return d;
}

SparseMatrix k2_matrix(const OccupationBasis& b, const PotentialSpec& spec) {
    require_excitation(b, "k2_matrix");
    const auto& modes = b.mode_list();
    const int nm = b.num_modes();
    std::vector<int> negated(nm, -1);
    std::vector<double> vh(nm);
    for (int m = 0; m < nm; ++m) {
        vh[m] = vhat(spec, modes[m]);
        negated[m] = mode_index(b, -modes[m]);
    }
    std::vector<Triplet> trip;
    std::vector<occ_t> occ(nm);
    for (std::size_t s = 0; s < b.size(); ++s) {
        TermSink sink{b, trip, static_cast<std::uint32_t>(s)};
        const auto st = b.state(s);
        for (int m = 0; m < nm; ++m) {
            if (vh[m] == 0.0 || negated[m] < 0) continue;
            std::copy(st.begin(), st.end(), occ.begin());
            double amp = 0.5 * vh[m];
            amp *= std::sqrt(static_cast<double>(occ[negated[m]] + 1));  // a+_{-k}
            ++occ[negated[m]];
            amp *= std::sqrt(static_cast<double>(occ[m] + 1));  // a+_k
            ++occ[m];
            sink.emit(occ, amp);
        }
    }
    return SparseMatrix::from_triplets(b.size(), std::move(trip));
}

SparseMatrix k3_matrix(const OccupationBasis& b, const PotentialSpec& spec) {
    require_excitation(b, "k3_matrix");
    const auto& modes = b.mode_list();
    const int nm = b.num_modes();
    std::vector<double> vh(nm);
    for (int m = 0; m < nm; ++m) vh[m] = vhat(spec, modes[m]);

    std::vector<Triplet> trip;
    std::vector<occ_t> occ(nm);
    for (std::size_t s = 0; s < b.size(); ++s) {
        TermSink sink{b, trip, static_cast<std::uint32_t>(s)};
        const auto st = b.state(s);
        for (int mi = 0; mi < nm; ++mi) {  // annihilate k+l
            if (st[mi] == 0) continue;
            for (int ki = 0; ki < nm; ++ki) {  // amplitude vhat(k)
                if (vh[ki] == 0.0) continue;
                const Momentum l = modes[mi] - modes[ki];
                if (l.is_zero()) continue;
                const int li = mode_index(b, l);
                if (li < 0) continue;
                std::copy(st.begin(), st.end(), occ.begin());
                double amp = vh[ki] * std::sqrt(static_cast<double>(occ[mi]));  // a_{k+l}
                --occ[mi];
                amp *= std::sqrt(static_cast<double>(occ[li] + 1));  // a+_l
                ++occ[li];
                amp *= std::sqrt(static_cast<double>(occ[ki] + 1));  // a+_k
                ++occ[ki];
                sink.emit(occ, amp);
            }
        }
    }
    return SparseMatrix::from_triplets(b.size(), std::move(trip));
}

SparseMatrix k4_matrix(const OccupationBasis& b, const PotentialSpec& spec) {
    require_excitation(b, "k4_matrix");
    const auto& modes = b.mode_list();
    const int nm = b.num_modes();

    std::vector<Triplet> trip;
    std::vector<occ_t> occ(nm);
    for (std::size_t s = 0; s < b.size(); ++s) {
        TermSink sink{b, trip, static_cast<std::uint32_t>(s)};
        const auto st = b.state(s);
        for (int mi = 0; mi < nm; ++mi) {  // annihilate m = j+k-l
            if (st[mi] == 0) continue;
            for (int li = 0; li < nm; ++li) {  // annihilate l
                const int after_m = st[li] - (li == mi ? 1 : 0);
                if (after_m <= 0) continue;
                for (int ji = 0; ji < nm; ++ji) {  // create j, weight vhat(j-l)
                    if (ji == li) continue;       // j != l
                    const double vd = vhat(spec, modes[ji] - modes[li]);
                    if (vd == 0.0) continue;
                    const Momentum k = modes[li] + modes[mi] - modes[ji];
                    if (k.is_zero()) continue;
                    const int ki = mode_index(b, k);
                    if (ki < 0) continue;
                    std::copy(st.begin(), st.end(), occ.begin());
                    double amp = 0.5 * vd * std::sqrt(static_cast<double>(occ[mi]));  // a_{j+k-l}
                    --occ[mi];
                    amp *= std::sqrt(static_cast<double>(occ[li]));  // a_l
                    --occ[li];
                    amp *= std::sqrt(static_cast<double>(occ[ki] + 1));  // a+_k
                    ++occ[ki];
                    amp *= std::sqrt(static_cast<double>(occ[ji] + 1));  // a+_j
                    ++occ[ji];
                    sink.emit(occ, amp);
                }
            }
        }
    }
    return SparseMatrix::from_triplets(b.size(), std::move(trip));
}

SparseHermitian build_H0(const OccupationBasis& b, const PotentialSpec& spec) {
    require_excitation(b, "build_H0");
    auto diag = diag_kinetic(b);
    const auto k1 = diag_k1(b, spec);
    for (std::size_t i = 0; i < diag.size(); ++i) diag[i] += k1[i];
    const SparseMatrix k2 = k2_matrix(b, spec);
    return SparseHermitian::from_parts(
        SparseMatrix::sum(SparseMatrix::diagonal(diag), SparseMatrix::sum(k2, k2.transposed())));
}

SparseHermitian build_dGamma_qTq(const OccupationBasis& b) {
    return SparseHermitian::from_parts(SparseMatrix::diagonal(diag_kinetic(b)));
}

namespace {

// sum_nu d_{j/2,nu} (K2 poly^nu + h.c.) with poly the diagonal the variant
// prescribes ((N-1) plain, N tilde).
SparseMatrix k2_power_series(const SparseMatrix& k2, const std::vector<double>& poly, int half_j) {
    SparseMatrix acc = SparseMatrix::zero(k2.dim());
    std::vector<double> power(poly.size(), 1.0);
    for (int nu = 0; nu <= half_j; ++nu) {
        const double coeff = d_coeff_d(half_j, nu);
        if (coeff != 0.0) {
            const SparseMatrix base = k2.col_scaled(power).scaled(coeff);
            acc = SparseMatrix::sum(acc, SparseMatrix::sum(base, base.transposed()));
        }
        for (std::size_t i = 0; i < poly.size(); ++i) power[i] *= poly[i];
    }
    return acc;
}

}  // namespace

SparseHermitian build_Hj(const OccupationBasis& b, const PotentialSpec& spec, int j,
                         HjVariant variant) {
    require_excitation(b, "build_Hj");
    if (j < 1 || j > 4)
        throw_config("H_j is implemented for j in {1,..,4}; higher orders are out of scope", "order");

    const std::vector<double> ntot = diag_number(b);

    if (variant == HjVariant::tilde) {
        // Torus identities: H~1 = H1, H~2 = H2 - H0 + dGamma(qTq),
        // H~3 = H3 - H1/2, H~4 = H4.
        switch (j) {
            case 1:
                return build_Hj(b, spec, 1, HjVariant::plain);
            case 2: {
                const auto h2 = build_Hj(b, spec, 2, HjVariant::plain);
                const auto h0 = build_H0(b, spec);
                return SparseHermitian::from_parts(
                    SparseMatrix::sum(SparseMatrix::sum(h2.matrix(), h0.matrix().scaled(-1.0)),
                                      SparseMatrix::diagonal(diag_kinetic(b))));
            }
            case 3: {
                const auto h3 = build_Hj(b, spec, 3, HjVariant::plain);
                const auto h1 = build_Hj(b, spec, 1, HjVariant::plain);
                return SparseHermitian::from_parts(
                    SparseMatrix::sum(h3.matrix(), h1.matrix().scaled(-0.5)));
            }
            case 4:
                return build_Hj(b, spec, 4, HjVariant::plain);
        }
    }

    switch (j) {
        case 1: {
            const SparseMatrix k3 = k3_matrix(b, spec);
            return SparseHermitian::from_parts(SparseMatrix::sum(k3, k3.transposed()));
        }
        case 2: {
            // -(N-1) K1 - (K2 (N - 1/2) + h.c.) + K4
            const auto k1 = diag_k1(b, spec);
            std::vector<double> diag(b.size());
            for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = -(ntot[i] - 1.0) * k1[i];
            std::vector<double> shifted(b.size());
            for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = ntot[i] - 0.5;
            const SparseMatrix bmat = k2_matrix(b, spec).col_scaled(shifted);
            const SparseMatrix pair = SparseMatrix::sum(bmat, bmat.transposed()).scaled(-1.0);
            return SparseHermitian::from_parts(SparseMatrix::sum(
                SparseMatrix::sum(SparseMatrix::diagonal(diag), pair), k4_matrix(b, spec)));
        }
        case 3: {
            // c_1 (K3 (N-1) + h.c.)
            std::vector<double> nm1(b.size());
            for (std::size_t i = 0; i < nm1.size(); ++i) nm1[i] = ntot[i] - 1.0;
            const SparseMatrix c = k3_matrix(b, spec).col_scaled(nm1);
            return SparseHermitian::from_parts(
                SparseMatrix::sum(c, c.transposed()).scaled(c_coeff_d(1)));
        }
        case 4: {
            // sum_nu d_{2,nu} (K2 (N-1)^nu + h.c.)
            std::vector<double> nm1(b.size());
            for (std::size_t i = 0; i < nm1.size(); ++i) nm1[i] = ntot[i] - 1.0;
            return SparseHermitian::from_parts(k2_power_series(k2_matrix(b, spec), nm1, 2));
        }
    }
    throw Error(ErrorKind::internal, "unreachable");
}

SparseHermitian build_hN_exact(const OccupationBasis& b, const PotentialSpec& spec,
                               int n_particles) {
    require_excitation(b, "build_hN_exact");
    if (n_particles < 2) throw_config("H^<(N) requires N >= 2", "N");
    const double nm1 = n_particles - 1.0;
    const std::vector<double> ntot = diag_number(b);

    std::vector<double> diag = diag_kinetic(b);
    const auto k1 = diag_k1(b, spec);
    std::vector<double> f2(b.size()), f3(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double rem = n_particles - ntot[i];
        diag[i] += rem / nm1 * k1[i];
        f2[i] = std::sqrt(std::max(rem * (rem - 1.0), 0.0)) / nm1;
        f3[i] = std::sqrt(std::max(rem, 0.0)) / nm1;
    }
    const SparseMatrix b2 = k2_matrix(b, spec).col_scaled(f2);
    const SparseMatrix b3 = k3_matrix(b, spec).col_scaled(f3);
    SparseMatrix acc = SparseMatrix::diagonal(diag);
    acc = SparseMatrix::sum(acc, SparseMatrix::sum(b2, b2.transposed()));
    acc = SparseMatrix::sum(acc, SparseMatrix::sum(b3, b3.transposed()));
    acc = SparseMatrix::sum(acc, k4_matrix(b, spec).scaled(1.0 / nm1));
    return SparseHermitian::from_parts(std::move(acc));
}

namespace {

// Shared column enumeration of the N-body interaction
//   (lambda/2) sum_{q,k,l} vhat(q) a+_{k+q} a+_{l-q} a_l a_k,
// all indices restricted to the basis mode list.
template <typename Emit>
void nbody_interaction_terms(const OccupationBasis& b, const PotentialSpec& spec, double lambda,
                             std::span<const occ_t> st, std::vector<occ_t>& occ, Emit&& emit) {
    const auto& modes = b.mode_list();
    const int nm = b.num_modes();
    for (int ki = 0; ki < nm; ++ki) {
        if (st[ki] == 0) continue;
        for (int li = 0; li < nm; ++li) {
            const int n_l = st[li] - (li == ki ? 1 : 0);
            if (n_l <= 0) continue;
            const double amp0 =
                std::sqrt(static_cast<double>(st[ki])) * std::sqrt(static_cast<double>(n_l));
            for (int kqi = 0; kqi < nm; ++kqi) {  // target k+q; q = modes[kqi] - modes[ki]
                const Momentum q = modes[kqi] - modes[ki];
                const double vq = vhat(spec, q);
                if (vq == 0.0) continue;
                const int lqi = mode_index(b, modes[li] - q);
                if (lqi < 0) continue;
                std::copy(st.begin(), st.end(), occ.begin());
                --occ[ki];  // a_k
                --occ[li];  // a_l
                double amp = amp0;
                amp *= std::sqrt(static_cast<double>(occ[lqi] + 1));  // a+_{l-q}
                ++occ[lqi];
                amp *= std::sqrt(static_cast<double>(occ[kqi] + 1));  // a+_{k+q}
                ++occ[kqi];
                emit(occ, 0.5 * lambda * vq * amp);
            }
        }
    }
}

}  // namespace

SparseHermitian build_nbody_hamiltonian(const OccupationBasis& b, double lambda,
                                        const PotentialSpec& spec) {
    if (!b.has_zero_mode())
        throw Error(ErrorKind::internal, "build_nbody_hamiltonian expects an N-body basis");
    std::vector<Triplet> trip;
    std::vector<occ_t> occ(b.num_modes());
    const auto kin = diag_kinetic(b);
    for (std::size_t s = 0; s < b.size(); ++s) {
        trip.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s), kin[s]});
        TermSink sink{b, trip, static_cast<std::uint32_t>(s)};
        nbody_interaction_terms(b, spec, lambda, b.state(s), occ,
                                [&](std::span<const occ_t> o, double amp) { sink.emit(o, amp); });
    }
    return SparseHermitian::from_parts(SparseMatrix::from_triplets(b.size(), std::move(trip)));
}

LinearOperator nbody_operator(const OccupationBasis& b, double lambda, const PotentialSpec& spec,
                              unsigned workers) {
    auto kin = std::make_shared<std::vector<double>>(diag_kinetic(b));
    auto apply = [&b, &spec, lambda, kin, workers](const double* x, double* y) {
        // Row-wise gather: H is symmetric, so the terms generated from the row
        // state r give exactly the entries H(t, r) = H(r, t).
        parallel_for_chunks(b.size(), workers, [&](std::size_t lo, std::size_t hi) {
            std::vector<occ_t> occ(b.num_modes());
            for (std::size_t r = lo; r < hi; ++r) {
                double acc = (*kin)[r] * x[r];
                nbody_interaction_terms(b, spec, lambda, b.state(r), occ,
                                        [&](std::span<const occ_t> o, double amp) {
                                            const auto t = b.find(o);
                                            if (t >= 0) acc += amp * x[t];
                                        });
                y[r] = acc;
            }
        });
    };
    return {b.size(), std::move(apply)};
}

std::size_t nbody_nnz_estimate(const OccupationBasis& b, const PotentialSpec& spec) {
    const std::size_t nm = b.num_modes();
    std::size_t transfers = nm;  // gaussian couples every pair of modes
    if (!spec.is_gaussian()) transfers = std::min<std::size_t>(nm, support(spec).size() + 1);
    return b.size() * (1 + nm * nm * transfers / 2);
}

}  // namespace bgas
