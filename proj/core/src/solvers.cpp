#include "bgas/solvers.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace bgas {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

std::vector<double> seeded_vector(std::size_t dim, std::uint64_t seed) {
    // splitmix64 stream, mapped to [-1, 1); libc-independent and stable
    std::vector<double> v(dim);
    std::uint64_t x = seed;
    for (auto& e : v) {
        x += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        e = static_cast<double>(z >> 11) * 0x1.0p-52 * 2.0 - 1.0;
    }
    const double n = norm2(v);
    for (auto& e : v) e /= n;
    return v;
}

namespace {

GroundState lanczos_ground(const LinearOperator& h, double norm_estimate, const SolverOptions& opts) {
    const std::size_t n = h.dim;
    const double accept = opts.tol * std::max(1.0, norm_estimate);
    GroundState gs;
    gs.vector = seeded_vector(n, opts.seed);

    std::vector<std::vector<double>> basis;
    std::vector<double> alphas, betas, w(n);

    for (int restart = 0; restart < opts.max_restarts; ++restart) {
        basis.clear();
        alphas.clear();
        betas.clear();
        basis.push_back(gs.vector);
        for (int j = 0; j < opts.lanczos_block; ++j) {
            const auto& v = basis.back();
            h.apply(v.data(), w.data());
            ++gs.iterations;
            const double alpha = dot(v, w);
            alphas.push_back(alpha);
            axpy(-alpha, v, w);
            if (basis.size() >= 2) axpy(-betas.back(), basis[basis.size() - 2], w);
            // full reorthogonalization, twice
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& u : basis) axpy(-dot(u, w), u, w);
            const double beta = norm2(w);
            if (beta < 1e-14 * std::max(1.0, norm_estimate)) break;  // invariant subspace
            betas.push_back(beta);
            std::vector<double> next(n);
            for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / beta;
            basis.push_back(std::move(next));
        }

        const auto m = static_cast<Eigen::Index>(alphas.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            t(i, i) = alphas[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = betas[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const Eigen::VectorXd y = es.eigenvectors().col(0);
        gs.energy = es.eigenvalues()(0);
        std::vector<double> x(n, 0.0);
        for (Eigen::Index i = 0; i < m; ++i) axpy(y(i), basis[i], x);
        const double xn = norm2(x);
        for (auto& e : x) e /= xn;
        gs.vector = std::move(x);

        h.apply(gs.vector.data(), w.data());
        ++gs.iterations;
        gs.energy = dot(gs.vector, w);
        axpy(-gs.energy, gs.vector, w);
        gs.residual = norm2(w);
        if (gs.residual <= accept) return gs;
    }
    throw Error(ErrorKind::solver,
                "Lanczos did not converge: residual " + std::to_string(gs.residual) + " > " +
                    std::to_string(accept) + " after " + std::to_string(gs.iterations) +
                    " operator applications");
}

}  // namespace

GroundState ground_state(const LinearOperator& h, double norm_estimate, const SolverOptions& opts) {
    if (h.dim == 0) throw Error(ErrorKind::internal, "empty operator");
    if (h.dim == 1) {
        GroundState gs;
        double x = 1.0, y = 0.0;
        h.apply(&x, &y);
        gs.energy = y;
        gs.vector = {1.0};
        gs.iterations = 1;
        return gs;
    }
    return lanczos_ground(h, norm_estimate, opts);
}

GroundState ground_state(const SparseHermitian& h, const SolverOptions& opts) {
    const std::size_t n = h.dim();
    if (n > opts.dense_threshold)
        return ground_state(h.as_operator(opts.workers), h.norm_estimate(), opts);

    const auto& m = h.matrix();
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (auto p = m.row_ptr()[r]; p < m.row_ptr()[r + 1]; ++p)
            dense(static_cast<Eigen::Index>(r), m.cols()[p]) = m.values()[p];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);

    GroundState gs;
    gs.energy = n ? es.eigenvalues()(0) : 0.0;
    gs.vector.resize(n);
    for (std::size_t i = 0; i < n; ++i) gs.vector[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), 0);
    std::vector<double> w(n);
    h.matvec(gs.vector.data(), w.data());
    gs.iterations = 1;
    axpy(-gs.energy, gs.vector, w);
    gs.residual = norm2(w);
    return gs;
}

std::vector<double> solve_projected(const LinearOperator& h0, double e0,
                                    const std::vector<double>& chi0, const std::vector<double>& r,
                                    double tol, int max_iterations) {
    const std::size_t n = h0.dim;
    auto project = [&](std::vector<double>& v) { axpy(-dot(chi0, v), chi0, v); };

    // CG on A = Q (h0 - e0) Q, positive definite on ran Q by the spectral gap.
    std::vector<double> b = r;
    project(b);
    const double bn = norm2(b);
    std::vector<double> y(n, 0.0);
    if (bn == 0.0) return y;

    std::vector<double> res = b, p = b, ap(n);
    double rr = dot(res, res);
    const double stop = tol * bn;
    for (int it = 0; it < max_iterations; ++it) {
        h0.apply(p.data(), ap.data());
        for (std::size_t i = 0; i < n; ++i) ap[i] -= e0 * p[i];
        project(ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0))
            throw Error(ErrorKind::solver,
                        "projected solve lost positive definiteness (near-degenerate truncation); "
                        "raise n_max or adjust the spec");
        const double alpha = rr / pap;
        axpy(alpha, p, y);
        axpy(-alpha, ap, res);
        const double rr_new = dot(res, res);
        if (std::sqrt(rr_new) <= stop) {
            project(y);
            return y;
        }
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = res[i] + beta * p[i];
        project(p);
    }
    throw Error(ErrorKind::solver,
                "projected solve stagnated: residual " + std::to_string(std::sqrt(rr)) +
                    " (target " + std::to_string(stop) + ")");
}

}  // namespace bgas
