#include "wqed/lanczos.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace wqed {

namespace {

using MatVec = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

void orthogonalize(Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& basis) {
    // Two classical Gram-Schmidt passes.
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) v -= q.dot(v) * q;
}

struct RunOutput {
    std::vector<double> values;
    std::vector<Eigen::VectorXd> vectors;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

// One Lanczos sweep with full reorthogonalization, deflated against
// `deflate`. Returns up to `want` converged lowest Ritz pairs.
RunOutput lanczos_run(const MatVec& matvec, std::size_t dim, int want,
                      const std::vector<Eigen::VectorXd>& deflate,
                      Eigen::VectorXd start, int iter_budget, double tol) {
    RunOutput out;
    orthogonalize(start, deflate);
    if (start.norm() < 1e-12) return out;
    start.normalize();

    std::vector<Eigen::VectorXd> basis{start};
    std::vector<double> alpha, beta;
    Eigen::VectorXd w(dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    const int m_cap = static_cast<int>(
        std::min<std::size_t>(dim - deflate.size(), iter_budget));
    int n_conv = 0;
    bool exhausted = false;

    for (int it = 0; it < m_cap && !out.converged; ++it) {
        matvec(basis.back(), w);
        ++out.iterations;
        const double a = basis.back().dot(w);
        alpha.push_back(a);
        w -= a * basis.back();
        if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
        orthogonalize(w, basis);
        orthogonalize(w, deflate);
        const double b = w.norm();
        exhausted = b < 1e-13;
        const int m = static_cast<int>(alpha.size());

        if (exhausted || m % 5 == 0 || it + 1 == m_cap) {
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                t(i, i) = alpha[i];
                if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
            }
            tri.compute(t);
            const double scale = std::max(1.0, std::abs(tri.eigenvalues()(0)));
            n_conv = 0;
            for (int i = 0; i < std::min(want, m); ++i) {
                const double res = b * std::abs(tri.eigenvectors()(m - 1, i));
                out.residual = res;
                if (exhausted || res <= tol * scale) ++n_conv;
                else break;
            }
            if (n_conv >= std::min(want, m) || exhausted) out.converged = true;
        }
        if (out.converged || exhausted) break;
        beta.push_back(b);
        basis.push_back(w / b);
    }

    if (n_conv == 0) return out;
    const int m = static_cast<int>(alpha.size());
    for (int i = 0; i < n_conv; ++i) {
        Eigen::VectorXd ritz = Eigen::VectorXd::Zero(dim);
        for (int j = 0; j < m; ++j) ritz += tri.eigenvectors()(j, i) * basis[j];
        orthogonalize(ritz, deflate);
        const double nrm = ritz.norm();
        if (nrm < 1e-8) continue;
        out.vectors.push_back(ritz / nrm);
        out.values.push_back(tri.eigenvalues()(i));
    }
    return out;
}

} // namespace

LanczosResult lanczos_lowest(const MatVec& matvec, std::size_t dim, int k,
                             const LanczosOptions& options) {
    if (k < 1 || static_cast<std::size_t>(k) > dim)
        throw InvalidParameter("requested eigenpair count out of range");

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    const auto random_start = [&] {
        Eigen::VectorXd v(dim);
        for (std::size_t i = 0; i < dim; ++i) v(i) = gauss(rng);
        return v;
    };

    std::vector<Eigen::VectorXd> vectors;
    std::vector<double> values;
    int total_iters = 0;
    double last_residual = 0.0;

    const auto sorted_insert = [&](const RunOutput& run) {
        for (std::size_t i = 0; i < run.values.size(); ++i) {
            vectors.push_back(run.vectors[i]);
            values.push_back(run.values[i]);
        }
    };

    // Main restarts until k pairs collected.
    for (int restart = 0; restart < options.max_restarts &&
                          values.size() < static_cast<std::size_t>(k);
         ++restart) {
        const int budget = options.max_iter - total_iters;
        if (budget <= 0) break;
        auto run = lanczos_run(matvec, dim, k - static_cast<int>(values.size()),
                               vectors, random_start(), budget, options.tol);
        total_iters += run.iterations;
        last_residual = run.residual;
        if (!run.converged && values.empty())
            throw NoConvergence("Lanczos failed to converge; residual " +
                                std::to_string(run.residual));
        sorted_insert(run);
    }
    if (values.size() < static_cast<std::size_t>(k))
        throw NoConvergence("Lanczos restarts exhausted; residual " +
                            std::to_string(last_residual));

    // Verification restarts: a deflated run may reveal a degenerate partner
    // lying below the current k-th value; swap it in if so.
    for (int round = 0; round < options.max_restarts; ++round) {
        const int budget = options.max_iter - total_iters;
        if (budget <= 0) break;
        auto run = lanczos_run(matvec, dim, 1, vectors, random_start(), budget,
                               options.tol);
        total_iters += run.iterations;
        if (run.values.empty()) break;
        const double worst = *std::max_element(values.begin(), values.end());
        const double scale = std::max(1.0, std::abs(values.front()));
        if (run.values.front() >= worst - 1e-11 * scale) break;
        const auto worst_it = std::max_element(values.begin(), values.end());
        const auto idx = static_cast<std::size_t>(worst_it - values.begin());
        values[idx] = run.values.front();
        vectors[idx] = run.vectors.front();
    }

    std::vector<int> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });

    LanczosResult result;
    result.eigenvalues.resize(k);
    result.eigenvectors.resize(dim, k);
    result.iterations = total_iters;
    Eigen::VectorXd check(dim);
    for (int i = 0; i < k; ++i) {
        result.eigenvalues(i) = values[order[i]];
        result.eigenvectors.col(i) = vectors[order[i]];
        matvec(vectors[order[i]], check);
        check -= values[order[i]] * vectors[order[i]];
        result.max_residual = std::max(result.max_residual, check.norm());
    }
    return result;
}

} // namespace wqed
