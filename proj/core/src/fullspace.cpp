#include "wqed/fullspace.hpp"

namespace wqed {

FullSpaceParts fullspace_parts(const CouplingMatrix& cm) {
    const int n = cm.n_spins;
    if (n > 14)
        throw DimensionOverflow("full-space operators are capped at N = 14");
    const std::size_t dim = std::size_t{1} << n;

    FullSpaceParts parts;
    parts.n_spins = n;
    parts.hz = Eigen::VectorXd::Zero(dim);
    parts.hxy = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (int i = 0; i < n; ++i) {
            const double si = (c >> i) & 1 ? 0.5 : -0.5;
            for (int j = i + 1; j < n; ++j) {
                const double jij = cm.entries(i, j);
                if (jij == 0.0) continue;
                const double sj = (c >> j) & 1 ? 0.5 : -0.5;
                parts.hz(c) -= jij * si * sj;
                // Exchange flips an (up, down) pair; record once per pair.
                if (((c >> i) & 1) != ((c >> j) & 1)) {
                    const std::size_t flipped =
                        c ^ (std::size_t{1} << i) ^ (std::size_t{1} << j);
                    if (flipped > c) {
                        parts.hxy(flipped, c) = parts.hxy(c, flipped) =
                            -jij / 2.0;
                    }
                }
            }
        }
    }
    return parts;
}

Eigen::MatrixXd fullspace_hamiltonian(const FullSpaceParts& parts, double a,
                                      double b) {
    Eigen::MatrixXd h = b * parts.hxy;
    h.diagonal() += a * parts.hz;
    return h;
}

Eigen::MatrixXd lowering_operator(int n_spins, int site) {
    if (n_spins > 14)
        throw DimensionOverflow("full-space operators are capped at N = 14");
    if (site < 0 || site >= n_spins)
        throw InvalidParameter("site outside the chain");
    const std::size_t dim = std::size_t{1} << n_spins;
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t c = 0; c < dim; ++c)
        if ((c >> site) & 1) op(c ^ (std::size_t{1} << site), c) = 1.0;
    return op;
}

Eigen::VectorXd excitation_counts(int n_spins) {
    const std::size_t dim = std::size_t{1} << n_spins;
    Eigen::VectorXd counts(dim);
    for (std::size_t c = 0; c < dim; ++c)
        counts(c) = static_cast<double>(__builtin_popcountll(c));
    return counts;
}

} // namespace wqed
