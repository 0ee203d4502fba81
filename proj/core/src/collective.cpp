#include "wqed/collective.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace wqed {

namespace {

void check_even(int n_spins) {
    if (n_spins < 2 || n_spins % 2 != 0)
        throw OddSize("collective solvers need an even number of spins");
}

// Ground energy and state of one (s_a, s_b) block at fixed total m. The
// block is tridiagonal in m_a.
struct BlockResult {
    double energy = std::numeric_limits<double>::infinity();
    Eigen::VectorXd vec;
    double m_a_min = 0.0;
    bool valid = false;
};

BlockResult solve_block(double s_a, double s_b, int m, double theta,
                        double mu) {
    BlockResult block;
    const double lo = std::max(-s_a, m - s_b);
    const double hi = std::min(s_a, m + s_b);
    const int dim = static_cast<int>(std::lround(hi - lo)) + 1;
    if (hi < lo - 0.5) return block;

    const double sn = std::sin(theta), cs = std::cos(theta);
    const double ca = s_a * (s_a + 1.0), cb = s_b * (s_b + 1.0);
    Eigen::VectorXd diag(dim), off(std::max(dim - 1, 1));
    for (int i = 0; i < dim; ++i) {
        const double ma = lo + i, mb = m - ma;
        diag(i) = -((sn / 2.0) * (ca - ma * ma + cb - mb * mb) +
                    (cs / 2.0) * (ma - mb) * (ma - mb) + mu * m);
        if (i + 1 < dim)
            off(i) = (sn / 2.0) * std::sqrt(ca - ma * (ma + 1.0)) *
                     std::sqrt(cb - mb * (mb - 1.0));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off.head(std::max(dim - 1, 0)));
    block.energy = solver.eigenvalues()(0);
    block.vec = solver.eigenvectors().col(0);
    block.m_a_min = lo;
    block.valid = true;
    return block;
}

} // namespace

double dicke_energy(int n_spins, int s, int m, double theta, double mu) {
    check_even(n_spins);
    if (std::abs(m) > s || s > n_spins / 2)
        throw InvalidQuantumNumbers("need |m| <= s <= N/2");
    return 0.5 * (std::sin(theta) * (s * (s + 1.0) - m * m) +
                  std::cos(theta) * m * m) -
           mu * m;
}

DickeLevel dicke_ground_lbg_at_m(int n_spins, int m, double theta, double mu) {
    check_even(n_spins);
    if (std::abs(m) > n_spins / 2) throw InvalidM("|m| exceeds N/2");
    DickeLevel best{std::abs(m), m,
                    std::numeric_limits<double>::infinity()};
    for (int s = std::abs(m); s <= n_spins / 2; ++s) {
        const double e = dicke_energy(n_spins, s, m, theta, mu);
        if (e < best.energy) best = {s, m, e};
    }
    return best;
}

DickeLevel dicke_ground_lbg(int n_spins, double theta, double mu) {
    check_even(n_spins);
    DickeLevel best{0, 0, std::numeric_limits<double>::infinity()};
    for (int m = -n_spins / 2; m <= n_spins / 2; ++m) {
        const DickeLevel level = dicke_ground_lbg_at_m(n_spins, m, theta, mu);
        if (level.energy < best.energy) best = level;
    }
    return best;
}

double lbg_pairwise_offset(int n_spins, double theta) {
    return -(n_spins / 8.0) * (2.0 * std::sin(theta) + std::cos(theta));
}

double ubg_pairwise_offset(int n_spins, double theta) {
    return (n_spins / 8.0) * (2.0 * std::sin(theta) + std::cos(theta));
}

PairCorrelations lbg_infinite_correlations(int n_spins, int m, double theta) {
    check_even(n_spins);
    const double n = n_spins;
    if (std::abs(m) > n_spins / 2) throw InvalidM("|m| exceeds N/2");
    PairCorrelations corr;
    corr.zz = (4.0 * m * m - n) / (4.0 * n * (n - 1.0));
    if (theta < 0.0)
        corr.xx = (n * n - 4.0 * m * m) / (8.0 * n * (n - 1.0));
    else
        corr.xx = (2.0 * m - n) / (4.0 * n * (n - 1.0));
    return corr;
}

UbgInfiniteResult ubg_infinite_ground(int n_spins, int m, double theta,
                                      double mu) {
    check_even(n_spins);
    if (n_spins < 4) throw InvalidParameter("need at least two spins per cell");
    if (std::abs(m) > n_spins / 2) throw InvalidM("|m| exceeds N/2");

    const double s_max = n_spins / 4.0;
    const double s_min = (n_spins / 2) % 2 == 0 ? 0.0 : 0.5;
    const int steps = static_cast<int>(std::lround(s_max - s_min));

    UbgInfiniteResult result;
    result.energy = std::numeric_limits<double>::infinity();
    BlockResult best_block;
    for (int ia = 0; ia <= steps; ++ia)
        for (int ib = 0; ib <= steps; ++ib) {
            const double s_a = s_min + ia, s_b = s_min + ib;
            const auto block = solve_block(s_a, s_b, m, theta, mu);
            if (!block.valid) continue;
            const double scale = std::max(1.0, std::abs(block.energy));
            if (!std::isfinite(result.energy) ||
                block.energy < result.energy - 1e-10 * scale) {
                result.energy = block.energy;
                result.s_a = s_a;
                result.s_b = s_b;
                result.degenerate = false;
                best_block = block;
            } else if (block.energy < result.energy + 1e-10 * scale) {
                result.degenerate = true;
            }
        }

    // Cross-check the closed-form (s_A, s_B) rules for the ground sector.
    const auto snap = [&](double s) {
        double v = s_min + std::ceil(s - s_min - 1e-9);
        return std::min(std::max(v, s_min), s_max);
    };
    std::vector<std::pair<double, double>> rule;
    const int m_abs = std::abs(m);
    if (theta < -M_PI / 2.0) {
        const double s = snap(m_abs / 2.0);
        rule = {{s, s}};
    } else if (theta < 0.0) {
        rule = {{s_max, std::abs(m_abs - s_max)},
                {std::abs(m_abs - s_max), s_max}};
    } else {
        rule = {{s_max, s_max}};
    }
    double rule_best = std::numeric_limits<double>::infinity();
    for (const auto& [s_a, s_b] : rule) {
        const auto block = solve_block(s_a, s_b, m, theta, mu);
        if (block.valid) rule_best = std::min(rule_best, block.energy);
    }
    result.rule_mismatch =
        rule_best >
        result.energy + 1e-9 * std::max(1.0, std::abs(result.energy));

    // Collective-operator expectations in the winning block.
    const auto& c = best_block.vec;
    const double s_a = result.s_a, s_b = result.s_b;
    const double ca = s_a * (s_a + 1.0), cb = s_b * (s_b + 1.0);
    double zz_ab = 0.0, ma2 = 0.0, mb2 = 0.0, ladder = 0.0;
    for (int i = 0; i < c.size(); ++i) {
        const double ma = best_block.m_a_min + i, mb = m - ma;
        const double w = c(i) * c(i);
        zz_ab += w * ma * mb;
        ma2 += w * ma * ma;
        mb2 += w * mb * mb;
        if (i + 1 < c.size())
            ladder += c(i + 1) * c(i) * std::sqrt(ca - ma * (ma + 1.0)) *
                      std::sqrt(cb - mb * (mb - 1.0));
    }
    const double xx_ab = 0.5 * ladder;
    const double xx_aa = 0.5 * (ca - ma2), xx_bb = 0.5 * (cb - mb2);
    const double n = n_spins;
    result.zz_cross = 4.0 / (n * n) * zz_ab;
    result.xx_cross = 4.0 / (n * n) * xx_ab;
    result.zz_same =
        4.0 / (n * (n - 2.0)) * 0.5 * (ma2 + mb2) - 1.0 / (2.0 * n - 4.0);
    result.xx_same =
        4.0 / (n * (n - 2.0)) * 0.5 * (xx_aa + xx_bb) - 1.0 / (2.0 * n - 4.0);
    result.amplitudes = c;
    result.m_a_min = best_block.m_a_min;
    return result;
}

SublatticeCorrelations ubg_mixture_correlations(int n_spins, int m) {
    check_even(n_spins);
    const double n = n_spins;
    SublatticeCorrelations corr;
    const bool half_even = (n_spins / 2) % 2 == 0;
    if (half_even && m == 0) {
        corr.same_zz = corr.same_xx = -1.0 / (2.0 * n - 4.0);
        corr.cross_zz = corr.cross_xx = 0.0;
        return corr;
    }
    if (!half_even && m == 0) {
        corr.same_zz = corr.same_xx = -1.0 / (2.0 * n);
        corr.cross_zz = -1.0 / (n * n);
        corr.cross_xx = 1.0 / (n * n);
        return corr;
    }
    if (!half_even && m == 1) {
        corr.same_zz = corr.same_xx = -1.0 / (2.0 * n);
        corr.cross_zz = 1.0 / (n * n);
        corr.cross_xx = 0.0;
        return corr;
    }
    if (m == n_spins / 2) {
        corr.same_zz = corr.cross_zz = 0.25;
        corr.same_xx = corr.cross_xx = 0.0;
        return corr;
    }
    throw InvalidM("no closed form for this magnetization");
}

} // namespace wqed
