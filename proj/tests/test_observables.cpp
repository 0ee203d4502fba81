#include <memory>
#include <random>

#include <doctest.h>

#include "brute_force.hpp"
#include "wqed/collective.hpp"
#include "wqed/observables.hpp"
#include "wqed/spectra.hpp"

using namespace wqed;

namespace {

std::shared_ptr<const SectorBasis> make_basis(int n, int n_up) {
    return std::make_shared<SectorBasis>(n, n_up);
}

Eigen::MatrixXcd ground_multiplet(const CouplingMatrix& cm, int n_up,
                                  double theta) {
    const auto h =
        build_sector_hamiltonian(cm, make_basis(cm.n_spins, n_up), theta);
    const auto gs = ground_states(h, std::min<int>(h.dim(), 16));
    return gs.eigenvectors.leftCols(gs.degeneracy);
}

// Random normalized state in a sector.
Eigen::MatrixXcd random_state(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd x(dim);
    for (int i = 0; i < x.size(); ++i) x(i) = Complex{dist(rng), dist(rng)};
    x.normalize();
    return x;
}

// Full-space expectation of an operator-string oracle built from Kronecker
// products.
Complex kron_expectation(const SectorBasis& basis,
                         const Eigen::MatrixXcd& states,
                         const std::vector<OpTerm>& terms) {
    const int n = basis.n_spins();
    Complex total{};
    for (int col = 0; col < states.cols(); ++col) {
        const Eigen::VectorXcd full =
            oracle::embed(states.col(col), n, basis.n_up());
        for (const auto& term : terms) {
            Eigen::VectorXcd v = full;
            for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it) {
                Eigen::Matrix2cd op;
                switch (it->op) {
                case SpinOp::Plus: op = oracle::spin_plus(); break;
                case SpinOp::Minus: op = oracle::spin_minus(); break;
                default: op = oracle::spin_z(); break;
                }
                v = oracle::site_operator(n, it->site, op) * v;
            }
            total += term.coeff * full.dot(v);
        }
    }
    return total / static_cast<double>(states.cols());
}

} // namespace

TEST_CASE("operator strings against the Kronecker oracle") {
    const auto basis = make_basis(6, 3);
    const Eigen::MatrixXcd psi = random_state(basis->size(), 77);
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> site(0, 5), opk(0, 2), len(1, 4);
    for (int trial = 0; trial < 25; ++trial) {
        OpTerm term;
        term.coeff = Complex{0.3, -1.1};
        const int l = len(rng);
        for (int i = 0; i < l; ++i)
            term.ops.push_back(
                {static_cast<SpinOp>(opk(rng)), site(rng)});
        const Complex got = expectation(*basis, psi, {term});
        const Complex want = kron_expectation(*basis, psi, {term});
        CHECK(std::abs(got - want) < 1e-12);
    }
}

TEST_CASE("local magnetization") {
    SUBCASE("all-up product state") {
        const auto basis = make_basis(4, 4);
        Eigen::MatrixXcd psi = Eigen::MatrixXcd::Ones(1, 1);
        const auto mz = local_magnetization(*basis, psi);
        for (int j = 0; j < 4; ++j)
            CHECK(mz(j) == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("two-spin singlet") {
        const auto basis = make_basis(2, 1);
        Eigen::MatrixXcd psi(2, 1);
        psi << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
        const auto mz = local_magnetization(*basis, psi);
        CHECK(std::abs(mz(0)) < 1e-14);
        CHECK(std::abs(mz(1)) < 1e-14);
    }
    SUBCASE("sum rule over random states") {
        const auto basis = make_basis(8, 3);
        const auto psi = random_state(basis->size(), 5);
        CHECK(local_magnetization(*basis, psi).sum() ==
              doctest::Approx(3 - 4).epsilon(1e-12));
    }
}

TEST_CASE("two-point correlations") {
    SUBCASE("fully polarized state is uncorrelated") {
        const auto basis = make_basis(6, 6);
        Eigen::MatrixXcd psi = Eigen::MatrixXcd::Ones(1, 1);
        for (const char axis : {'x', 'y', 'z'}) {
            const auto prof = two_point_correlations(*basis, psi, axis, 2);
            for (const double v : prof.values) CHECK(std::abs(v) < 1e-14);
        }
    }
    SUBCASE("uniform all-pairs model, polarized sector") {
        const auto corr = lbg_infinite_correlations(12, 6, -0.5);
        CHECK(corr.zz == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(corr.xx == doctest::Approx(0.0));
    }
    SUBCASE("uniform all-pairs model at m = 0, theta < 0") {
        const auto cm = make_uniform_lbg(12);
        const auto states = ground_multiplet(cm, 6, -M_PI / 4.0);
        REQUIRE(states.cols() == 1);
        const auto basis = make_basis(12, 6);
        const auto zz = two_point_correlations(*basis, states, 'z', 5);
        const auto xx = two_point_correlations(*basis, states, 'x', 5);
        for (const double v : zz.values)
            CHECK(v == doctest::Approx(-1.0 / 44.0).epsilon(1e-10));
        for (const double v : xx.values)
            CHECK(v == doctest::Approx(3.0 / 22.0).epsilon(1e-10));
    }
    SUBCASE("uniform all-pairs model at m = 0, theta > 0 mixture") {
        const auto cm = make_uniform_lbg(8);
        const auto states = ground_multiplet(cm, 4, M_PI / 4.0);
        REQUIRE(states.cols() > 1); // singlet manifold
        const auto basis = make_basis(8, 4);
        const auto ref = lbg_infinite_correlations(8, 0, M_PI / 4.0);
        const auto zz = two_point_correlations(*basis, states, 'z', 3);
        const auto xx = two_point_correlations(*basis, states, 'x', 3);
        for (const double v : zz.values)
            CHECK(v == doctest::Approx(ref.zz).epsilon(1e-9));
        for (const double v : xx.values)
            CHECK(v == doctest::Approx(ref.xx).epsilon(1e-9));
    }
    SUBCASE("isotropy at the Heisenberg point") {
        const auto c = EffectiveCouplings::make(Bandgap::Lower, 1.0, 0.2);
        const auto cm = build_coupling_matrix(c, 8, Boundary::OBC);
        const auto states = ground_multiplet(cm, 4, M_PI / 4.0);
        if (states.cols() == 1) {
            const auto basis = make_basis(8, 4);
            const auto x = two_point_correlations(*basis, states, 'x', 3);
            const auto z = two_point_correlations(*basis, states, 'z', 3);
            for (std::size_t r = 0; r < x.values.size(); ++r)
                CHECK(x.values[r] ==
                      doctest::Approx(z.values[r]).epsilon(1e-10));
        }
    }
    SUBCASE("x and y profiles coincide and respect the spin bound") {
        const auto basis = make_basis(8, 3);
        const auto psi = random_state(basis->size(), 31);
        const auto x = two_point_correlations(*basis, psi, 'x', 3);
        const auto y = two_point_correlations(*basis, psi, 'y', 3);
        for (std::size_t r = 0; r < x.values.size(); ++r) {
            CHECK(x.values[r] == doctest::Approx(y.values[r]).epsilon(1e-12));
            CHECK(std::abs(x.values[r]) <= 0.25 + 1e-12);
        }
    }
    SUBCASE("zz sum rule ties correlations to the sector magnetization") {
        const auto basis = make_basis(8, 3);
        const auto psi = random_state(basis->size(), 41);
        // sum_j <Sz_c Sz_j> = m <Sz_c> exactly on the sector.
        const int c = 4;
        double total = 0.25; // <(Sz_c)^2> = 1/4
        const auto mz = local_magnetization(*basis, psi);
        for (int j = 0; j < 8; ++j) {
            if (j == c) continue;
            const Complex v = expectation(
                *basis, psi,
                {{Complex{1.0}, {{SpinOp::Z, c}, {SpinOp::Z, j}}}});
            total += v.real();
        }
        CHECK(total == doctest::Approx((3 - 4) * mz(c)).epsilon(1e-12));
    }
}

TEST_CASE("bond order") {
    SUBCASE("translation-invariant ring has no staggered order") {
        const auto cm = make_nn_dimerized(8, 0.0, Boundary::PBC);
        const auto states = ground_multiplet(cm, 4, M_PI / 2.0);
        const auto basis = make_basis(8, 4);
        const auto result =
            bond_order(*basis, states, 2, Boundary::PBC);
        CHECK(std::abs(result.order) < 1e-10);
    }
    SUBCASE("perfect singlet product state") {
        // Singlets on (0,1) and (2,3): bond energies alternate -3/4, 0.
        const auto basis = make_basis(4, 2);
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis->size());
        const double amp = 0.5;
        // (|ud>-|du>)(|ud>-|du>)/2 over sites (0,1)(2,3); bit set = up.
        psi(basis->index_of(0b0101)) = amp;  // u.d u.d -> sites 0,2 up
        psi(basis->index_of(0b0110)) = -amp;
        psi(basis->index_of(0b1001)) = -amp;
        psi(basis->index_of(0b1010)) = amp;
        CHECK(bond_energy(*basis, psi, 0, Boundary::OBC) ==
              doctest::Approx(-0.75).epsilon(1e-12));
        CHECK(std::abs(bond_energy(*basis, psi, 1, Boundary::OBC)) < 1e-12);
        const auto result = bond_order(*basis, psi, 2, Boundary::PBC);
        CHECK(std::abs(result.order) == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
    }
    SUBCASE("window validation") {
        const auto basis = make_basis(4, 2);
        const auto psi = random_state(basis->size(), 2);
        CHECK_THROWS_AS(
            bond_order(*basis, psi, 2, Boundary::OBC, std::pair{2, 5}),
            WindowOutOfRange);
    }
}

TEST_CASE("bond-bond correlators") {
    SUBCASE("all-up product state") {
        const auto basis = make_basis(6, 6);
        Eigen::MatrixXcd psi = Eigen::MatrixXcd::Ones(1, 1);
        for (int r = 2; r <= 4; ++r)
            CHECK(bond_bond_correlator(*basis, psi, 0, r, 'z',
                                       Boundary::OBC) ==
                  doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    }
    SUBCASE("two-singlet product state, zz bonds") {
        const auto basis = make_basis(4, 2);
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis->size());
        psi(basis->index_of(0b0101)) = 0.5;
        psi(basis->index_of(0b0110)) = -0.5;
        psi(basis->index_of(0b1001)) = -0.5;
        psi(basis->index_of(0b1010)) = 0.5;
        CHECK(bond_bond_correlator(*basis, psi, 0, 2, 'z', Boundary::OBC) ==
              doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    }
    SUBCASE("x bonds match the Kronecker oracle") {
        const auto basis = make_basis(6, 3);
        const auto psi = random_state(basis->size(), 9);
        for (int r = 1; r <= 3; ++r) {
            const double got =
                bond_bond_correlator(*basis, psi, 1, r, 'x', Boundary::OBC);
            Eigen::VectorXcd full = oracle::embed(psi.col(0), 6, 3);
            const auto sx = [&](int j) {
                return oracle::site_operator(6, j, oracle::spin_x());
            };
            const Eigen::MatrixXcd op =
                sx(1) * sx(2) * sx(1 + r) * sx(2 + r);
            const Complex want = full.dot(op * full);
            CHECK(got == doctest::Approx(want.real()).epsilon(1e-10));
        }
    }
}

TEST_CASE("multipolar correlators") {
    SUBCASE("fully polarized state vanishes") {
        const auto basis = make_basis(8, 8);
        Eigen::MatrixXcd psi = Eigen::MatrixXcd::Ones(1, 1);
        for (const auto kind :
             {MultipolarKind::C2, MultipolarKind::C3, MultipolarKind::CKappa})
            CHECK(std::abs(multipolar_correlator(*basis, psi, kind, 2)) <
                  1e-14);
    }
    SUBCASE("chirality against the Kronecker oracle") {
        const auto basis = make_basis(6, 3);
        const auto psi = random_state(basis->size(), 57);
        const Eigen::VectorXcd full = oracle::embed(psi.col(0), 6, 3);
        const auto kappa = [&](int j) -> Eigen::MatrixXcd {
            const auto sx = [&](int s) {
                return oracle::site_operator(6, s, oracle::spin_x());
            };
            const auto sy = [&](int s) {
                return oracle::site_operator(6, s, oracle::spin_y());
            };
            return sx(j) * sy(j + 1) - sy(j) * sx(j + 1);
        };
        for (int r = 1; r <= 2; ++r) {
            const Complex got =
                multipolar_correlator(*basis, psi, MultipolarKind::CKappa, r);
            // Average over the centered placements the library uses.
            double best = 1e300;
            std::vector<int> anchors;
            for (int j = 0; j + r + 1 < 6; ++j) {
                const double center = j + (r + 1) / 2.0;
                const double dist = std::abs(center - 2.5);
                if (dist < best - 1e-9) {
                    best = dist;
                    anchors = {j};
                } else if (dist < best + 1e-9) {
                    anchors.push_back(j);
                }
            }
            Complex want{};
            for (const int j : anchors)
                want += full.dot(kappa(j) * (kappa(j + r) * full));
            want /= static_cast<double>(anchors.size());
            CHECK(std::abs(got - want) < 1e-10);
        }
    }
    SUBCASE("two-magnon string against the Kronecker oracle") {
        const auto basis = make_basis(6, 3);
        const auto psi = random_state(basis->size(), 91);
        const Eigen::VectorXcd full = oracle::embed(psi.col(0), 6, 3);
        const auto sp = [&](int s) {
            return oracle::site_operator(6, s, oracle::spin_plus());
        };
        const auto sm = [&](int s) {
            return oracle::site_operator(6, s, oracle::spin_minus());
        };
        for (int r = 2; r <= 3; ++r) {
            const Complex got =
                multipolar_correlator(*basis, psi, MultipolarKind::C2, r);
            double best = 1e300;
            std::vector<int> anchors;
            for (int j = 1; j + r + 1 < 6; ++j) {
                const double center = j + r / 2.0;
                const double dist = std::abs(center - 2.5);
                if (dist < best - 1e-9) {
                    best = dist;
                    anchors = {j};
                } else if (dist < best + 1e-9) {
                    anchors.push_back(j);
                }
            }
            REQUIRE(!anchors.empty());
            Complex want{};
            for (const int j : anchors)
                want += full.dot(sp(j - 1) * sp(j) * sm(j + r) *
                                 (sm(j + r + 1) * full));
            want /= static_cast<double>(anchors.size());
            CHECK(std::abs(got - want) < 1e-10);
        }
    }
}
