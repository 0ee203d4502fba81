#include <cmath>
#include <random>

#include <doctest.h>

#include "wqed/couplings.hpp"

using namespace wqed;

namespace {

// Direct re-evaluation of the closed-form coupling constants, written out
// independently of the library implementation.
double direct_coupling(Bandgap gap, double xi, double de, int n,
                       PairKind pair) {
    const double y = std::exp(-1.0 / xi);
    const double eta = std::sqrt(y * (1.0 - de * de));
    if (gap != Bandgap::Middle) {
        switch (pair) {
        case PairKind::AB: return -(1.0 + de) * std::pow(y, n);
        case PairKind::BA: return n == 0 ? 0.0 : -(1.0 - de) * std::pow(y, n - 1);
        case PairKind::AA:
        case PairKind::BB: {
            if (n == 0) return 0.0;
            const double sd = gap == Bandgap::Lower ? -1.0 : 1.0;
            return sd * eta * std::pow(y, n - 1);
        }
        }
    }
    const double sgn = de >= 0.0 ? 1.0 : -1.0;
    const double alt = n % 2 == 0 ? 1.0 : -1.0; // (-1)^n
    switch (pair) {
    case PairKind::AB: return sgn * (1.0 + de) * alt * std::pow(y, n);
    case PairKind::BA:
        return n == 0 ? 0.0
                      : -sgn * (1.0 - de) * (-alt) * std::pow(y, n - 1);
    case PairKind::AA:
    case PairKind::BB:
        // Middle gap implies positive detuning sign by default.
        return n == 0 ? 0.0 : eta * (-alt) * std::pow(y, n - 1);
    }
    return 0.0;
}

} // namespace

TEST_CASE("reduction of physical bath parameters") {
    SUBCASE("detuning in the middle gap") {
        const auto c = effective_from_physical({1.0, 0.5, 0.0, 0.1});
        CHECK(c.bandgap == Bandgap::Middle);
        CHECK(c.xi == doctest::Approx(1.0 / std::log(3.0)).epsilon(1e-12));
        CHECK(c.delta_eff == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.eta() < 1e-7);
        CHECK(c.jtilde == doctest::Approx(1.0 / 300.0).epsilon(1e-10));
    }
    SUBCASE("far detuning shrinks xi and restores the bare dimerization") {
        const auto c = effective_from_physical({1.0, 0.5, 50.0, 0.1});
        CHECK(c.xi < 0.3);
        CHECK(c.delta_eff == doctest::Approx(0.5).epsilon(1e-2));
    }
    SUBCASE("detuning inside a band is rejected") {
        CHECK_THROWS_AS(effective_from_physical({1.0, 0.0, 1.0, 0.1}),
                        DetuningInBand);
        CHECK_THROWS_AS(effective_from_physical({1.0, 0.0, 0.0, 0.1}),
                        DegenerateBath);
    }
    SUBCASE("effective dimerization keeps the sign of the bare one") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> ddist(0.05, 0.9);
        std::uniform_real_distribution<double> gdist(2.5, 30.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double delta = ddist(rng) * (trial % 2 ? 1.0 : -1.0);
            const double detuning = gdist(rng);
            const auto c =
                effective_from_physical({1.0, delta, detuning, 0.1});
            CHECK(std::signbit(c.delta_eff) == std::signbit(delta));
        }
    }
}

TEST_CASE("coupling constants: worked values") {
    const auto lower = EffectiveCouplings::make(Bandgap::Lower, 1.0, 0.2);
    CHECK(coupling_constant(lower, 0, PairKind::AB) ==
          doctest::Approx(-1.2).epsilon(1e-12));
    CHECK(coupling_constant(lower, 0, PairKind::BA) == 0.0);
    CHECK(coupling_constant(lower, 0, PairKind::AA) == 0.0);
    CHECK(coupling_constant(lower, 1, PairKind::BA) ==
          doctest::Approx(-0.8).epsilon(1e-12));

    const auto middle = EffectiveCouplings::make(Bandgap::Middle, 1.0, 1.0);
    CHECK(coupling_constant(middle, 1, PairKind::AB) ==
          doctest::Approx(-2.0 * std::exp(-1.0)).epsilon(1e-12));
    // delta_eff = 1 kills every non-AB channel in the middle gap.
    for (int n = 0; n < 5; ++n) {
        CHECK(coupling_constant(middle, n, PairKind::BA) ==
              doctest::Approx(0.0));
        CHECK(coupling_constant(middle, n, PairKind::AA) ==
              doctest::Approx(0.0));
        CHECK(coupling_constant(middle, n, PairKind::BB) ==
              doctest::Approx(0.0));
    }
}

TEST_CASE("coupling constants match the independent closed forms") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> xdist(0.2, 5.0);
    std::uniform_real_distribution<double> udist(0.0, 1.0);
    std::uniform_int_distribution<int> ndist(0, 8);
    for (int trial = 0; trial < 300; ++trial) {
        const double xi = xdist(rng);
        const double t = region_threshold(xi);
        const Bandgap gap = static_cast<Bandgap>(trial % 3);
        // Stay strictly inside the feasible region of the chosen gap.
        double de = gap == Bandgap::Middle
                        ? t + (1.0 - t) * udist(rng)
                        : t * udist(rng);
        if (trial % 2) de = -de;
        const auto c = EffectiveCouplings::make(gap, xi, de);
        const int n = ndist(rng);
        for (const auto pair :
             {PairKind::AB, PairKind::BA, PairKind::AA, PairKind::BB}) {
            const double got = coupling_constant(c, n, pair);
            const double want = direct_coupling(gap, xi, de, n, pair);
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("same-sublattice amplitude ratio equals eta") {
    const auto c = EffectiveCouplings::make(Bandgap::Upper, 1.7, 0.15);
    for (int n = 0; n < 6; ++n) {
        const double aa = std::abs(coupling_constant(c, n + 1, PairKind::AA));
        const double ab = std::abs(coupling_constant(c, n, PairKind::AB));
        const double ba = std::abs(coupling_constant(c, n + 1, PairKind::BA));
        CHECK(2.0 * aa / (ab + ba) == doctest::Approx(c.eta()).epsilon(1e-12));
    }
}

TEST_CASE("couplings round-trip through the bath self-energies") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> jdist(0.5, 2.0);
    std::uniform_real_distribution<double> ddist(0.05, 0.8);
    std::uniform_real_distribution<double> gdist(0.01, 0.2);
    std::uniform_int_distribution<int> ndist(0, 6);
    std::uniform_int_distribution<int> pdist(0, 3);
    int tested = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const double j = jdist(rng);
        const double delta = ddist(rng) * (trial % 2 ? 1.0 : -1.0);
        // Detuning outside both bands: middle gap or below/above everything.
        const double gap_edge = 2.0 * j * std::abs(delta);
        double detuning;
        if (trial % 3 == 0)
            detuning = 0.4 * gap_edge * (trial % 2 ? 1.0 : -1.0);
        else
            detuning = (2.0 * j + 0.5 + trial * 1e-3) *
                       (trial % 2 ? 1.0 : -1.0);
        const PhysicalBathParams p{j, delta, detuning, gdist(rng)};
        const auto c = effective_from_physical(p);
        const auto pair = static_cast<PairKind>(pdist(rng));
        // n = 0 only carries a coupling for AB; the other channels fold
        // into local energy shifts and are zero by definition.
        int n = ndist(rng);
        if (pair != PairKind::AB && n == 0) n = 1;
        const double via_formula = coupling_constant(c, n, pair);
        const double via_bath = self_energy_real(p, n, pair);
        const double scale =
            std::max({std::abs(via_formula), std::abs(via_bath), 1e-300});
        CHECK(std::abs(via_formula - via_bath) / scale < 1e-10);
        ++tested;
    }
    CHECK(tested == 200);
}

TEST_CASE("feasible regions of (xi, delta_eff)") {
    // The dividing line: large |delta_eff| is reachable only from the middle
    // gap, small |delta_eff| only from the outer ones.
    CHECK(feasible_region_check(1.0, 0.9) == Region::MiddleOnly);
    CHECK(feasible_region_check(1.0, 0.1) == Region::LowerUpperOnly);
    CHECK(region_threshold(1.0) ==
          doctest::Approx((1.0 - std::exp(-1.0)) / (1.0 + std::exp(-1.0)))
              .epsilon(1e-12));
    CHECK(feasible_region_check(1.0, region_threshold(1.0)) ==
          Region::Boundary);
    // The threshold collapses to zero for long interaction lengths.
    CHECK(region_threshold(1e9) < 1e-8);
    CHECK(feasible_region_check(1e9, 0.0) == Region::LowerUpperOnly);

    // Independent check against the physical reduction: every realizable
    // bath lands on the correct side of the line.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ddist(0.05, 0.9);
    std::uniform_real_distribution<double> gdist(0.2, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double delta = ddist(rng);
        const double j = 1.0;
        double detuning;
        if (trial % 2 == 0) {
            // Middle gap.
            detuning = 2.0 * j * delta * 0.5;
            if (detuning == 0.0) continue;
        } else {
            detuning = -(2.0 * j + gdist(rng)); // below the lower band
        }
        const auto c = effective_from_physical({j, delta, detuning, 0.05});
        const double t = region_threshold(c.xi);
        if (c.bandgap == Bandgap::Middle)
            CHECK(std::abs(c.delta_eff) >= t - 1e-12);
        else
            CHECK(std::abs(c.delta_eff) <= t + 1e-12);
    }

    CHECK_THROWS_AS(EffectiveCouplings::make(Bandgap::Lower, 1.0, 0.9),
                    InvalidParameter);
    CHECK_THROWS_AS(EffectiveCouplings::make(Bandgap::Middle, 1.0, 0.1),
                    InvalidParameter);
}

TEST_CASE("coupling matrices on finite chains") {
    SUBCASE("tiny xi reduces to dimerized nearest neighbours") {
        const auto c = EffectiveCouplings::make(Bandgap::Lower, 0.05, 0.2);
        const auto cm = build_coupling_matrix(c, 6, Boundary::OBC);
        const auto nn = make_nn_dimerized(6, 0.2, Boundary::OBC);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                if (std::abs(i - j) == 1)
                    CHECK(cm.entries(i, j) ==
                          doctest::Approx(nn.entries(i, j)).epsilon(1e-8));
                else
                    // Residual same-sublattice links are bounded by eta.
                    CHECK(std::abs(cm.entries(i, j)) <= c.eta() + 1e-12);
            }
    }
    SUBCASE("middle gap at full dimerization couples only A to B") {
        const auto c = EffectiveCouplings::make(Bandgap::Middle, 1.0, 1.0);
        const auto cm = build_coupling_matrix(c, 8, Boundary::OBC);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (i % 2 == j % 2) CHECK(cm.entries(i, j) == 0.0);
    }
    SUBCASE("symmetry, zero diagonal, and ring inversion") {
        const auto c = EffectiveCouplings::make(Bandgap::Lower, 1.3, 0.2);
        const auto cm = build_coupling_matrix(c, 10, Boundary::PBC);
        CHECK((cm.entries - cm.entries.transpose()).norm() == 0.0);
        CHECK(cm.entries.diagonal().norm() == 0.0);
        // Inversion about the bond center between sites 0 and 1:
        // i -> 1 - i (mod N) maps A to B and preserves the ring.
        const int n = cm.n_spins;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int ii = ((1 - i) % n + n) % n;
                const int jj = ((1 - j) % n + n) % n;
                CHECK(cm.entries(i, j) ==
                      doctest::Approx(cm.entries(ii, jj)).epsilon(1e-12));
            }
    }
    SUBCASE("odd sizes and too-small cutoffs are reported") {
        const auto c = EffectiveCouplings::make(Bandgap::Lower, 1.0, 0.2);
        CHECK_THROWS_AS(build_coupling_matrix(c, 7, Boundary::OBC), OddSize);
        const auto cm = build_coupling_matrix(c, 12, Boundary::OBC, 2);
        CHECK(cm.cutoff_warning);
        CHECK_THROWS_AS(build_coupling_matrix(c, 12, Boundary::OBC, 2, true),
                        CutoffTooSmall);
    }
}
