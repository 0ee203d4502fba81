#include <cmath>
#include <random>

#include <doctest.h>

#include "wqed/berry.hpp"

using namespace wqed;

namespace {

double wrap_phase(double g) {
    g = std::fmod(g, 2.0 * M_PI);
    if (g < 0.0) g += 2.0 * M_PI;
    return g;
}

double circle_distance(double a, double b) {
    const double d = wrap_phase(a - b);
    return std::min(d, 2.0 * M_PI - d);
}

CouplingMatrix dimerized_ring(double delta_eff, int n = 6) {
    return make_nn_dimerized(n, delta_eff, Boundary::PBC);
}

} // namespace

TEST_CASE("path validation") {
    const auto cm = dimerized_ring(0.5);
    // Twisted pair must connect the two sublattices.
    CHECK_THROWS_AS(
        twisted_ground_multiplet(cm, 3, M_PI / 4.0, 0, 2, 8, 1),
        InvalidParameter);
    // Open chains cannot quantize the loop.
    const auto open = make_nn_dimerized(6, 0.5, Boundary::OBC);
    CHECK_THROWS_AS(
        twisted_ground_multiplet(open, 3, M_PI / 4.0, 0, 1, 8, 1),
        BoundaryUnsupported);
}

TEST_CASE("quantized phases of the strongly dimerized ring") {
    BerryOptions options;
    options.k_nodes = 32;
    // Intra-cell link (0, 1) and inter-cell link (1, 2).
    SUBCASE("positive dimerization: strong bonds inside the cells") {
        const auto cm = dimerized_ring(0.8);
        const auto intra = berry_phase_adaptive(cm, 3, M_PI / 4.0, 0, 1, 1,
                                                options);
        const auto inter = berry_phase_adaptive(cm, 3, M_PI / 4.0, 1, 2, 1,
                                                options);
        CHECK(intra.quantized);
        CHECK(inter.quantized);
        CHECK(circle_distance(intra.gamma, M_PI) < 1e-3 * 2.0 * M_PI);
        CHECK(circle_distance(inter.gamma, 0.0) < 1e-3 * 2.0 * M_PI);
        CHECK(classify_spt(intra.gamma, inter.gamma) == SptClass::Trivial);
    }
    SUBCASE("negative dimerization swaps the pattern") {
        const auto cm = dimerized_ring(-0.8);
        const auto intra = berry_phase_adaptive(cm, 3, M_PI / 4.0, 0, 1, 1,
                                                options);
        const auto inter = berry_phase_adaptive(cm, 3, M_PI / 4.0, 1, 2, 1,
                                                options);
        CHECK(circle_distance(intra.gamma, 0.0) < 1e-3 * 2.0 * M_PI);
        CHECK(circle_distance(inter.gamma, M_PI) < 1e-3 * 2.0 * M_PI);
        CHECK(classify_spt(intra.gamma, inter.gamma) == SptClass::Nontrivial);
    }
}

TEST_CASE("gauge invariance of the loop phase") {
    const auto cm = dimerized_ring(0.6);
    auto path = twisted_ground_multiplet(cm, 3, M_PI / 4.0, 0, 1, 24, 1);
    const double reference = abelian_berry_phase(path);
    CHECK(reference == doctest::Approx(non_abelian_berry_phase(path))
                           .epsilon(1e-10));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> pd(0.0, 2.0 * M_PI);
    for (auto& node : path.multiplets) {
        const double alpha = pd(rng);
        node *= Complex{std::cos(alpha), std::sin(alpha)};
    }
    CHECK(circle_distance(abelian_berry_phase(path), reference) < 1e-10);
}

TEST_CASE("forward and backward loops cancel") {
    const auto cm = dimerized_ring(0.6);
    auto path = twisted_ground_multiplet(cm, 3, 1.1, 0, 1, 24, 1);
    const double forward = abelian_berry_phase(path);
    std::reverse(path.multiplets.begin(), path.multiplets.end());
    const double backward = abelian_berry_phase(path);
    CHECK(circle_distance(forward + backward, 0.0) < 1e-10);
}

TEST_CASE("grid refinement converges") {
    const auto cm = dimerized_ring(0.7);
    BerryOptions options;
    options.k_nodes = 16;
    const auto coarse = berry_phase_adaptive(cm, 3, M_PI / 4.0, 0, 1, 1,
                                             options);
    options.k_nodes = 2 * coarse.k_used;
    const auto fine = berry_phase_adaptive(cm, 3, M_PI / 4.0, 0, 1, 1,
                                           options);
    CHECK(circle_distance(coarse.gamma, fine.gamma) < 1e-4);
}

TEST_CASE("phase classification") {
    CHECK(classify_spt(M_PI, 0.0) == SptClass::Trivial);
    CHECK(classify_spt(0.0, M_PI) == SptClass::Nontrivial);
    CHECK(classify_spt(M_PI + 5e-3, -4e-3) == SptClass::Trivial);
    CHECK(classify_spt(1.3, 0.2) == SptClass::Unquantized);
    CHECK(classify_spt(0.0, 0.0) == SptClass::Unquantized);
}
