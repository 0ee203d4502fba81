#include "wqed/berry.hpp"

#include <cmath>

#include "wqed/sweep.hpp"

namespace wqed {

namespace {

double wrap_angle(double gamma) {
    gamma = std::fmod(gamma, 2.0 * M_PI);
    if (gamma < 0.0) gamma += 2.0 * M_PI;
    return gamma;
}

// Distance on the circle.
double angle_distance(double a, double b) {
    const double d = wrap_angle(a - b);
    return std::min(d, 2.0 * M_PI - d);
}

} // namespace

BerryPath twisted_ground_multiplet(const CouplingMatrix& cm, int n_up,
                                   double theta, int site_p, int site_q,
                                   int k_nodes, int d,
                                   const BerryOptions& options) {
    if (cm.boundary != Boundary::PBC)
        throw BoundaryUnsupported("twisted paths need a closed ring");
    if (site_p % 2 == site_q % 2)
        throw InvalidParameter("twisted pair must span both sublattices");
    if (d < 1 || k_nodes < 3) throw InvalidParameter("need d >= 1, K >= 3");

    BerryPath path;
    path.site_p = site_p;
    path.site_q = site_q;
    path.d = d;
    path.phi.resize(k_nodes);
    path.multiplets.resize(k_nodes);
    path.min_gap = std::numeric_limits<double>::infinity();

    auto basis = std::make_shared<const SectorBasis>(cm.n_spins, n_up);
    const int k_levels =
        static_cast<int>(std::min<std::size_t>(d + 1, basis->size()));
    if (k_levels <= d)
        throw InvalidParameter("sector too small for the requested multiplet");

    std::vector<double> gaps(k_nodes);
    std::vector<std::string> failures(k_nodes);
    parallel_for(
        static_cast<std::size_t>(k_nodes),
        [&](std::size_t node) {
            const double phi = 2.0 * M_PI * node / k_nodes;
            const auto h = build_sector_hamiltonian(
                cm, basis, theta, Twist{site_p, site_q, phi});
            const auto gs = ground_states(h, k_levels, options.solver);
            const double gap = gs.eigenvalues(d) - gs.eigenvalues(d - 1);
            if (gap < options.gap_threshold) {
                failures[node] = "gap collapse";
                return;
            }
            const double split = gs.eigenvalues(d - 1) - gs.eigenvalues(0);
            if (split > options.cluster_rtol * gap) {
                failures[node] = "multiplet not separated";
                return;
            }
            path.phi[node] = phi;
            path.multiplets[node] = gs.eigenvectors.leftCols(d);
            gaps[node] = gap;
        },
        options.solver.workers);

    for (int node = 0; node < k_nodes; ++node) {
        if (failures[node] == "gap collapse")
            throw GapCollapse("multiplet gap below threshold along the path");
        if (!failures[node].empty())
            throw DegeneracyMismatch(
                "lowest levels do not form a separated multiplet");
        path.min_gap = std::min(path.min_gap, gaps[node]);
    }
    return path;
}

double abelian_berry_phase(const BerryPath& path, const BerryOptions& options) {
    if (path.d != 1)
        throw InvalidParameter("Abelian phase needs a one-dimensional path");
    return non_abelian_berry_phase(path, options);
}

double non_abelian_berry_phase(const BerryPath& path,
                               const BerryOptions& options) {
    const int k = static_cast<int>(path.multiplets.size());
    double gamma = 0.0;
    for (int n = 0; n < k; ++n) {
        const Eigen::MatrixXcd overlap =
            path.multiplets[n].adjoint() * path.multiplets[(n + 1) % k];
        const Complex det = overlap.determinant();
        const double floor =
            path.d == 1 ? options.overlap_floor : options.det_floor;
        if (std::abs(det) < floor) {
            if (path.d == 1)
                throw ZeroOverlap("node overlap vanished; refine the grid");
            throw SingularOverlap(
                "overlap determinant vanished; refine the grid");
        }
        gamma -= std::arg(det);
    }
    return wrap_angle(gamma);
}

BerryReport berry_phase_adaptive(const CouplingMatrix& cm, int n_up,
                                 double theta, int site_p, int site_q, int d,
                                 const BerryOptions& options) {
    int k = options.k_nodes;
    BerryReport report;
    auto path = twisted_ground_multiplet(cm, n_up, theta, site_p, site_q, k, d,
                                         options);
    report.gamma = non_abelian_berry_phase(path, options);
    report.k_used = k;
    report.min_gap = path.min_gap;
    while (2 * k <= options.k_cap) {
        k *= 2;
        path = twisted_ground_multiplet(cm, n_up, theta, site_p, site_q, k, d,
                                        options);
        const double refined = non_abelian_berry_phase(path, options);
        const bool settled =
            angle_distance(refined, report.gamma) < options.phase_tol;
        report.gamma = refined;
        report.k_used = k;
        report.min_gap = path.min_gap;
        if (settled) break;
    }
    report.quantized = angle_distance(report.gamma, 0.0) < 2.0 * M_PI * 1e-2 ||
                       angle_distance(report.gamma, M_PI) < 2.0 * M_PI * 1e-2;
    return report;
}

SptClass classify_spt(double gamma_intra, double gamma_inter, double tol) {
    const auto snap = [&](double gamma) -> int {
        if (angle_distance(gamma, 0.0) < tol) return 0;
        if (angle_distance(gamma, M_PI) < tol) return 1;
        return -1;
    };
    const int intra = snap(gamma_intra), inter = snap(gamma_inter);
    if (intra == 1 && inter == 0) return SptClass::Trivial;
    if (intra == 0 && inter == 1) return SptClass::Nontrivial;
    return SptClass::Unquantized;
}

} // namespace wqed
