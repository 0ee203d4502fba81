#pragma once

#include <vector>

#include "wqed/spectra.hpp"

namespace wqed {

struct BerryOptions {
    int k_nodes = 64;          // initial phi-grid size
    int k_cap = 1024;          // doubling limit
    double phase_tol = 1e-3;   // stop doubling when gamma moves less
    double gap_threshold = 1e-6;   // multiplet-to-rest gap floor
    double cluster_rtol = 1e-5;    // multiplet splitting vs gap
    double overlap_floor = 1e-6;   // Abelian node-overlap magnitude floor
    double det_floor = 1e-8;       // non-Abelian overlap-determinant floor
    SolverOptions solver;
};

/// Ground multiplets of the twisted Hamiltonian along a uniform phi grid
/// over [0, 2pi). The twisted link is a single exchange term
/// e^{-i phi} S+_p S-_q + H.c.; p and q must sit in different sublattices.
struct BerryPath {
    int site_p = 0, site_q = 1;
    int d = 1;
    std::vector<double> phi;
    std::vector<Eigen::MatrixXcd> multiplets; // one dim x d block per node
    double min_gap = 0.0;
};

BerryPath twisted_ground_multiplet(const CouplingMatrix& cm, int n_up,
                                   double theta, int site_p, int site_q,
                                   int k_nodes, int d,
                                   const BerryOptions& options = {});

/// gamma = -sum_n arg<psi_n|psi_{n+1}>, closed over the grid, in [0, 2pi).
double abelian_berry_phase(const BerryPath& path,
                           const BerryOptions& options = {});

/// gamma = -sum_n arg det(Phi_n) over the d-dimensional multiplet.
double non_abelian_berry_phase(const BerryPath& path,
                               const BerryOptions& options = {});

struct BerryReport {
    double gamma = 0.0;
    int k_used = 0;
    double min_gap = 0.0;
    bool quantized = false; // within 1e-2 * 2pi of 0 or pi
};

/// Doubles the grid from options.k_nodes until the phase settles.
BerryReport berry_phase_adaptive(const CouplingMatrix& cm, int n_up,
                                 double theta, int site_p, int site_q, int d,
                                 const BerryOptions& options = {});

enum class SptClass { Trivial, Nontrivial, Unquantized };

/// Maps (gamma_intra, gamma_inter) snapped to {0, pi} onto the SPT label:
/// (pi, 0) -> Trivial, (0, pi) -> Nontrivial.
SptClass classify_spt(double gamma_intra, double gamma_inter,
                      double tol = 2.0 * M_PI * 1e-2);

} // namespace wqed
