#pragma once

#include <Eigen/Dense>
#include <string>

#include "wqed/errors.hpp"

namespace wqed {

enum class Bandgap { Lower, Middle, Upper };
enum class Boundary { OBC, PBC };
enum class PairKind { AB, BA, AA, BB };
enum class Region { LowerUpperOnly, MiddleOnly, Boundary };

std::string to_string(Bandgap b);
std::string to_string(Boundary b);

/// Bath parameters of the photonic SSH waveguide plus emitter detuning and
/// light-matter coupling. Energies are measured from the bath resonance.
struct PhysicalBathParams {
    double hopping = 1.0;      // J > 0
    double dimerization = 0.0; // delta in (-1, 1)
    double detuning = 0.0;     // Delta
    double coupling = 0.1;     // g > 0
};

/// The reduced parameter set that fully determines every mediated coupling
/// J_n^{ab}: which bandgap, the interaction length xi, the effective
/// dimerization, the overall amplitude, and the sign of the detuning.
/// The same-sublattice ratio eta is derived, never free.
struct EffectiveCouplings {
    Bandgap bandgap = Bandgap::Lower;
    double xi = 1.0;        // interaction length, >= 0
    double delta_eff = 0.0; // effective dimerization, in [-1, 1]
    double jtilde = 1.0;    // amplitude, > 0
    int detuning_sign = -1; // sign of Delta

    double eta() const; // [e^{-1/xi}(1 - delta_eff^2)]^{1/2}

    /// Validating constructor. detuning_sign 0 picks the natural default
    /// (-1 for Lower, +1 for Upper and Middle).
    static EffectiveCouplings make(Bandgap bandgap, double xi, double delta_eff,
                                   double jtilde = 1.0, int detuning_sign = 0);
};

/// Classify which bandgap(s) can realize a given (xi, delta_eff) pair.
/// The dividing line is |delta_eff| = (1 - e^{-1/xi})/(1 + e^{-1/xi});
/// below it only the outer bandgaps are possible, above it only the middle one.
Region feasible_region_check(double xi, double delta_eff);

/// Threshold (1 - e^{-1/xi})/(1 + e^{-1/xi}) separating the two regions.
double region_threshold(double xi);

/// Reduce physical bath parameters to the effective coupling set.
/// Throws DetuningInBand if Delta lies inside an energy band and
/// DegenerateBath for the delta = 0, Delta = 0 band-touching point.
EffectiveCouplings effective_from_physical(const PhysicalBathParams& p);

/// Mediated coupling J_n^{ab} between a spin of sublattice a and the spin of
/// sublattice b located n unit cells to its right. Returns the absolute
/// energy (the c.jtilde factor is included).
/// J_0^{BA} = J_0^{AA} = J_0^{BB} = 0 by definition.
double coupling_constant(const EffectiveCouplings& c, int n, PairKind pair);

/// Re Sigma_n^{ab}(Delta + i0+), the real part of the collective self-energy
/// evaluated directly from the bath parameters. Independent route to the
/// coupling constants, used for cross-validation.
double self_energy_real(const PhysicalBathParams& p, int n, PairKind pair);

/// Realized interaction matrix on a finite chain. Entries are stored in units
/// of jtilde, symmetric with zero diagonal. Site i belongs to sublattice A if
/// i is even, B if odd; site index = 2*cell + (0 for A, 1 for B).
struct CouplingMatrix {
    int n_spins = 0;
    Boundary boundary = Boundary::OBC;
    double jtilde = 1.0;
    int n_max = 0;
    bool cutoff_warning = false; // e^{-n_max/xi} > 1e-6
    Eigen::MatrixXd entries;     // units of jtilde

    std::string to_json() const;
};

/// Build the coupling matrix from the effective parameters. n_max = 0 picks
/// the default truncation min(ceil(30 xi) + 1, N). Entries below 1e-12 are
/// dropped. PBC uses the minimal-image connection on the ring; antipodal
/// pairs are counted once, keeping the stronger of the two candidate bonds.
CouplingMatrix build_coupling_matrix(const EffectiveCouplings& c, int n_spins,
                                     Boundary boundary, int n_max = 0,
                                     bool throw_on_small_cutoff = false);

// Fixed coupling patterns used by the exactly solvable reference models.

/// All-pairs J_ij = -jtilde (LBG infinite-range limit).
CouplingMatrix make_uniform_lbg(int n_spins, double jtilde = 1.0);
/// Cross-sublattice J = -jtilde, same-sublattice J = +jtilde (UBG limit).
CouplingMatrix make_uniform_ubg(int n_spins, double jtilde = 1.0);
/// Nearest-neighbour bonds -(1 \pm delta_eff) jtilde, alternating (xi -> 0).
CouplingMatrix make_nn_dimerized(int n_spins, double delta_eff,
                                 Boundary boundary = Boundary::OBC,
                                 double jtilde = 1.0);

} // namespace wqed
