#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wqed/couplings.hpp"
#include "wqed/sector_hamiltonian.hpp"

namespace wqed {

enum class SpinOp { Plus, Minus, Z };

struct SiteOp {
    SpinOp op;
    int site;
};

/// One weighted operator string; `ops` is written left to right and applied
/// right to left, operator-composition style.
struct OpTerm {
    Complex coeff{1.0, 0.0};
    std::vector<SiteOp> ops;
};

/// <bra| op-string |ket> on a fixed magnetization sector. Strings that leave
/// the sector contribute zero.
Complex matrix_element(const SectorBasis& basis, const Eigen::VectorXcd& bra,
                       const Eigen::VectorXcd& ket,
                       const std::vector<SiteOp>& ops);

/// Expectation of a sum of strings under the equal-weight mixture of the
/// state columns.
Complex expectation(const SectorBasis& basis, const Eigen::MatrixXcd& states,
                    const std::vector<OpTerm>& terms);

/// Per-site <S^z_j>; the sum equals the sector magnetization exactly.
Eigen::VectorXd local_magnetization(const SectorBasis& basis,
                                    const Eigen::MatrixXcd& states);

struct CorrelationProfile {
    char axis = 'z'; // 'x', 'y' or 'z'
    int reference = 0;
    std::vector<double> values; // connected C(r), r = 1..r_max
};

/// Connected correlator C(r) = <S^a_c S^a_{c+r}> - <S^a_c><S^a_{c+r}> from
/// the reference site (default floor(N/2)). x and y use the sector-preserving
/// ladder form and are equal by construction.
CorrelationProfile two_point_correlations(const SectorBasis& basis,
                                          const Eigen::MatrixXcd& states,
                                          char axis, int r_max,
                                          std::optional<int> reference = {});

/// <S_n . S_{n+1}> for the bond starting at site n (PBC wraps).
double bond_energy(const SectorBasis& basis, const Eigen::MatrixXcd& states,
                   int n, Boundary boundary);

struct BondOrderResult {
    int period = 0;
    Complex order{};      // O_p
    int window_start = 0; // first bond index n0
    int window_length = 0;
};

/// O_p = (1/L) sum_{n=n0}^{n0+L-1} <S_n . S_{n+1}> e^{-i 2 pi n / p}.
/// Default window: full ring (PBC) or the central half of the chain (OBC).
BondOrderResult bond_order(const SectorBasis& basis,
                           const Eigen::MatrixXcd& states, int period,
                           Boundary boundary,
                           std::optional<std::pair<int, int>> window = {});

/// Bond-bond correlator D(r) = <B^a_n B^a_{n+r}> with B^a_j = S^a_j S^a_{j+1}.
double bond_bond_correlator(const SectorBasis& basis,
                            const Eigen::MatrixXcd& states, int n, int r,
                            char axis, Boundary boundary);

enum class MultipolarKind { C2, C3, CKappa };

/// Two-magnon, three-magnon and chirality correlators at separation r,
/// averaged over the placements closest to the middle of the chain.
Complex multipolar_correlator(const SectorBasis& basis,
                              const Eigen::MatrixXcd& states,
                              MultipolarKind kind, int r);

} // namespace wqed
