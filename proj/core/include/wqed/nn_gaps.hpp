#pragma once

namespace wqed {

struct GapEstimate {
    double value = 0.0; // units of jtilde
    bool perturbative_warning = false;
};

/// Single-magnon gap over the fully polarized state of the NN XXZ chain:
/// dE = -|sin theta| - cos theta + mu (mu in units of jtilde). Exact.
GapEstimate magnon_gap_nn(double theta, double mu);

/// Two-spinon gap over the Neel state, perturbative in the exchange:
/// dE ~ cos theta - 2|sin theta| - mu. Flagged outside |theta| < pi/8.
GapEstimate spinon_gap_nn(double theta, double mu);

} // namespace wqed
