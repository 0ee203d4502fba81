#include "wqed/nn_gaps.hpp"

#include <cmath>

namespace wqed {

GapEstimate magnon_gap_nn(double theta, double mu) {
    return {-std::abs(std::sin(theta)) - std::cos(theta) + mu, false};
}

GapEstimate spinon_gap_nn(double theta, double mu) {
    GapEstimate gap;
    gap.value = std::cos(theta) - 2.0 * std::abs(std::sin(theta)) - mu;
    gap.perturbative_warning = std::abs(theta) >= M_PI / 8.0;
    return gap;
}

} // namespace wqed
