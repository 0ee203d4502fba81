#include "wqed/basis.hpp"

#include <algorithm>
#include <bit>

namespace wqed {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

SectorBasis::SectorBasis(int n_spins, int n_up, std::size_t dimension_cap)
    : n_spins_(n_spins), n_up_(n_up) {
    if (n_spins < 1 || n_spins > 30 || n_up < 0 || n_up > n_spins)
        throw InvalidParameter("invalid sector (need 0 <= n_up <= N <= 30)");
    const std::uint64_t dim = binomial(n_spins, n_up);
    if (dim > dimension_cap)
        throw DimensionOverflow("sector dimension exceeds configured cap");

    states_.reserve(dim);
    if (n_up == 0) {
        states_.push_back(0);
        return;
    }
    std::uint64_t v = (std::uint64_t{1} << n_up) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n_spins;
    while (v < limit) {
        states_.push_back(v);
        // Gosper's hack: next bit pattern with the same popcount.
        const std::uint64_t t = v | (v - 1);
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    }
}

std::size_t SectorBasis::index_of(std::uint64_t config) const {
    const auto it = std::lower_bound(states_.begin(), states_.end(), config);
    if (it == states_.end() || *it != config)
        throw SectorMismatch("configuration does not belong to this sector");
    return static_cast<std::size_t>(it - states_.begin());
}

} // namespace wqed
