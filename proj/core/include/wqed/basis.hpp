#pragma once

#include <cstdint>
#include <vector>

#include "wqed/errors.hpp"

namespace wqed {

/// Ordered enumeration of all N-site configurations with a fixed number of up
/// spins. Configurations are bit patterns (site 0 = least significant bit,
/// bit set = spin up), listed in increasing integer order.
class SectorBasis {
public:
    SectorBasis() = default;
    SectorBasis(int n_spins, int n_up, std::size_t dimension_cap = 20'000'000);

    int n_spins() const { return n_spins_; }
    int n_up() const { return n_up_; }
    /// Total S^z eigenvalue of the sector, m = n_up - N/2 (N even).
    int magnetization() const { return n_up_ - n_spins_ / 2; }
    std::size_t size() const { return states_.size(); }

    std::uint64_t state(std::size_t index) const { return states_[index]; }
    const std::vector<std::uint64_t>& states() const { return states_; }

    /// Ordinal of a configuration; throws SectorMismatch if it is not in
    /// this sector.
    std::size_t index_of(std::uint64_t config) const;

private:
    int n_spins_ = 0;
    int n_up_ = 0;
    std::vector<std::uint64_t> states_;
};

std::uint64_t binomial(int n, int k);

inline SectorBasis enumerate_sector(int n_spins, int n_up,
                                    std::size_t dimension_cap = 20'000'000) {
    return SectorBasis(n_spins, n_up, dimension_cap);
}

} // namespace wqed
