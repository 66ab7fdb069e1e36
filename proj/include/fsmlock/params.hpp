#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fsmlock {

using BigInt = boost::multiprecision::cpp_int;

/// Dummy-FSM sizing for a license of `license_bits` bits.
struct LockParams {
    unsigned license_bits = 0;  // L
    unsigned selector_bits = 0; // b, key-port width
    unsigned dummy_states = 0;  // n = 2L / b
    std::uint64_t black_holes = 0; // h = 2^b - 1
    std::uint64_t added_states = 0; // SN = n + h

    bool operator==(const LockParams &) const = default;
};

/// Every b >= 1 dividing L, ascending. Throws InfeasibleParams for L = 0.
std::vector<unsigned> feasible_selector_widths(unsigned license_bits);

/// (2^b - 1) + 2L/b. Throws InfeasibleParams unless b divides L.
BigInt states_added(unsigned license_bits, unsigned selector_bits);

/// Integer argmin of states_added over the feasible widths, ties toward smaller b.
LockParams optimize(unsigned license_bits);

/// Real root of 2^b * b^2 = 2L / ln 2, by bisection to 1e-9.
double continuous_optimum_b(double license_bits);

/// (M/2) * (1 + m) for the alternating-layer baseline. Throws
/// InfeasibleParams unless m >= 2, M >= 2 and M is even.
std::uint64_t states_added_layered(unsigned branch_count, unsigned layer_count);

/// ceil(log2 m): key-port width of the layered baseline.
unsigned layered_selector_bits(unsigned branch_count);

/// Added states the layered baseline is cited with at (m=3, M=178); the
/// layer formula gives 356.
inline constexpr std::uint64_t kCitedLayeredStatesAt128 = 365;

} // namespace fsmlock
