#include "fsmlock/params.hpp"

#include <cmath>
#include <string>

#include "fsmlock/error.hpp"

namespace fsmlock {

std::vector<unsigned> feasible_selector_widths(unsigned license_bits)
{
    if (license_bits == 0) {
        throw InfeasibleParams("license length must be at least 1 bit");
    }
    std::vector<unsigned> widths;
    for (unsigned b = 1; b <= license_bits; ++b) {
        if (license_bits % b == 0) {
            widths.push_back(b);
        }
    }
    return widths;
}

BigInt states_added(unsigned license_bits, unsigned selector_bits)
{
    if (license_bits == 0 || selector_bits == 0 || license_bits % selector_bits != 0) {
        throw InfeasibleParams("selector width " + std::to_string(selector_bits) + " does not divide license length " +
                               std::to_string(license_bits));
    }
    BigInt black_holes = (BigInt(1) << selector_bits) - 1;
    return black_holes + 2 * (license_bits / selector_bits);
}

LockParams optimize(unsigned license_bits)
{
    std::vector<unsigned> widths = feasible_selector_widths(license_bits);
    unsigned best = widths.front();
    BigInt best_sn = states_added(license_bits, best);
    for (unsigned b : widths) {
        BigInt sn = states_added(license_bits, b);
        if (sn < best_sn) { // strict: ties keep the smaller b
            best = b;
            best_sn = sn;
        }
    }
    if (best >= 63) {
        throw InfeasibleParams("optimal selector width " + std::to_string(best) + " too wide");
    }
    LockParams p;
    p.license_bits = license_bits;
    p.selector_bits = best;
    p.dummy_states = 2 * license_bits / best;
    p.black_holes = (std::uint64_t{1} << best) - 1;
    p.added_states = p.dummy_states + p.black_holes;
    return p;
}

double continuous_optimum_b(double license_bits)
{
    // b ln2 + 2 ln b is strictly increasing on b > 0.
    const double target = std::log(2.0 * license_bits / std::log(2.0));
    auto f = [&](double b) { return b * std::log(2.0) + 2.0 * std::log(b) - target; };
    double lo = 1e-12;
    double hi = 1.0;
    while (f(hi) < 0) {
        hi *= 2;
    }
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::uint64_t states_added_layered(unsigned branch_count, unsigned layer_count)
{
    if (branch_count < 2 || layer_count < 2 || layer_count % 2 != 0) {
        throw InfeasibleParams("layered scheme needs m >= 2 and an even M >= 2 (got m=" +
                               std::to_string(branch_count) + ", M=" + std::to_string(layer_count) + ")");
    }
    return std::uint64_t{layer_count / 2} * (1 + branch_count);
}

unsigned layered_selector_bits(unsigned branch_count)
{
    unsigned k = 0;
    while ((std::uint64_t{1} << k) < branch_count) {
        ++k;
    }
    return k;
}

} // namespace fsmlock
