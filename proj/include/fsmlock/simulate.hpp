#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsmlock/bitstring.hpp"
#include "fsmlock/obfuscate.hpp"

namespace fsmlock {

using Rational = boost::multiprecision::cpp_rational;

struct Unlocked {
    std::size_t steps_taken = 0;
    bool operator==(const Unlocked &) const = default;
};

/// The chain was left at `step_index`; `state` is where the machine went
/// (a black hole, or the restart state of the layered baseline).
struct Trapped {
    std::string state;
    std::size_t step_index = 0;
    bool operator==(const Trapped &) const = default;
};

using UnlockOutcome = std::variant<Unlocked, Trapped>;

inline bool is_unlocked(const UnlockOutcome &outcome) { return std::holds_alternative<Unlocked>(outcome); }

struct EnumerationReport {
    std::uint64_t space_size = 0;
    std::uint64_t valid_count = 0;
    std::vector<BitString> valid_examples; // first (up to 8) valid values, ascending

    bool operator==(const EnumerationReport &) const = default;
};

struct SweepOptions {
    std::size_t guard_bits = 24;
    unsigned threads = 1;
};

/// Drives the key port from reset with the response/license key sequence;
/// original inputs are held at 0. Throws WidthError on width mismatch.
UnlockOutcome run_unlock(const BoostedFsm &locked, const BitString &response, const BitString &license);

/// Tries every response of the machine's response width with `license` fixed.
EnumerationReport count_valid_responses(const BoostedFsm &locked, const BitString &license,
                                        const SweepOptions &options = {});

/// Tries every license with `response` fixed.
EnumerationReport count_valid_licenses(const BoostedFsm &locked, const BitString &response,
                                       const SweepOptions &options = {});

/// (m^{M/2} - 1) / 2^{M * ceil(log2 m)}, exact.
Rational unlock_probability_layered(unsigned branch_count, unsigned layer_count);

/// Unauthorized-device unlock probability of the single-path chain: 0.
Rational unlock_probability_proposed();

enum class TraceVerdict { equivalent, mismatch, not_unlocked };

/**
 * Unlocks `locked`, then feeds `inputs` (original-width vectors, key port 0)
 * to both machines and compares the state and output traces against
 * `original` started from its reset state.
 */
TraceVerdict trace_equivalence(const Fsm &original, const BoostedFsm &locked, const BitString &response,
                               const BitString &license, const std::vector<BitString> &inputs);

} // namespace fsmlock
