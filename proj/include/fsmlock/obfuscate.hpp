#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsmlock/bitstring.hpp"
#include "fsmlock/fsm.hpp"
#include "fsmlock/params.hpp"

namespace fsmlock {

/// Per-step transition determiners d_0..d_{n-1}, each < 2^b.
struct KeySchedule {
    unsigned selector_bits = 0;
    std::vector<std::uint64_t> determiners;

    bool operator==(const KeySchedule &) const = default;
};

/// Shape of the alternating-layer baseline: M layers, single-state layers
/// interleaved with layers of m states.
struct LayeredParams {
    unsigned branch_count = 0; // m
    unsigned layer_count = 0;  // M

    bool operator==(const LayeredParams &) const = default;
};

enum class SchemeKind { proposed, layered };

/**
 * A locked machine: the original FSM behind a key-port-driven dummy chain.
 *
 * `layers` lists the dummy states in traversal order. The proposed scheme
 * has one state per layer (DS0..DS{n-1}); the layered baseline alternates
 * one state and m states per layer. Walking layer 0 to the last layer and
 * then leaving to `original_reset` is the unlock path. The key port is the
 * `selector_bits` least-significant input positions of `fsm`.
 */
struct BoostedFsm {
    Fsm fsm;
    std::vector<std::vector<std::string>> layers{};
    std::vector<std::string> black_holes{};
    std::string original_reset{};
    unsigned selector_bits = 0;
    SchemeKind scheme = SchemeKind::proposed;
    std::optional<LockParams> params{};     // proposed only
    std::optional<LayeredParams> layered{}; // layered only

    std::vector<std::string> dummy_states() const;
    std::size_t chain_length() const { return layers.size(); }
    std::size_t original_inputs_width() const { return fsm.inputs_width() - selector_bits; }
    std::size_t response_width() const;
    std::size_t license_width() const;
    bool is_black_hole(std::string_view state) const;
    bool is_dummy(std::string_view state) const;
};

/// Value of bits[j*b + b - 1 .. j*b]. Throws WidthError when out of range.
std::uint64_t chunk(const BitString &bits, std::size_t index, unsigned width);

/// d_i = puf chunk i/2 for even i, (puf XOR license) chunk (i-1)/2 for odd i.
KeySchedule determiners(const BitString &puf, const BitString &license, const LockParams &params);

/// Key values a layered machine expects: odd layers take a PUF chunk, even
/// layers take PUF chunk XOR license chunk.
KeySchedule layered_determiners(const BitString &puf, const BitString &license, const LayeredParams &lp);

/// Key sequence that drives `locked` for the given response/license pair.
KeySchedule key_sequence(const BoostedFsm &locked, const BitString &response, const BitString &license);

/// Deterministic L-bit license derived from `seed`.
BitString random_license(std::uint64_t seed, std::size_t license_bits);

/// Proposed scheme with parameters from optimize(L).
BoostedFsm build_bfsm(const Fsm &original, const BitString &puf, const BitString &license,
                      std::uint64_t wiring_seed);
/// Proposed scheme with explicit parameters.
BoostedFsm build_bfsm(const Fsm &original, const BitString &puf, const BitString &license,
                      const LockParams &params, std::uint64_t wiring_seed);

/// Alternating-layer baseline. PUF width M*ceil(log2 m), license width
/// (M/2)*ceil(log2 m).
BoostedFsm build_layered(const Fsm &original, const BitString &puf, const BitString &license,
                         const LayeredParams &lp);

/// Recovers the lock metadata of a machine previously produced by
/// build_bfsm/build_layered (e.g. after a KISS2 round trip) from its state
/// names and structure. Throws Error when `fsm` is not such a machine.
BoostedFsm infer_boosted(const Fsm &fsm);

} // namespace fsmlock
