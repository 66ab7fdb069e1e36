#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fsmlock/bitstring.hpp"

namespace fsmlock {

/// Cube over {0, 1, -}, written MSB-first like BitString.
class TernaryPattern {
public:
    TernaryPattern() = default;
    /// Throws ParseError on characters outside {0, 1, -}.
    explicit TernaryPattern(std::string chars);

    static TernaryPattern dont_care(std::size_t width) { return TernaryPattern(std::string(width, '-')); }
    static TernaryPattern from_bits(const BitString &bits) { return TernaryPattern(bits.str()); }

    std::size_t width() const { return chars_.size(); }
    const std::string &str() const { return chars_; }

    /// Throws WidthError when widths differ.
    bool matches(const BitString &value) const;
    /// Don't-care positions resolve to 0.
    BitString resolve() const;

    TernaryPattern concat(const TernaryPattern &low) const { return TernaryPattern(chars_ + low.chars_); }

    bool operator==(const TernaryPattern &) const = default;
    auto operator<=>(const TernaryPattern &) const = default;

private:
    std::string chars_;
};

struct Transition {
    TernaryPattern input;
    std::string src;
    std::string dst;
    TernaryPattern output;

    bool operator==(const Transition &) const = default;
    auto operator<=>(const Transition &) const = default;
};

struct StepResult {
    std::string state;
    BitString output;
};

/**
 * Mealy machine with ternary input/output cubes. Immutable after
 * construction; the constructor validates every structural invariant.
 *
 * Transitions fire first-match in stored order. A (state, input) pair with
 * no matching transition stalls: the state is kept and all outputs are 0.
 */
class Fsm {
public:
    Fsm(std::size_t inputs_width, std::size_t outputs_width, std::vector<std::string> states,
        std::string reset_state, std::vector<Transition> transitions);

    std::size_t inputs_width() const { return inputs_width_; }
    std::size_t outputs_width() const { return outputs_width_; }
    const std::vector<std::string> &states() const { return states_; }
    const std::string &reset_state() const { return states_[reset_]; }
    const std::vector<Transition> &transitions() const { return transitions_; }

    bool has_state(std::string_view name) const;
    /// Position in states(); throws Error for unknown names.
    std::size_t index_of(std::string_view name) const;
    std::size_t reset_index() const { return reset_; }

    StepResult step(std::string_view state, const BitString &input) const;

    /// Index-based step for hot loops. Returns the successor index and, if
    /// `output` is non-null, stores the resolved output there.
    std::size_t step_index(std::size_t state, const BitString &input, BitString *output = nullptr) const;

    /// Indices into transitions() of the edges leaving `state`, in order.
    const std::vector<std::size_t> &outgoing(std::size_t state) const { return outgoing_[state]; }

private:
    std::size_t inputs_width_;
    std::size_t outputs_width_;
    std::vector<std::string> states_;
    std::size_t reset_ = 0;
    std::vector<Transition> transitions_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> outgoing_;
    std::vector<std::size_t> dst_index_;
};

/// Least fixed point of the successor relation containing `from`.
std::set<std::string> reachable_states(const Fsm &fsm, std::string_view from);

} // namespace fsmlock
