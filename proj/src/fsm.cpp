#include "fsmlock/fsm.hpp"

#include <algorithm>

#include "fsmlock/error.hpp"

namespace fsmlock {

TernaryPattern::TernaryPattern(std::string chars) : chars_(std::move(chars))
{
    auto bad = std::find_if(chars_.begin(), chars_.end(), [](char c) { return c != '0' && c != '1' && c != '-'; });
    if (bad != chars_.end()) {
        throw ParseError("pattern '" + chars_ + "' contains '" + std::string(1, *bad) + "'", 0);
    }
}

bool TernaryPattern::matches(const BitString &value) const
{
    if (value.width() != chars_.size()) {
        throw WidthError("pattern width " + std::to_string(chars_.size()) + " vs value width " +
                         std::to_string(value.width()));
    }
    const std::size_t w = chars_.size();
    for (std::size_t p = 0; p < w; ++p) {
        char c = chars_[p];
        if (c != '-' && (c == '1') != value.bit(w - 1 - p)) {
            return false;
        }
    }
    return true;
}

BitString TernaryPattern::resolve() const
{
    const std::size_t w = chars_.size();
    BitString out(w);
    for (std::size_t p = 0; p < w; ++p) {
        out.set(w - 1 - p, chars_[p] == '1');
    }
    return out;
}

Fsm::Fsm(std::size_t inputs_width, std::size_t outputs_width, std::vector<std::string> states,
         std::string reset_state, std::vector<Transition> transitions)
    : inputs_width_(inputs_width), outputs_width_(outputs_width), states_(std::move(states)),
      transitions_(std::move(transitions))
{
    if (states_.empty()) {
        throw Error("FSM has no states");
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i].empty()) {
            throw Error("empty state name");
        }
        if (!index_.emplace(states_[i], i).second) {
            throw Error("duplicate state '" + states_[i] + "'");
        }
    }
    auto reset = index_.find(reset_state);
    if (reset == index_.end()) {
        throw Error("reset state '" + reset_state + "' is not a state");
    }
    reset_ = reset->second;

    outgoing_.resize(states_.size());
    dst_index_.reserve(transitions_.size());
    for (std::size_t t = 0; t < transitions_.size(); ++t) {
        const Transition &tr = transitions_[t];
        if (tr.input.width() != inputs_width_ || tr.output.width() != outputs_width_) {
            throw WidthError("transition " + tr.src + " -> " + tr.dst + " has widths " +
                             std::to_string(tr.input.width()) + "/" + std::to_string(tr.output.width()) +
                             ", expected " + std::to_string(inputs_width_) + "/" + std::to_string(outputs_width_));
        }
        outgoing_[index_of(tr.src)].push_back(t);
        dst_index_.push_back(index_of(tr.dst));
    }
}

bool Fsm::has_state(std::string_view name) const { return index_.contains(std::string(name)); }

std::size_t Fsm::index_of(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        throw Error("unknown state '" + std::string(name) + "'");
    }
    return it->second;
}

std::size_t Fsm::step_index(std::size_t state, const BitString &input, BitString *output) const
{
    if (input.width() != inputs_width_) {
        throw WidthError("input width " + std::to_string(input.width()) + ", machine expects " +
                         std::to_string(inputs_width_));
    }
    for (std::size_t t : outgoing_.at(state)) {
        if (transitions_[t].input.matches(input)) {
            if (output) {
                *output = transitions_[t].output.resolve();
            }
            return dst_index_[t];
        }
    }
    if (output) {
        *output = BitString(outputs_width_);
    }
    return state;
}

StepResult Fsm::step(std::string_view state, const BitString &input) const
{
    StepResult r;
    std::size_t next = step_index(index_of(state), input, &r.output);
    r.state = states_[next];
    return r;
}

std::set<std::string> reachable_states(const Fsm &fsm, std::string_view from)
{
    std::vector<bool> seen(fsm.states().size(), false);
    std::vector<std::size_t> work{fsm.index_of(from)};
    seen[work.back()] = true;
    while (!work.empty()) {
        std::size_t s = work.back();
        work.pop_back();
        for (std::size_t t : fsm.outgoing(s)) {
            std::size_t d = fsm.index_of(fsm.transitions()[t].dst);
            if (!seen[d]) {
                seen[d] = true;
                work.push_back(d);
            }
        }
    }
    std::set<std::string> out;
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i]) {
            out.insert(fsm.states()[i]);
        }
    }
    return out;
}

} // namespace fsmlock
