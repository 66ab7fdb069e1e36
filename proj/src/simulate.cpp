#include "fsmlock/simulate.hpp"

#include <algorithm>
#include <thread>

#include "fsmlock/error.hpp"

namespace fsmlock {

namespace {

/// Per-machine lookup tables shared read-only by sweep workers.
class ChainWalker {
public:
    explicit ChainWalker(const BoostedFsm &locked)
        : locked_(locked), layer_of_(locked.fsm.states().size(), -1),
          exit_(locked.fsm.index_of(locked.original_reset))
    {
        for (std::size_t l = 0; l < locked.layers.size(); ++l) {
            for (const std::string &s : locked.layers[l]) {
                layer_of_[locked.fsm.index_of(s)] = static_cast<int>(l);
            }
        }
    }

    UnlockOutcome walk(const KeySchedule &keys) const
    {
        const Fsm &fsm = locked_.fsm;
        const BitString idle(locked_.original_inputs_width());
        const std::size_t chain = locked_.chain_length();
        std::size_t state = fsm.reset_index();
        for (std::size_t j = 0; j < chain; ++j) {
            BitString input = BitString::concat(idle, BitString::from_uint(keys.determiners[j], locked_.selector_bits));
            std::size_t next = fsm.step_index(state, input);
            bool on_path = j + 1 < chain ? layer_of_[next] == static_cast<int>(j + 1) : next == exit_;
            if (!on_path) {
                return Trapped{fsm.states()[next], j};
            }
            state = next;
        }
        return Unlocked{chain};
    }

private:
    const BoostedFsm &locked_;
    std::vector<int> layer_of_;
    std::size_t exit_;
};

template <typename Probe>
EnumerationReport sweep(std::size_t width, const SweepOptions &options, Probe probe)
{
    if (width > options.guard_bits || width >= 63) {
        throw GuardExceeded("sweep over " + std::to_string(width) + " bits exceeds the " +
                            std::to_string(options.guard_bits) + "-bit guard");
    }
    const std::uint64_t space = std::uint64_t{1} << width;
    const unsigned workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads == 0 ? 1 : options.threads, 1, space));

    struct Partial {
        std::uint64_t count = 0;
        std::vector<BitString> examples;
    };
    std::vector<Partial> partials(workers);
    auto run = [&](unsigned w) {
        const std::uint64_t lo = space * w / workers;
        const std::uint64_t hi = space * (w + 1) / workers;
        Partial &part = partials[w];
        for (std::uint64_t v = lo; v < hi; ++v) {
            BitString candidate = BitString::from_uint(v, width);
            if (probe(candidate)) {
                ++part.count;
                if (part.examples.size() < 8) {
                    part.examples.push_back(std::move(candidate));
                }
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(run, w);
        }
    }

    EnumerationReport report;
    report.space_size = space;
    for (Partial &part : partials) {
        report.valid_count += part.count;
        for (BitString &ex : part.examples) {
            if (report.valid_examples.size() < 8) {
                report.valid_examples.push_back(std::move(ex));
            }
        }
    }
    return report;
}

} // namespace

UnlockOutcome run_unlock(const BoostedFsm &locked, const BitString &response, const BitString &license)
{
    return ChainWalker(locked).walk(key_sequence(locked, response, license));
}

EnumerationReport count_valid_responses(const BoostedFsm &locked, const BitString &license,
                                        const SweepOptions &options)
{
    if (license.width() != locked.license_width()) {
        throw WidthError("license width " + std::to_string(license.width()) + ", expected " +
                         std::to_string(locked.license_width()));
    }
    ChainWalker walker(locked);
    return sweep(locked.response_width(), options, [&](const BitString &response) {
        return is_unlocked(walker.walk(key_sequence(locked, response, license)));
    });
}

EnumerationReport count_valid_licenses(const BoostedFsm &locked, const BitString &response,
                                       const SweepOptions &options)
{
    if (response.width() != locked.response_width()) {
        throw WidthError("response width " + std::to_string(response.width()) + ", expected " +
                         std::to_string(locked.response_width()));
    }
    ChainWalker walker(locked);
    return sweep(locked.license_width(), options, [&](const BitString &license) {
        return is_unlocked(walker.walk(key_sequence(locked, response, license)));
    });
}

Rational unlock_probability_layered(unsigned branch_count, unsigned layer_count)
{
    states_added_layered(branch_count, layer_count); // shape check
    const unsigned k = layered_selector_bits(branch_count);
    BigInt paths = boost::multiprecision::pow(BigInt(branch_count), layer_count / 2);
    BigInt space = BigInt(1) << (std::size_t{layer_count} * k);
    return Rational(paths - 1, space);
}

Rational unlock_probability_proposed()
{
    // A single path through the chain: (1 - 1) / 2^R.
    return Rational(0);
}

TraceVerdict trace_equivalence(const Fsm &original, const BoostedFsm &locked, const BitString &response,
                               const BitString &license, const std::vector<BitString> &inputs)
{
    if (!is_unlocked(run_unlock(locked, response, license))) {
        return TraceVerdict::not_unlocked;
    }
    const Fsm &bfsm = locked.fsm;
    const BitString key_idle(locked.selector_bits);
    std::size_t locked_state = bfsm.index_of(locked.original_reset);
    std::size_t orig_state = original.reset_index();
    if (bfsm.states()[locked_state] != original.states()[orig_state]) {
        return TraceVerdict::mismatch;
    }
    BitString locked_out, orig_out;
    for (const BitString &input : inputs) {
        locked_state = bfsm.step_index(locked_state, BitString::concat(input, key_idle), &locked_out);
        orig_state = original.step_index(orig_state, input, &orig_out);
        if (locked_out != orig_out || bfsm.states()[locked_state] != original.states()[orig_state]) {
            return TraceVerdict::mismatch;
        }
    }
    return TraceVerdict::equivalent;
}

} // namespace fsmlock
