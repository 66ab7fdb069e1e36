#include "fsmlock/obfuscate.hpp"

#include <algorithm>
#include <regex>

#include "fsmlock/error.hpp"
#include "fsmlock/puf.hpp"

namespace fsmlock {

namespace {

std::string width_msg(const char *what, std::size_t got, std::size_t want)
{
    return std::string(what) + " width " + std::to_string(got) + ", expected " + std::to_string(want);
}

/// Smallest suffix ("", "_1", "_2", ...) under which no original state
/// name looks like a generated DS/BH/L*S* name.
std::string pick_suffix(const Fsm &original)
{
    for (unsigned t = 0;; ++t) {
        std::string suffix = t == 0 ? "" : "_" + std::to_string(t);
        std::regex generated("(DS[0-9]+|BH[0-9]+|L[0-9]+S[0-9]+)" + suffix);
        bool clash = std::any_of(original.states().begin(), original.states().end(),
                                 [&](const std::string &s) { return std::regex_match(s, generated); });
        if (!clash) {
            return suffix;
        }
    }
}

TernaryPattern key_pattern(std::size_t original_inputs, std::uint64_t value, unsigned bits)
{
    return TernaryPattern::dont_care(original_inputs).concat(TernaryPattern::from_bits(BitString::from_uint(value, bits)));
}

/// Original transitions with the key port appended as don't-cares.
void append_original(const Fsm &original, unsigned key_bits, std::vector<Transition> &out)
{
    TernaryPattern key = TernaryPattern::dont_care(key_bits);
    for (const Transition &tr : original.transitions()) {
        out.push_back({tr.input.concat(key), tr.src, tr.dst, tr.output});
    }
}

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

} // namespace

std::vector<std::string> BoostedFsm::dummy_states() const
{
    std::vector<std::string> out;
    for (const auto &layer : layers) {
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::size_t BoostedFsm::response_width() const
{
    if (scheme == SchemeKind::proposed) {
        return params->license_bits;
    }
    return std::size_t{layered->layer_count} * selector_bits;
}

std::size_t BoostedFsm::license_width() const
{
    if (scheme == SchemeKind::proposed) {
        return params->license_bits;
    }
    return std::size_t{layered->layer_count / 2} * selector_bits;
}

bool BoostedFsm::is_black_hole(std::string_view state) const
{
    return std::find(black_holes.begin(), black_holes.end(), state) != black_holes.end();
}

bool BoostedFsm::is_dummy(std::string_view state) const
{
    return std::any_of(layers.begin(), layers.end(), [&](const std::vector<std::string> &layer) {
        return std::find(layer.begin(), layer.end(), state) != layer.end();
    });
}

std::uint64_t chunk(const BitString &bits, std::size_t index, unsigned width)
{
    if ((index + 1) * width > bits.width()) {
        throw WidthError("chunk " + std::to_string(index) + " of width " + std::to_string(width) +
                         " outside a " + std::to_string(bits.width()) + "-bit string");
    }
    return bits.slice(index * width, width);
}

KeySchedule determiners(const BitString &puf, const BitString &license, const LockParams &params)
{
    if (puf.width() != params.license_bits) {
        throw WidthError(width_msg("PUF response", puf.width(), params.license_bits));
    }
    if (license.width() != params.license_bits) {
        throw WidthError(width_msg("license", license.width(), params.license_bits));
    }
    const unsigned b = params.selector_bits;
    KeySchedule ks{b, {}};
    ks.determiners.reserve(params.dummy_states);
    for (std::size_t i = 0; i < params.dummy_states; ++i) {
        if (i % 2 == 0) {
            ks.determiners.push_back(chunk(puf, i / 2, b));
        } else {
            ks.determiners.push_back(chunk(puf, (i - 1) / 2, b) ^ chunk(license, (i - 1) / 2, b));
        }
    }
    return ks;
}

KeySchedule layered_determiners(const BitString &puf, const BitString &license, const LayeredParams &lp)
{
    states_added_layered(lp.branch_count, lp.layer_count); // shape check
    const unsigned k = layered_selector_bits(lp.branch_count);
    const std::size_t puf_bits = std::size_t{lp.layer_count} * k;
    const std::size_t license_bits = std::size_t{lp.layer_count / 2} * k;
    if (puf.width() != puf_bits) {
        throw WidthError(width_msg("PUF response", puf.width(), puf_bits));
    }
    if (license.width() != license_bits) {
        throw WidthError(width_msg("license", license.width(), license_bits));
    }
    KeySchedule ks{k, {}};
    for (std::size_t j = 0; j < lp.layer_count; ++j) {
        std::uint64_t v = chunk(puf, j, k);
        if (j % 2 == 1) {
            v ^= chunk(license, (j - 1) / 2, k);
        }
        ks.determiners.push_back(v);
    }
    return ks;
}

KeySchedule key_sequence(const BoostedFsm &locked, const BitString &response, const BitString &license)
{
    if (locked.scheme == SchemeKind::proposed) {
        return determiners(response, license, *locked.params);
    }
    return layered_determiners(response, license, *locked.layered);
}

BitString random_license(std::uint64_t seed, std::size_t license_bits)
{
    BitString out(license_bits);
    std::uint64_t word = 0;
    for (std::size_t k = 0; k < license_bits; ++k) {
        if (k % 64 == 0) {
            word = mix64(seed + (k / 64 + 1) * kGoldenGamma);
        }
        out.set(k, (word >> (k % 64)) & 1U);
    }
    return out;
}

BoostedFsm build_bfsm(const Fsm &original, const BitString &puf, const BitString &license, std::uint64_t wiring_seed)
{
    if (puf.width() == 0) {
        throw InfeasibleParams("license length must be at least 1 bit");
    }
    return build_bfsm(original, puf, license, optimize(static_cast<unsigned>(puf.width())), wiring_seed);
}

BoostedFsm build_bfsm(const Fsm &original, const BitString &puf, const BitString &license, const LockParams &params,
                      std::uint64_t wiring_seed)
{
    const unsigned b = params.selector_bits;
    if (b == 0 || b >= 32 || params.license_bits % b != 0 || params.dummy_states != 2 * params.license_bits / b ||
        params.black_holes != (std::uint64_t{1} << b) - 1 ||
        params.added_states != params.dummy_states + params.black_holes) {
        throw InfeasibleParams("inconsistent lock parameters");
    }
    const KeySchedule ks = determiners(puf, license, params);
    const std::string suffix = pick_suffix(original);
    const std::size_t in_w = original.inputs_width();
    const std::size_t out_w = original.outputs_width();
    const std::uint64_t h = params.black_holes;

    BoostedFsm locked{.fsm = original}; // replaced below
    locked.selector_bits = b;
    locked.scheme = SchemeKind::proposed;
    locked.params = params;
    locked.original_reset = original.reset_state();

    std::vector<std::string> states;
    for (std::size_t i = 0; i < params.dummy_states; ++i) {
        locked.layers.push_back({"DS" + std::to_string(i) + suffix});
        states.push_back(locked.layers.back().front());
    }
    for (std::uint64_t j = 0; j < h; ++j) {
        locked.black_holes.push_back("BH" + std::to_string(j) + suffix);
        states.push_back(locked.black_holes.back());
    }
    states.insert(states.end(), original.states().begin(), original.states().end());

    std::vector<Transition> transitions;
    const TernaryPattern idle = TernaryPattern::dont_care(out_w);
    for (std::size_t i = 0; i < params.dummy_states; ++i) {
        const std::uint64_t d = ks.determiners[i];
        const std::string &src = locked.layers[i].front();
        const std::string &next =
            i + 1 < params.dummy_states ? locked.layers[i + 1].front() : locked.original_reset;
        for (std::uint64_t v = 0; v <= h; ++v) {
            // k-th wrong value in ascending order goes to BH_k.
            const std::string &dst = v == d ? next : locked.black_holes[v < d ? v : v - 1];
            transitions.push_back({key_pattern(in_w, v, b), src, dst, idle});
        }
    }
    for (std::uint64_t j = 0; j < h; ++j) {
        std::uint64_t target = mix64(wiring_seed ^ mix64(j)) % h;
        transitions.push_back({TernaryPattern::dont_care(in_w + b), locked.black_holes[j], locked.black_holes[target], idle});
    }
    append_original(original, b, transitions);

    locked.fsm = Fsm(in_w + b, out_w, std::move(states), locked.layers.front().front(), std::move(transitions));
    return locked;
}

BoostedFsm build_layered(const Fsm &original, const BitString &puf, const BitString &license, const LayeredParams &lp)
{
    const KeySchedule ks = layered_determiners(puf, license, lp);
    const unsigned m = lp.branch_count;
    const unsigned M = lp.layer_count;
    const unsigned k = ks.selector_bits;
    const std::string suffix = pick_suffix(original);
    const std::size_t in_w = original.inputs_width();
    const std::size_t out_w = original.outputs_width();

    BoostedFsm locked{.fsm = original};
    locked.selector_bits = k;
    locked.scheme = SchemeKind::layered;
    locked.layered = lp;
    locked.original_reset = original.reset_state();

    std::vector<std::string> states;
    for (unsigned l = 0; l < M; ++l) {
        std::vector<std::string> layer;
        for (unsigned i = 0; i < (l % 2 == 0 ? 1U : m); ++i) {
            layer.push_back("L" + std::to_string(l) + "S" + std::to_string(i) + suffix);
            states.push_back(layer.back());
        }
        locked.layers.push_back(std::move(layer));
    }
    if (!is_power_of_two(m)) {
        locked.black_holes.push_back("BH0" + suffix);
        states.push_back(locked.black_holes.back());
    }
    states.insert(states.end(), original.states().begin(), original.states().end());

    const std::string &restart = locked.layers.front().front();
    const TernaryPattern idle = TernaryPattern::dont_care(out_w);
    std::vector<Transition> transitions;
    for (unsigned l = 0; l < M; ++l) {
        for (const std::string &src : locked.layers[l]) {
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
                std::string dst;
                if (l % 2 == 0) {
                    // Selects among the m states of the next layer.
                    dst = v < m ? locked.layers[l + 1][v] : locked.black_holes.front();
                } else if (v == ks.determiners[l]) {
                    dst = l + 1 < M ? locked.layers[l + 1].front() : locked.original_reset;
                } else {
                    dst = restart;
                }
                transitions.push_back({key_pattern(in_w, v, k), src, dst, idle});
            }
        }
    }
    for (const std::string &bh : locked.black_holes) {
        transitions.push_back({TernaryPattern::dont_care(in_w + k), bh, bh, idle});
    }
    append_original(original, k, transitions);

    locked.fsm = Fsm(in_w + k, out_w, std::move(states), restart, std::move(transitions));
    return locked;
}

BoostedFsm infer_boosted(const Fsm &fsm)
{
    const std::string &reset = fsm.reset_state();
    BoostedFsm locked{.fsm = fsm};

    auto collect = [&](const std::string &prefix, const std::string &suffix) {
        std::vector<std::string> names;
        while (fsm.has_state(prefix + std::to_string(names.size()) + suffix)) {
            names.push_back(prefix + std::to_string(names.size()) + suffix);
        }
        return names;
    };
    auto exit_of = [&](const std::vector<std::string> &last_layer) {
        for (const std::string &s : last_layer) {
            for (std::size_t t : fsm.outgoing(fsm.index_of(s))) {
                const std::string &dst = fsm.transitions()[t].dst;
                if (!locked.is_dummy(dst) && !locked.is_black_hole(dst)) {
                    return dst;
                }
            }
        }
        throw Error("locked machine has no exit from its dummy chain");
    };

    if (reset.starts_with("DS0")) {
        const std::string suffix = reset.substr(3);
        for (const std::string &s : collect("DS", suffix)) {
            locked.layers.push_back({s});
        }
        locked.black_holes = collect("BH", suffix);
        const std::uint64_t h = locked.black_holes.size();
        unsigned b = 0;
        while ((std::uint64_t{1} << b) - 1 < h) {
            ++b;
        }
        const std::size_t n = locked.layers.size();
        if (h == 0 || n == 0 || n % 2 != 0 || fsm.inputs_width() < b) {
            throw Error("'" + reset + "' chain does not have a consistent proposed-scheme shape");
        }
        LockParams p;
        p.license_bits = static_cast<unsigned>(n * b / 2);
        p.selector_bits = b;
        p.dummy_states = static_cast<unsigned>(n);
        p.black_holes = h;
        p.added_states = n + h;
        locked.scheme = SchemeKind::proposed;
        locked.selector_bits = b;
        locked.params = p;
    } else if (reset.starts_with("L0S0")) {
        const std::string suffix = reset.substr(4);
        for (unsigned l = 0; fsm.has_state("L" + std::to_string(l) + "S0" + suffix); ++l) {
            locked.layers.push_back(collect("L" + std::to_string(l) + "S", suffix));
        }
        if (locked.layers.size() < 2 || locked.layers.size() % 2 != 0) {
            throw Error("layered chain has " + std::to_string(locked.layers.size()) + " layers");
        }
        const auto m = static_cast<unsigned>(locked.layers[1].size());
        for (std::size_t l = 0; l < locked.layers.size(); ++l) {
            if (locked.layers[l].size() != (l % 2 == 0 ? 1U : m)) {
                throw Error("layer " + std::to_string(l) + " has an inconsistent width");
            }
        }
        locked.black_holes = collect("BH", suffix);
        locked.scheme = SchemeKind::layered;
        locked.layered = LayeredParams{m, static_cast<unsigned>(locked.layers.size())};
        locked.selector_bits = layered_selector_bits(m);
        if (m < 2 || fsm.inputs_width() < locked.selector_bits) {
            throw Error("layered chain is narrower than its key port");
        }
    } else {
        throw Error("reset state '" + reset + "' is not the head of a dummy chain");
    }
    locked.original_reset = exit_of(locked.layers.back());
    return locked;
}

} // namespace fsmlock
