#include <doctest.h>

#include <map>
#include <random>

#include "fsmlock/error.hpp"
#include "fsmlock/kiss2.hpp"
#include "fsmlock/obfuscate.hpp"
#include "support.hpp"

using namespace fsmlock;
using namespace fsmlock::test;

namespace {

/// Counts key-value sequences of chain length that take the machine from
/// reset to the original reset state, by direct enumeration over Fsm::step.
std::uint64_t count_key_paths(const BoostedFsm &locked)
{
    const std::size_t chain = locked.chain_length();
    const unsigned b = locked.selector_bits;
    const std::uint64_t total = std::uint64_t{1} << (b * chain);
    const BitString idle(locked.original_inputs_width());
    std::uint64_t paths = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::string state = locked.fsm.reset_state();
        for (std::size_t j = 0; j < chain; ++j) {
            std::uint64_t key = (code >> (j * b)) & ((std::uint64_t{1} << b) - 1);
            state = locked.fsm.step(state, BitString::concat(idle, BitString::from_uint(key, b))).state;
        }
        paths += state == locked.original_reset;
    }
    return paths;
}

void check_black_hole_closure(const BoostedFsm &locked)
{
    for (const auto &bh : locked.black_holes) {
        for (const auto &s : reachable_states(locked.fsm, bh)) {
            CHECK(locked.is_black_hole(s));
        }
    }
}

} // namespace

TEST_CASE("chunk slices LSB-first")
{
    BitString r = BitString::parse("001011");
    CHECK(chunk(r, 0, 2) == 3);
    CHECK(chunk(r, 1, 2) == 2);
    CHECK(chunk(r, 2, 2) == 0);
    CHECK(chunk(BitString::parse("1111"), 1, 2) == 3);
    CHECK_THROWS_AS(chunk(r, 3, 2), WidthError);
}

TEST_CASE("determiners for the worked example")
{
    BitString puf = BitString::parse("001011");
    BitString license = BitString::parse("111011");
    KeySchedule ks = determiners(puf, license, optimize(6));
    CHECK(ks.selector_bits == 2);
    // (3, 3^3, 2, 2^2, 0, 0^3)
    CHECK(ks.determiners == std::vector<std::uint64_t>{3, 0, 2, 0, 0, 3});

    KeySchedule zero = determiners(puf, BitString(6), optimize(6));
    for (std::size_t i = 1; i < zero.determiners.size(); i += 2) {
        CHECK(zero.determiners[i] == zero.determiners[i - 1]);
    }
    KeySchedule same = determiners(puf, puf, optimize(6));
    for (std::size_t i = 1; i < same.determiners.size(); i += 2) {
        CHECK(same.determiners[i] == 0);
    }
    CHECK_THROWS_AS(determiners(puf, BitString::parse("11101"), optimize(6)), WidthError);
    CHECK_THROWS_AS(determiners(BitString::parse("0010"), license, optimize(6)), WidthError);
}

TEST_CASE("random_license is a deterministic function of the seed")
{
    CHECK(random_license(42, 6) == random_license(42, 6));
    CHECK(random_license(42, 6).width() == 6);
    CHECK(random_license(42, 1).width() == 1);
    CHECK(random_license(42, 200).width() == 200);

    // Consecutive seeds give different 6-bit licenses most of the time:
    // collisions are expected at rate 1/64, so 1000 pairs leave >= 990
    // distinct only with a wider license; use 64 bits for that check.
    int distinct64 = 0;
    int distinct6 = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        distinct64 += random_license(s, 64) != random_license(s + 1, 64);
        distinct6 += random_license(s, 6) != random_license(s + 1, 6);
    }
    CHECK(distinct64 >= 990);
    CHECK(distinct6 >= 950);
}

TEST_CASE("BFSM of the 7-state example")
{
    Fsm original = parse_kiss2(kSevenState);
    BoostedFsm locked = build_bfsm(original, BitString::parse("001011"), BitString::parse("111011"), 5);
    CHECK(locked.fsm.states().size() == 7 + 6 + 3);
    CHECK(locked.fsm.reset_state() == "DS0");
    CHECK(locked.original_reset == "S0");
    CHECK(locked.dummy_states() == std::vector<std::string>{"DS0", "DS1", "DS2", "DS3", "DS4", "DS5"});
    CHECK(locked.black_holes == std::vector<std::string>{"BH0", "BH1", "BH2"});
    CHECK(locked.fsm.inputs_width() == original.inputs_width() + 2);
    CHECK(locked.selector_bits == 2);

    // Unlock path DS0 -> ... -> DS5 -> S0 under d = [3, 0, 2, 0, 0, 3].
    const std::vector<std::uint64_t> d{3, 0, 2, 0, 0, 3};
    std::string state = "DS0";
    std::vector<std::string> path{state};
    for (std::uint64_t key : d) {
        StepResult r = locked.fsm.step(state, BitString::concat(BitString(1), BitString::from_uint(key, 2)));
        CHECK(r.output.str() == "00");
        state = r.state;
        path.push_back(state);
    }
    CHECK(path == std::vector<std::string>{"DS0", "DS1", "DS2", "DS3", "DS4", "DS5", "S0"});
}

TEST_CASE("wrong key values map to black holes in ascending order")
{
    Fsm original = parse_kiss2(kSevenState);
    BoostedFsm locked = build_bfsm(original, BitString::parse("001011"), BitString::parse("111011"), 5);
    // DS2 expects 2: wrong values 0, 1, 3 go to BH0, BH1, BH2.
    std::map<std::uint64_t, std::string> expected{{0, "BH0"}, {1, "BH1"}, {2, "DS3"}, {3, "BH2"}};
    for (auto [key, dst] : expected) {
        CHECK(locked.fsm.step("DS2", BitString::concat(BitString(1), BitString::from_uint(key, 2))).state == dst);
    }
    // Dummy and black-hole outputs are don't-cares in the emitted text.
    for (const auto &t : locked.fsm.transitions()) {
        if (locked.is_dummy(t.src) || locked.is_black_hole(t.src)) {
            CHECK(t.output.str() == "--");
        }
    }
}

TEST_CASE("each dummy state has h + 1 outgoing transitions, one non-black-hole")
{
    Fsm original = parse_kiss2(kMinimal);
    for (unsigned L : {1U, 2U, 4U, 6U, 8U, 12U}) {
        BitString puf = random_license(L * 7, L);
        BoostedFsm locked = build_bfsm(original, puf, random_license(L, L), L);
        const LockParams &p = *locked.params;
        CHECK(locked.fsm.states().size() == original.states().size() + p.added_states);
        for (const auto &ds : locked.dummy_states()) {
            const auto &out = locked.fsm.outgoing(locked.fsm.index_of(ds));
            CHECK(out.size() == p.black_holes + 1);
            int forward = 0;
            std::set<std::string> holes;
            for (std::size_t t : out) {
                const auto &dst = locked.fsm.transitions()[t].dst;
                if (locked.is_black_hole(dst)) {
                    holes.insert(dst);
                } else {
                    ++forward;
                }
            }
            CHECK(forward == 1);
            CHECK(holes.size() == p.black_holes);
        }
        check_black_hole_closure(locked);
    }
    BoostedFsm tiny = build_bfsm(original, BitString::parse("10"), BitString::parse("01"), 3);
    CHECK(tiny.params->selector_bits == 1);
    CHECK(tiny.params->dummy_states == 4);
    CHECK(tiny.black_holes.size() == 1);
}

TEST_CASE("black-hole wiring depends only on the seed")
{
    Fsm original = parse_kiss2(kSevenState);
    BitString puf = BitString::parse("01101100");
    BitString lic = BitString::parse("11110000");
    std::string a = emit_kiss2(build_bfsm(original, puf, lic, 17).fsm);
    CHECK(a == emit_kiss2(build_bfsm(original, puf, lic, 17).fsm));
    bool differs = false;
    for (std::uint64_t s = 18; s < 40 && !differs; ++s) {
        differs = emit_kiss2(build_bfsm(original, puf, lic, s).fsm) != a;
    }
    CHECK(differs);
}

TEST_CASE("exactly one key sequence unlocks the proposed chain")
{
    Fsm original = parse_kiss2(kMinimal);
    std::mt19937_64 rng(3);
    for (unsigned L : {1U, 2U, 3U, 4U, 6U}) {
        BoostedFsm locked = build_bfsm(original, random_bits(rng, L), random_bits(rng, L), rng());
        CHECK(count_key_paths(locked) == 1);
    }
}

TEST_CASE("layered baseline shape")
{
    Fsm original = parse_kiss2(kSevenState);
    BoostedFsm l46 = build_layered(original, BitString(12), BitString(6), {4, 6});
    CHECK(l46.fsm.states().size() == 7 + 15);
    CHECK(l46.layers.size() == 6);
    CHECK(l46.black_holes.empty());
    CHECK(l46.response_width() == 12);
    CHECK(l46.license_width() == 6);
    CHECK(l46.fsm.reset_state() == "L0S0");

    BoostedFsm l42 = build_layered(original, BitString(4), BitString(2), {4, 2});
    CHECK(l42.fsm.states().size() == 7 + 5);
    CHECK(l42.layers[0].size() == 1);
    CHECK(l42.layers[1].size() == 4);

    BoostedFsm l22 = build_layered(original, BitString::parse("10"), BitString::parse("1"), {2, 2});
    CHECK(l22.fsm.states().size() == 7 + 3);

    // m = 3 is not a power of two: one shared black hole absorbs code 3.
    BoostedFsm l32 = build_layered(original, BitString(4), BitString(2), {3, 2});
    CHECK(l32.fsm.states().size() == 7 + 4 + 1);
    CHECK(l32.black_holes.size() == 1);
    check_black_hole_closure(l32);

    CHECK_THROWS_AS(build_layered(original, BitString(11), BitString(6), {4, 6}), WidthError);
    CHECK_THROWS_AS(build_layered(original, BitString(12), BitString(5), {4, 6}), WidthError);
    CHECK_THROWS_AS(build_layered(original, BitString(10), BitString(5), {4, 5}), InfeasibleParams);
}

TEST_CASE("layered path count is m^(M/2) for power-of-two m")
{
    Fsm original = parse_kiss2(kMinimal);
    std::mt19937_64 rng(11);
    for (auto [m, M] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 4}, {4, 2}, {4, 4}, {2, 6}}) {
        unsigned k = layered_selector_bits(m);
        BoostedFsm locked = build_layered(original, random_bits(rng, M * k), random_bits(rng, M / 2 * k), {m, M});
        std::uint64_t expected = 1;
        for (unsigned i = 0; i < M / 2; ++i) {
            expected *= m;
        }
        CHECK(count_key_paths(locked) == expected);
    }
    BoostedFsm l32 = build_layered(original, BitString(4), BitString(2), {3, 2});
    CHECK(count_key_paths(l32) == 3);
}

TEST_CASE("behaviour after the unlock prefix is the original machine's")
{
    Fsm original = benchmark("bbara");
    BoostedFsm locked = build_bfsm(original, BitString::parse("1001"), BitString::parse("0110"), 1);
    for (const Transition &t : original.transitions()) {
        CHECK(std::find(locked.fsm.transitions().begin(), locked.fsm.transitions().end(),
                        Transition{t.input.concat(TernaryPattern("--")), t.src, t.dst, t.output}) !=
              locked.fsm.transitions().end());
    }
}

TEST_CASE("generated names avoid original state names")
{
    Fsm clash = parse_kiss2(".i 1\n.o 1\n0 DS0 BH1 0\n1 BH1 DS0 1\n- L0S0 DS0 0\n");
    BoostedFsm locked = build_bfsm(clash, BitString::parse("10"), BitString::parse("11"), 0);
    CHECK(locked.fsm.reset_state() == "DS0_1");
    CHECK(locked.original_reset == "DS0");
    CHECK(locked.fsm.states().size() == 3 + locked.params->added_states);
    BoostedFsm back = infer_boosted(parse_kiss2(emit_kiss2(locked.fsm)));
    CHECK(back.layers == locked.layers);
    CHECK(back.original_reset == "DS0");

    BoostedFsm layered = build_layered(clash, BitString(2), BitString(1), {2, 2});
    CHECK(layered.fsm.reset_state() == "L0S0_1");
    CHECK(infer_boosted(layered.fsm).layers == layered.layers);
}

TEST_CASE("zero-width original inputs")
{
    Fsm counter = parse_kiss2(".i 0\n.o 1\nA B 0\nB A 1\n");
    BoostedFsm locked = build_bfsm(counter, BitString::parse("0110"), BitString::parse("1010"), 2);
    CHECK(locked.fsm.inputs_width() == locked.selector_bits);
    CHECK(infer_boosted(parse_kiss2(emit_kiss2(locked.fsm))).params == locked.params);
}

TEST_CASE("infer_boosted rejects unlocked machines")
{
    CHECK_THROWS_AS(infer_boosted(parse_kiss2(kMinimal)), Error);
}
