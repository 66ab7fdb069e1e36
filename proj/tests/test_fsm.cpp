#include <doctest.h>

#include <random>

#include "fsmlock/error.hpp"
#include "fsmlock/fsm.hpp"
#include "fsmlock/kiss2.hpp"
#include "support.hpp"

using namespace fsmlock;
using namespace fsmlock::test;

TEST_CASE("ternary patterns")
{
    TernaryPattern p("1-0");
    CHECK(p.matches(BitString::parse("100")));
    CHECK(p.matches(BitString::parse("110")));
    CHECK_FALSE(p.matches(BitString::parse("101")));
    CHECK_THROWS_AS(p.matches(BitString::parse("10")), WidthError);
    CHECK(p.resolve().str() == "100");
    CHECK_THROWS_AS(TernaryPattern("1x"), ParseError);
    CHECK(TernaryPattern("").matches(BitString()));
}

TEST_CASE("Fsm validates its invariants")
{
    auto t = [](const char *in, const char *s, const char *d, const char *o) {
        return Transition{TernaryPattern(in), s, d, TernaryPattern(o)};
    };
    CHECK_THROWS_AS(Fsm(1, 1, {"A"}, "B", {}), Error);
    CHECK_THROWS_AS(Fsm(1, 1, {"A", "A"}, "A", {}), Error);
    CHECK_THROWS_AS(Fsm(1, 1, {"A", ""}, "A", {}), Error);
    CHECK_THROWS_AS(Fsm(1, 1, {"A"}, "A", {t("0", "A", "Z", "0")}), Error);
    CHECK_THROWS_AS(Fsm(1, 1, {"A"}, "A", {t("00", "A", "A", "0")}), WidthError);
    CHECK_NOTHROW(Fsm(1, 1, {"A"}, "A", {t("0", "A", "A", "0")}));
}

TEST_CASE("step follows the first matching transition")
{
    Fsm f = parse_kiss2(kMinimal);
    StepResult r = f.step("A", BitString::parse("1"));
    CHECK(r.state == "B");
    CHECK(r.output.str() == "1");

    for (const char *in : {"0", "1"}) {
        r = f.step("B", BitString::parse(in));
        CHECK(r.state == "A");
        CHECK(r.output.str() == "0");
    }

    // Overlapping cubes: the earlier line wins.
    Fsm overlap = parse_kiss2(".i 2\n.o 1\n1- A B 1\n11 A C 0\n-- B A -\n-- C A 1\n");
    CHECK(overlap.step("A", BitString::parse("11")).state == "B");
    CHECK(overlap.step("B", BitString::parse("01")).output.str() == "0"); // '-' resolves to 0
}

TEST_CASE("unmatched inputs stall with zero outputs")
{
    Fsm f = parse_kiss2(".i 1\n.o 2\n1 A B 11\n1 B A 11\n");
    StepResult r = f.step("A", BitString::parse("0"));
    CHECK(r.state == "A");
    CHECK(r.output.str() == "00");
    CHECK_THROWS_AS(f.step("A", BitString::parse("00")), WidthError);
}

TEST_CASE("step is total on every benchmark")
{
    for (const auto &name : kBenchmarks) {
        Fsm f = benchmark(name);
        for (const auto &s : f.states()) {
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << f.inputs_width()); ++v) {
                StepResult r = f.step(s, BitString::from_uint(v, f.inputs_width()));
                CHECK(f.has_state(r.state));
                CHECK(r.output.width() == f.outputs_width());
            }
        }
    }
}

TEST_CASE("reachable_states")
{
    Fsm f = parse_kiss2(kMinimal);
    CHECK(reachable_states(f, "A") == std::set<std::string>{"A", "B"});

    Fsm isolated(1, 1, {"A", "B", "Z"}, "A",
                 {{TernaryPattern("-"), "A", "B", TernaryPattern("0")}, {TernaryPattern("-"), "B", "A", TernaryPattern("0")}});
    CHECK(reachable_states(isolated, "Z") == std::set<std::string>{"Z"});
    CHECK_THROWS_AS(reachable_states(isolated, "Q"), Error);
}

TEST_CASE("reachability is monotone under adding transitions")
{
    std::mt19937_64 rng(7);
    Fsm base = benchmark("bbara");
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Transition> ts = base.transitions();
        const auto &states = base.states();
        ts.push_back({TernaryPattern::dont_care(base.inputs_width()), states[rng() % states.size()],
                      states[rng() % states.size()], TernaryPattern::dont_care(base.outputs_width())});
        Fsm grown(base.inputs_width(), base.outputs_width(), states, base.reset_state(), ts);
        for (const auto &s : states) {
            auto before = reachable_states(base, s);
            auto after = reachable_states(grown, s);
            CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
        }
    }
}
