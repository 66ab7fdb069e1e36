#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fsmlock/bitstring.hpp"
#include "fsmlock/fsm.hpp"
#include "fsmlock/kiss2.hpp"

namespace fsmlock::test {

inline constexpr const char *kMinimal = ".i 1\n.o 1\n.s 2\n.r A\n0 A A 0\n1 A B 1\n- B A 0\n";

// Seven states S0..S6, as in the running 7-state example.
inline constexpr const char *kSevenState = R"(.i 1
.o 2
.r S0
0 S0 S1 01
1 S0 S2 10
0 S1 S3 00
1 S1 S0 11
- S2 S4 1-
0 S3 S5 01
1 S3 S6 00
0 S4 S4 10
1 S4 S0 01
- S5 S6 11
0 S6 S2 00
1 S6 S3 -1
.e
)";

inline const std::vector<std::string> kBenchmarks = {"dk16", "dk14", "dk27", "bbara", "lion", "s27"};

inline std::string data_path(const std::string &name) { return std::string(FSMLOCK_TEST_DATA) + "/" + name; }

inline Fsm benchmark(const std::string &name) { return read_kiss2_file(data_path(name + ".kiss2")); }

inline BitString random_bits(std::mt19937_64 &rng, std::size_t width)
{
    BitString v(width);
    for (std::size_t k = 0; k < width; ++k) {
        v.set(k, rng() & 1U);
    }
    return v;
}

inline std::vector<BitString> random_inputs(std::mt19937_64 &rng, std::size_t width, std::size_t count)
{
    std::vector<BitString> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(random_bits(rng, width));
    }
    return out;
}

} // namespace fsmlock::test
