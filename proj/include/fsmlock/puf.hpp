#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fsmlock/bitstring.hpp"

namespace fsmlock {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// 64-bit finalizer (splitmix64 step).
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += kGoldenGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Software stand-in for a device PUF; the seed plays process variation.
struct MockPuf {
    std::uint64_t device_seed = 0;
};

struct CrPair {
    std::uint64_t challenge = 0;
    BitString response;

    bool operator==(const CrPair &) const = default;
};

using CrDatabase = std::map<std::string, std::vector<CrPair>>;

inline constexpr std::size_t kMaxResponseWidth = 512;

/// Bit k is bit (k mod 64) of mix64(seed ^ challenge ^ (k/64) * gamma).
BitString respond(const MockPuf &puf, std::uint64_t challenge, std::size_t width);

/// Decimal rendering of mix64(device_seed).
std::string device_id(std::uint64_t device_seed);

std::pair<std::string, std::vector<CrPair>> enroll(std::uint64_t device_seed,
                                                    const std::vector<std::uint64_t> &challenges,
                                                    std::size_t width);

/// Writes `db` atomically (temporary file, then rename).
void save_db(const CrDatabase &db, const std::string &path);
/// Throws ParseError (with line) on malformed or truncated files.
CrDatabase load_db(const std::string &path);

std::string format_db(const CrDatabase &db);
CrDatabase parse_db(const std::string &text);

} // namespace fsmlock
