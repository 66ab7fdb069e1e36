#include "fsmlock/puf.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fsmlock/error.hpp"

namespace fsmlock {

BitString respond(const MockPuf &puf, std::uint64_t challenge, std::size_t width)
{
    if (width < 1 || width > kMaxResponseWidth) {
        throw WidthError("response width " + std::to_string(width) + " outside [1, " +
                         std::to_string(kMaxResponseWidth) + "]");
    }
    BitString out(width);
    std::uint64_t word = 0;
    for (std::size_t k = 0; k < width; ++k) {
        if (k % 64 == 0) {
            word = mix64(puf.device_seed ^ challenge ^ ((k / 64) * kGoldenGamma));
        }
        out.set(k, (word >> (k % 64)) & 1U);
    }
    return out;
}

std::string device_id(std::uint64_t device_seed) { return std::to_string(mix64(device_seed)); }

std::pair<std::string, std::vector<CrPair>> enroll(std::uint64_t device_seed,
                                                    const std::vector<std::uint64_t> &challenges, std::size_t width)
{
    if (challenges.empty()) {
        throw Error("enrollment needs at least one challenge");
    }
    MockPuf puf{device_seed};
    std::vector<CrPair> pairs;
    pairs.reserve(challenges.size());
    for (std::uint64_t c : challenges) {
        pairs.push_back({c, respond(puf, c, width)});
    }
    return {device_id(device_seed), std::move(pairs)};
}

// File layout: a "# crdb v1" header, one `id<TAB>challenge_hex<TAB>bits`
// line per pair, and a closing "# end <count>" line that detects truncation.

std::string format_db(const CrDatabase &db)
{
    std::ostringstream out;
    out << "# crdb v1\n";
    std::size_t count = 0;
    char hex[17];
    for (const auto &[id, pairs] : db) {
        if (pairs.empty()) {
            throw Error("device '" + id + "' has no C-R pairs to persist");
        }
        for (const CrPair &p : pairs) {
            std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(p.challenge));
            out << id << '\t' << hex << '\t' << p.response.str() << '\n';
            ++count;
        }
    }
    out << "# end " << count << '\n';
    return out.str();
}

CrDatabase parse_db(const std::string &text)
{
    CrDatabase db;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::size_t records = 0;
    bool closed = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (closed) {
            if (!line.empty()) {
                throw ParseError("content after end marker", line_no, 1);
            }
            continue;
        }
        if (line.starts_with("# end ")) {
            std::size_t declared = 0;
            std::string_view num(line.data() + 6, line.size() - 6);
            auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), declared);
            if (ec != std::errc{} || ptr != num.data() + num.size() || declared != records) {
                throw ParseError("end marker does not match " + std::to_string(records) + " records", line_no, 1);
            }
            closed = true;
            continue;
        }
        if (line.empty() || line.starts_with('#')) {
            continue;
        }
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos || t1 == 0) {
            throw ParseError("expected device_id<TAB>challenge_hex<TAB>response_bits", line_no, 1);
        }
        std::string_view hex(line.data() + t1 + 1, t2 - t1 - 1);
        std::uint64_t challenge = 0;
        auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), challenge, 16);
        if (hex.empty() || ec != std::errc{} || ptr != hex.data() + hex.size()) {
            throw ParseError("bad challenge '" + std::string(hex) + "'", line_no, t1 + 2);
        }
        std::string_view bits(line.data() + t2 + 1, line.size() - t2 - 1);
        if (bits.empty() || bits.find_first_not_of("01") != std::string_view::npos) {
            throw ParseError("bad response bits", line_no, t2 + 2);
        }
        db[line.substr(0, t1)].push_back({challenge, BitString::parse(bits)});
        ++records;
    }
    if (!closed) {
        throw ParseError("missing end marker (truncated file?)", line_no);
    }
    return db;
}

void save_db(const CrDatabase &db, const std::string &path)
{
    const std::string text = format_db(db);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out || !(out << text) || !out.flush()) {
            throw IoError("cannot write '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
    }
}

CrDatabase load_db(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_db(buf.str());
}

} // namespace fsmlock
