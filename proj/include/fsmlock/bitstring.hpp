#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fsmlock {

/**
 * Fixed-width bit vector. Index 0 is the least-significant bit; the textual
 * form is MSB-first, so "001011" has bit 0 = 1 and bit 5 = 0.
 */
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t width) : bits_(width, 0) {}

    /// Parses an MSB-first string over {0, 1}. Throws ParseError otherwise.
    static BitString parse(std::string_view text);
    /// Low `width` bits of `value` (width may exceed 64; high bits are zero).
    static BitString from_uint(std::uint64_t value, std::size_t width);

    std::size_t width() const { return bits_.size(); }
    bool bit(std::size_t index) const { return bits_.at(index) != 0; }
    void set(std::size_t index, bool value) { bits_.at(index) = value ? 1 : 0; }

    /// Value of bits [offset, offset + count), count <= 64.
    std::uint64_t slice(std::size_t offset, std::size_t count) const;
    /// Whole value; requires width <= 64.
    std::uint64_t to_uint() const;

    std::string str() const;

    /// Concatenation with `low` occupying the least-significant positions.
    static BitString concat(const BitString &high, const BitString &low);

    BitString operator^(const BitString &other) const;
    bool operator==(const BitString &other) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

} // namespace fsmlock
