#include "fsmlock/bitstring.hpp"

#include <algorithm>

#include "fsmlock/error.hpp"

namespace fsmlock {

ParseError::ParseError(const std::string &what, std::size_t line, std::size_t column)
    : Error(line == 0 ? what
                      : "line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : "") +
                            ": " + what),
      line_(line), column_(column)
{
}

BitString BitString::parse(std::string_view text)
{
    BitString out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[text.size() - 1 - i];
        if (c != '0' && c != '1') {
            throw ParseError("bit string contains '" + std::string(1, c) + "'", 0);
        }
        out.bits_[i] = c == '1';
    }
    return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width)
{
    BitString out(width);
    for (std::size_t i = 0; i < width && i < 64; ++i) {
        out.bits_[i] = (value >> i) & 1U;
    }
    return out;
}

std::uint64_t BitString::slice(std::size_t offset, std::size_t count) const
{
    if (count > 64 || offset + count > bits_.size()) {
        throw WidthError("slice [" + std::to_string(offset) + ", " + std::to_string(offset + count) +
                         ") outside width " + std::to_string(bits_.size()));
    }
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        value |= static_cast<std::uint64_t>(bits_[offset + i]) << i;
    }
    return value;
}

std::uint64_t BitString::to_uint() const { return slice(0, bits_.size()); }

std::string BitString::str() const
{
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        s[bits_.size() - 1 - i] = bits_[i] ? '1' : '0';
    }
    return s;
}

BitString BitString::concat(const BitString &high, const BitString &low)
{
    BitString out(low.width() + high.width());
    std::copy(low.bits_.begin(), low.bits_.end(), out.bits_.begin());
    std::copy(high.bits_.begin(), high.bits_.end(), out.bits_.begin() + static_cast<std::ptrdiff_t>(low.width()));
    return out;
}

BitString BitString::operator^(const BitString &other) const
{
    if (other.width() != width()) {
        throw WidthError("xor of widths " + std::to_string(width()) + " and " + std::to_string(other.width()));
    }
    BitString out(width());
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        out.bits_[i] = bits_[i] ^ other.bits_[i];
    }
    return out;
}

} // namespace fsmlock
