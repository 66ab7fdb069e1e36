#include <doctest.h>

#include "fsmlock/bitstring.hpp"
#include "fsmlock/error.hpp"

using namespace fsmlock;

TEST_CASE("bit strings are MSB-first in text, LSB at index 0")
{
    BitString r = BitString::parse("001011");
    CHECK(r.width() == 6);
    CHECK(r.bit(0));
    CHECK(r.bit(1));
    CHECK_FALSE(r.bit(2));
    CHECK(r.bit(3));
    CHECK_FALSE(r.bit(5));
    CHECK(r.to_uint() == 0b001011);
    CHECK(r.str() == "001011");
    CHECK(BitString::from_uint(11, 6) == r);
}

TEST_CASE("slices, concatenation and xor")
{
    BitString r = BitString::parse("001011");
    CHECK(r.slice(0, 2) == 3);
    CHECK(r.slice(2, 2) == 2);
    CHECK(r.slice(4, 2) == 0);
    CHECK_THROWS_AS(r.slice(5, 2), WidthError);

    BitString c = BitString::concat(BitString::parse("10"), BitString::parse("011"));
    CHECK(c.str() == "10011");
    CHECK((BitString::parse("1100") ^ BitString::parse("1010")).str() == "0110");
    CHECK_THROWS_AS(BitString::parse("1") ^ BitString::parse("10"), WidthError);
}

TEST_CASE("malformed bit strings are rejected")
{
    CHECK_THROWS_AS(BitString::parse("01a"), ParseError);
    CHECK(BitString::parse("").width() == 0);
}

TEST_CASE("wide values keep high bits zero")
{
    BitString w = BitString::from_uint(~std::uint64_t{0}, 70);
    CHECK(w.slice(0, 64) == ~std::uint64_t{0});
    CHECK(w.slice(64, 6) == 0);
}
