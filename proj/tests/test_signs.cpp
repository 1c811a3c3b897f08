#include "oracle.hpp"

#include "takagi/errors.hpp"
#include "takagi/eval.hpp"
#include "takagi/signs.hpp"

#include <doctest.h>

using namespace takagi;

namespace {

Rational q(const char* text) { return parse_rational(text); }

} // namespace

TEST_CASE("parse_spec accepts the grammar and reads signs")
{
    const auto t = parse_spec("(+)");
    for (std::uint64_t n = 0; n < 20; ++n) {
        CHECK(t.at(n) == 1);
    }
    const auto tt = parse_spec("-(+)");
    CHECK(tt.at(0) == -1);
    CHECK(tt.at(1) == 1);
    CHECK(tt.at(100) == 1);
    const auto s = parse_spec("(+--)");
    for (std::uint64_t n = 0; n < 30; ++n) {
        CHECK(s.at(n) == (n % 3 == 0 ? 1 : -1));
    }
}

TEST_CASE("parse_spec rejects malformed input with a position")
{
    CHECK_THROWS_AS(parse_spec("()"), ParseError);
    CHECK_THROWS_AS(parse_spec("+-"), ParseError);
    CHECK_THROWS_AS(parse_spec("(+x)"), ParseError);
    CHECK_THROWS_AS(parse_spec("(+)-"), ParseError);
    CHECK_THROWS_AS(parse_spec(""), ParseError);
    try {
        parse_spec("(+x)");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("position 2") != std::string::npos);
    }
}

TEST_CASE("canonical form identifies equal sequences")
{
    CHECK(parse_spec("(++)") == parse_spec("(+)"));
    CHECK(parse_spec("+(+)") == parse_spec("(+)"));
    CHECK(parse_spec("-+(-+)") == parse_spec("(-+)"));
    CHECK(parse_spec("+(-+)") == parse_spec("(+-)"));
    CHECK(parse_spec("(+-+-)").to_string() == "(+-)");
    CHECK(parse_spec("-(+)").to_string() == "-(+)");
}

TEST_CASE("partial sums")
{
    CHECK(partial_sum(parse_spec("(+)"), 5) == 5);
    CHECK(partial_sum(parse_spec("(+-)"), 2) == 0);
    CHECK(partial_sum(parse_spec("(+--)"), 9) == -3);
    CHECK(partial_sum(parse_spec("(+--)"), 0) == 0);
}

TEST_CASE("hitting times")
{
    CHECK(hitting_time(parse_spec("(+)"), 3).value == 3U);
    CHECK(hitting_time(parse_spec("(+-)"), -1).infinite());
    CHECK(hitting_time(parse_spec("(+--)"), -3).value == 9U);
    CHECK(hitting_time(parse_spec("(+--)"), 3).infinite());
    CHECK(hitting_time(parse_spec("-(+)"), 5).value == 7U);
    CHECK_THROWS_AS(hitting_time(parse_spec("(+)"), 0), DomainError);
}

TEST_CASE("hitting times agree with simulation on random sequences")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto spec = oracle::random_spec(rng, 8, 8);
        const auto seq = parse_spec(spec);
        const auto r = oracle::signs(spec, 4000);
        for (long level = -12; level <= 12; ++level) {
            if (level == 0) {
                continue;
            }
            const auto expected = oracle::hitting_time(r, level);
            const auto got = hitting_time(seq, level);
            if (expected < 0) {
                CHECK_MESSAGE(got.infinite(), spec << " level " << level);
            } else {
                REQUIRE_MESSAGE(got.value.has_value(), spec << " level " << level);
                CHECK(*got.value == static_cast<std::uint64_t>(expected));
                if (level % 2 != 0) {
                    CHECK(*got.value % 2 == 1);
                }
            }
        }
    }
}

TEST_CASE("extrema of the named functions")
{
    auto check = [](const char* spec, const char* mx, const char* mn, const char* h) {
        const auto e = extrema(parse_spec(spec));
        CHECK_MESSAGE(e.max_value == q(mx), spec);
        CHECK_MESSAGE(e.min_value == q(mn), spec);
        CHECK_MESSAGE(e.height == q(h), spec);
    };
    check("(+)", "2/3", "0", "2/3");
    check("-(+)", "1/6", "-1/2", "2/3");
    check("(+-)", "1/2", "0", "1/2");
    check("(+--)", "1/2", "-8/63", "79/126");
    check("(-)", "0", "-2/3", "2/3");
    check("+(-)", "1/2", "-1/6", "2/3");
}

TEST_CASE("extrema bracket the depth-16 grid extremes on random sequences")
{
    std::mt19937_64 rng(5);
    const unsigned depth = 16;
    for (int trial = 0; trial < 40; ++trial) {
        const auto spec = oracle::random_spec(rng, 6, 6);
        const auto e = extrema(parse_spec(spec));
        const auto grid = oracle::f_grid(oracle::signs(spec, depth), depth);
        const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
        const Rational scale = inv_pow2(2 * depth);
        const Rational gmax = Rational(*hi) * scale;
        const Rational gmin = Rational(*lo) * scale;
        CHECK_MESSAGE(gmax <= e.max_value, spec);
        CHECK_MESSAGE(gmin >= e.min_value, spec);
        // The tail beyond depth n moves f by at most (2/3) 2^-n.
        CHECK_MESSAGE(e.max_value - gmax <= Rational(2, 3) * inv_pow2(depth), spec);
        CHECK_MESSAGE(gmin - e.min_value <= Rational(2, 3) * inv_pow2(depth), spec);
    }
}

TEST_CASE("height sandwich and classification over random sequences")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = oracle::random_spec(rng, 8, 8);
        const auto seq = parse_spec(spec);
        const auto e = extrema(seq);
        CHECK(e.height == e.max_value - e.min_value);
        CHECK(e.height >= Rational(1, 2));
        CHECK(e.height <= Rational(2, 3));
        CHECK(e.min_value <= 0);
        CHECK(e.max_value >= 0);
        const auto cls = classify_height(seq);
        CHECK_MESSAGE((cls == HeightClass::Half) == (e.height == Rational(1, 2)), spec);
        CHECK_MESSAGE((cls == HeightClass::TwoThirds) == (e.height == Rational(2, 3)), spec);
        const auto shifted = extrema(shift(seq, trial % 11));
        CHECK(shifted.height >= Rational(1, 2));
        CHECK(shifted.height <= Rational(2, 3));
        CHECK(e.max_value - truncated_max_sum(seq, 64) <= inv_pow2(64));
        CHECK(e.max_value >= truncated_max_sum(seq, 64));
    }
}

TEST_CASE("classify_height examples")
{
    CHECK(classify_height(parse_spec("(+-)")) == HeightClass::Half);
    CHECK(classify_height(parse_spec("-(+)")) == HeightClass::TwoThirds);
    CHECK(classify_height(parse_spec("(+)")) == HeightClass::TwoThirds);
    CHECK(classify_height(parse_spec("(+--)")) == HeightClass::Intermediate);
    CHECK(to_string(HeightClass::TwoThirds) == "TWO_THIRDS");
}

TEST_CASE("shift")
{
    CHECK(shift(parse_spec("(+)"), 7) == parse_spec("(+)"));
    CHECK(shift(parse_spec("-(+)"), 1) == parse_spec("(+)"));
    const auto s = shift(parse_spec("(+--)"), 1);
    CHECK(s.preamble().empty());
    CHECK(s.to_string() == "(--+)");
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const auto seq = parse_spec(oracle::random_spec(rng, 6, 6));
        const auto n = static_cast<std::uint64_t>(trial % 17);
        const auto sh = shift(seq, n);
        for (std::uint64_t k = 0; k < 40; ++k) {
            CHECK(sh.at(k) == seq.at(n + k));
        }
        CHECK(seq.period().size() % sh.period().size() == 0);
    }
}
