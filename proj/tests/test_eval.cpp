#include "oracle.hpp"

#include "takagi/errors.hpp"
#include "takagi/eval.hpp"

#include <doctest.h>

using namespace takagi;

namespace {

Rational q(const char* text) { return parse_rational(text); }
DyadicRational d(const char* text) { return DyadicRational::parse(text); }

} // namespace

TEST_CASE("phi")
{
    CHECK(phi(0) == 0);
    CHECK(phi(q("1/2")) == q("1/2"));
    CHECK(phi(q("5/3")) == q("1/3"));
    CHECK(phi(q("-1/4")) == q("1/4"));
}

TEST_CASE("partial sums f_k")
{
    CHECK(eval_partial(parse_spec("(+)"), q("1/2"), 1) == q("1/2"));
    CHECK(eval_partial(parse_spec("(+)"), q("1/4"), 2) == q("1/2"));
    CHECK(eval_partial(parse_spec("(+-)"), q("1/4"), 2) == 0);
    CHECK(eval_partial(parse_spec("(+)"), q("1/3"), 0) == 0);
}

TEST_CASE("eval_dyadic examples")
{
    CHECK(eval_dyadic(parse_spec("(+)"), d("0")) == 0);
    CHECK(eval_dyadic(parse_spec("(+)"), d("1/4")) == q("1/2"));
    CHECK(eval_dyadic(parse_spec("-(+)"), d("1/2")) == q("-1/2"));
    CHECK(eval_dyadic(parse_spec("(+)"), d("1")) == 0);
    CHECK_THROWS_AS(eval_dyadic(parse_spec("(+)"), d("3/2")), DomainError);
}

TEST_CASE("eval_dyadic matches the direct-sum oracle and the mirror symmetry")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 3000; ++trial) {
        const auto spec = oracle::random_spec(rng, 6, 6);
        const auto seq = parse_spec(spec);
        const auto n = static_cast<unsigned>(rng() % 29);
        const auto j = static_cast<std::int64_t>(rng() % ((std::uint64_t{1} << n) + 1));
        const DyadicRational x(BigInt(static_cast<long>(j)), n);
        const auto value = eval_dyadic(seq, x);
        CHECK(value == oracle::f_dyadic(oracle::signs(spec, n), j, n));
        CHECK(value == eval_dyadic(seq, DyadicRational(BigInt(1), 0) - x));
        CHECK(value == eval_partial(seq, x.to_rational(), n + 3));
    }
}

TEST_CASE("eval_dyadic at depths beyond 64 bits")
{
    const auto seq = parse_spec("(+-)");
    const auto x = DyadicRational::parse("12345678901234567890123/2^80");
    CHECK(eval_dyadic(seq, x) == eval_partial(seq, x.to_rational(), 80));
}

TEST_CASE("eval_enclosure")
{
    const auto t = parse_spec("(+)");
    const auto e = eval_enclosure(t, q("1/3"), 10);
    CHECK(e.contains(q("2/3")));
    CHECK(e.width() <= Rational(2, 3) * inv_pow2(10));
    const auto e2 = eval_enclosure(t, q("1/4"), 2);
    CHECK(e2 == Enclosure{q("1/2"), q("1/2") + Rational(2, 3) / 4});
    CHECK(eval_enclosure(parse_spec("(+--)"), 0, 0).contains(0));
}

TEST_CASE("eval_enclosure contains the exact value at every depth")
{
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto seq = parse_spec(oracle::random_spec(rng, 5, 5));
        const ShiftExtremaTable table(seq);
        const auto n = static_cast<unsigned>(rng() % 21);
        const DyadicRational x(BigInt(static_cast<unsigned long>(rng() % (std::uint64_t{1} << n))), n);
        const auto exact = eval_dyadic(seq, x);
        Rational previous = 1;
        for (unsigned k = 0; k <= 20; ++k) {
            const auto e = eval_enclosure(seq, x.to_rational(), k, table);
            CHECK(e.contains(exact));
            CHECK(e.width() <= Rational(2, 3) * inv_pow2(k));
            CHECK(e.width() >= Rational(1, 2) * inv_pow2(k));
            if (k > 0) {
                CHECK(e.width() * 2 <= previous * Rational(4, 3));
            }
            previous = e.width();
        }
    }
}

TEST_CASE("c_of_r")
{
    CHECK(c_of_r(parse_spec("(+)")) == q("1/2"));
    CHECK(c_of_r(parse_spec("(-)")) == q("-1/2"));
    CHECK(c_of_r(parse_spec("(+-)")) == q("1/6"));
    CHECK(c_of_r(parse_spec("-(+)")) == q("0"));
}

TEST_CASE("eval_via_D examples and consistency")
{
    const auto t = parse_spec("(+)");
    CHECK(eval_via_D(t, BinaryWord::parse("1" + std::string(19, '0'))).contains(q("1/2")));
    CHECK(eval_via_D(t, BinaryWord::parse("01" + std::string(18, '0'))).contains(q("1/2")));
    CHECK(eval_via_D(parse_spec("(+-)"), BinaryWord::parse("01" + std::string(18, '0'))).contains(0));
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto seq = parse_spec(oracle::random_spec(rng, 5, 5));
        const auto word = BinaryWord::parse(oracle::bits_of(rng(), static_cast<unsigned>(rng() % 24)));
        CHECK(eval_via_D(seq, word).contains(eval_dyadic(seq, word.value())));
    }
}

TEST_CASE("range_on_interval examples")
{
    const auto t = parse_spec("(+)");
    CHECK(range_on_interval(t, BinaryWord()) == Enclosure{0, q("2/3")});
    // I(1/4) = [1/4, 1/2] has length 1/4, and T restricted to it is T scaled by 1/4 above 1/2.
    CHECK(range_on_interval(t, BinaryWord::parse("01")) == Enclosure{q("1/2"), q("2/3")});
    // For (+-) the order-one balanced words are 00 and 11; 11 sits at 3/4 with f(3/4) = 0.
    const auto s = parse_spec("(+-)");
    const auto g = extrema(shift(s, 2));
    CHECK(eval_dyadic(s, d("3/4")) == 0);
    CHECK(range_on_interval(s, BinaryWord::parse("11")) == Enclosure{g.min_value / 4, g.max_value / 4});
    CHECK(walk(s, BinaryWord::parse("10")).last() == -2);
}

TEST_CASE("range_on_interval is sound and tight at balanced words")
{
    std::mt19937_64 rng(43);
    const unsigned grid_depth = 20;
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = oracle::random_spec(rng, 4, 4);
        const auto seq = parse_spec(spec);
        const auto r = oracle::signs(spec, grid_depth);
        const auto n = static_cast<unsigned>(rng() % 9);
        const auto index = rng() % (std::uint64_t{1} << n);
        const auto word = BinaryWord::parse(oracle::bits_of(index, n));
        const auto range = range_on_interval(seq, word);
        const auto span = std::int64_t{1} << (grid_depth - n);
        std::int64_t lo = INT64_MAX;
        std::int64_t hi = INT64_MIN;
        for (std::int64_t j = 0; j <= span; ++j) {
            const auto v = oracle::f_scaled(r, static_cast<std::int64_t>(index) * span + j, grid_depth);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const Rational scale = inv_pow2(2 * grid_depth);
        CHECK(range.contains(Rational(lo) * scale));
        CHECK(range.contains(Rational(hi) * scale));
        if (walk(seq, word).last() == 0) {
            CHECK(range.hi - Rational(hi) * scale <= inv_pow2(grid_depth));
            CHECK(Rational(lo) * scale - range.lo <= inv_pow2(grid_depth));
        }
    }
}

TEST_CASE("word_state tracks the scaled partial sum")
{
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 500; ++trial) {
        const auto seq = parse_spec(oracle::random_spec(rng, 4, 4));
        const auto word = BinaryWord::parse(oracle::bits_of(rng(), static_cast<unsigned>(rng() % 30)));
        const auto state = word_state(seq, word);
        CHECK(state.slope == walk(seq, word).last());
        CHECK(state.left_value() == eval_partial(seq, word.value().to_rational(), word.depth()));
        const Rational right = word.value().to_rational() + inv_pow2(word.depth());
        CHECK(state.right_value() == eval_partial(seq, right, word.depth()));
    }
}
