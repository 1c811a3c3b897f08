#include "oracle.hpp"

#include "takagi/errors.hpp"
#include "takagi/humps.hpp"
#include "takagi/locals.hpp"

#include <doctest.h>

#include <set>

using namespace takagi;

namespace {

Rational q(const char* text) { return parse_rational(text); }

std::vector<std::string> texts(const std::vector<BinaryWord>& words)
{
    std::vector<std::string> out;
    for (const auto& w : words) {
        out.push_back(w.to_string());
    }
    return out;
}

// Counts principal walks of length 2m <= 2M, by recursion over nonnegative
// walks, whose truncated projection holds y. Values use 4^24 f scaling.
std::uint64_t oracle_local_count(const std::string& spec, const Rational& y, unsigned max_order)
{
    const unsigned n = 2 * max_order;
    const auto r = oracle::signs(spec, n + 1);
    std::uint64_t count = 0;
    std::string bits;
    std::function<void(long)> visit = [&](long d) {
        const auto m = bits.size() / 2;
        if (bits.size() % 2 == 0 && d == 0) {
            std::int64_t index = 0;
            for (char c : bits) {
                index = index * 2 + (c == '1');
            }
            const Rational base = oracle::f_dyadic(r, index, static_cast<unsigned>(bits.size()));
            const Rational width = Rational(1, 2) / (mpz_class(1) << (2 * m));
            const bool up = r[bits.size()] > 0;
            const Rational lo = up ? base : base - width;
            const Rational hi = up ? base + width : base;
            count += (lo <= y && y <= hi) ? 1 : 0;
        }
        if (bits.size() == n) {
            return;
        }
        for (char c : {'0', '1'}) {
            const long next = d + (c == '0' ? r[bits.size()] : -r[bits.size()]);
            if (next >= 0) {
                bits.push_back(c);
                visit(next);
                bits.pop_back();
            }
        }
    };
    visit(0);
    return count;
}

} // namespace

TEST_CASE("signatures")
{
    const auto t = parse_spec("(+)");
    CHECK(signature(t, BinaryWord::parse("01")).abs_walk == std::vector<std::int64_t>{1, 0});
    CHECK(signature(t, BinaryWord::parse("10")).abs_walk == std::vector<std::int64_t>{1, 0});
    CHECK(signature(t, BinaryWord::parse("00")).abs_walk == std::vector<std::int64_t>{1, 2});
    CHECK(signature(t, BinaryWord::parse("10")).depth() == 2);
}

TEST_CASE("principal representatives")
{
    const auto t = parse_spec("(+)");
    CHECK(principal_representative(t, BinaryWord::parse("10")).to_string() == "01");
    CHECK(principal_representative(t, BinaryWord::parse("0101")).to_string() == "0101");
    CHECK(principal_representative(t, BinaryWord::parse("1001")).to_string() == "0101");
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto seq = parse_spec(oracle::random_spec(rng, 4, 4));
        const auto w = BinaryWord::parse(oracle::bits_of(rng(), static_cast<unsigned>(rng() % 22)));
        const auto p = principal_representative(seq, w);
        CHECK(signature(seq, p) == signature(seq, w));
        CHECK(principal_representative(seq, p) == p);
        for (auto v : walk(seq, p).values) {
            CHECK(v >= 0);
        }
    }
}

TEST_CASE("local class members: examples")
{
    const auto t = parse_spec("(+)");
    CHECK(texts(local_class_members(t, BinaryWord::parse("01"))) == std::vector<std::string>{"01", "10"});
    CHECK(texts(local_class_members(t, BinaryWord::parse("0101"))) ==
          std::vector<std::string>{"0101", "0110", "1001", "1010"});
    CHECK(texts(local_class_members(t, BinaryWord())) == std::vector<std::string>{""});
    for (const auto& w : local_class_members(t, BinaryWord::parse("0101"))) {
        CHECK(eval_dyadic(t, w.value()) == eval_dyadic(t, DyadicRational::parse("5/16")));
    }
    CHECK(eval_dyadic(t, DyadicRational::parse("1/4")) == q("1/2"));
    CHECK(eval_dyadic(t, DyadicRational::parse("1/2")) == q("1/2"));
    CHECK_THROWS_AS(local_class_members(t, BinaryWord::parse(std::string(60, '0') + "01"), ClassBudget{0}),
                    BudgetError);
}

TEST_CASE("local class members share one value")
{
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 3000; ++trial) {
        const auto seq = parse_spec(oracle::random_spec(rng, 4, 4));
        const auto word = BinaryWord::parse(oracle::bits_of(rng(), static_cast<unsigned>(rng() % 21)));
        const auto members = local_class_members(seq, word);
        CHECK(members.size() == (std::size_t{1} << flip_blocks(seq, word)));
        const auto reference = eval_dyadic(seq, word.value());
        std::size_t nonnegative = 0;
        std::set<std::string> distinct;
        for (const auto& m : members) {
            distinct.insert(m.to_string());
            CHECK(signature(seq, m) == signature(seq, word));
            CHECK(eval_dyadic(seq, member_point(seq, word, m)) == reference);
            const auto v = walk(seq, m).values;
            nonnegative += std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x >= 0; }) ? 1 : 0;
        }
        CHECK(distinct.size() == members.size());
        CHECK(nonnegative == 1);
        CHECK(std::binary_search(members.begin(), members.end(), principal_representative(seq, word)));
    }
}

TEST_CASE("classify_local")
{
    const auto t = parse_spec("(+)");
    CHECK(classify_local(t, q("1/3")).kind == LocalKind::Cantor);
    const auto quarter = classify_local(t, q("1/4"));
    CHECK(quarter.kind == LocalKind::Finite);
    CHECK(quarter.last_zero == 2U);
    const auto zero = classify_local(t, 0);
    CHECK(zero.kind == LocalKind::Finite);
    CHECK(zero.last_zero == 0U);
    CHECK_THROWS_AS(classify_local(t, 1), DomainError);
    CHECK_THROWS_AS(classify_local(t, q("-1/3")), DomainError);
    CHECK(classify_local(t, q("1/1000003"), 100).kind == LocalKind::Undecided);
    CHECK(to_string(LocalKind::Cantor) == "CANTOR");
}

TEST_CASE("classify_local agrees with a long simulation")
{
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 300; ++trial) {
        const auto spec = oracle::random_spec(rng, 5, 5);
        const auto seq = parse_spec(spec);
        const long den = 1 + static_cast<long>(rng() % 200);
        const Rational x(static_cast<long>(rng() % static_cast<std::uint64_t>(den)), den);
        const auto c = classify_local(seq, x);
        REQUIRE(c.kind != LocalKind::Undecided);
        const std::size_t horizon = 6000;
        const auto r = oracle::signs(spec, horizon);
        const auto bits = expand(x, horizon).to_string();
        const auto d = oracle::walk(r, bits);
        std::size_t last = 0;
        std::size_t zeros_late = 0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (d[j] == 0) {
                last = j + 1;
                zeros_late += j >= horizon / 2 ? 1 : 0;
            }
        }
        if (c.kind == LocalKind::Cantor) {
            CHECK_MESSAGE(zeros_late > 0, spec << " x=" << to_string(x));
        } else {
            CHECK_MESSAGE(*c.last_zero == last, spec << " x=" << to_string(x));
        }
    }
}

TEST_CASE("local level set counts")
{
    const auto t = parse_spec("(+)");
    const auto third = count_local_level_sets(t, q("1/3"), 12);
    CHECK(third.count == oracle_local_count("(+)", q("1/3"), 12));
    CHECK(third.count >= 1);
    CHECK_FALSE(third.boundary);
    const auto fifth = count_local_level_sets(t, q("3/5"), 12);
    CHECK(fifth.count == oracle_local_count("(+)", q("3/5"), 12));
    CHECK(count_local_level_sets(t, q("1/2"), 2).balanced);
    std::mt19937_64 rng(89);
    for (const auto* spec : {"(+)", "(+-)", "-(+)", "(+--)"}) {
        const auto seq = parse_spec(spec);
        const auto e = extrema(seq);
        for (int trial = 0; trial < 20; ++trial) {
            const Rational y = e.min_value + e.height * Rational(static_cast<long>(rng() % 997), 997);
            std::uint64_t previous = 0;
            for (unsigned m = 0; m <= 8; ++m) {
                const auto c = count_local_level_sets(seq, y, m);
                CHECK(c.count >= previous);
                previous = c.count;
            }
            CHECK(previous == oracle_local_count(spec, y, 8));
        }
    }
}
