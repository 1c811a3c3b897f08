#include "takagi/eval.hpp"

#include "takagi/errors.hpp"

#include <algorithm>

namespace takagi {

Rational phi(const Rational& x)
{
    Rational frac = x - Rational(floor(x));
    Rational other = 1 - frac;
    return frac <= other ? frac : other;
}

Rational eval_partial(const SignSequence& seq, const Rational& x, std::uint64_t k)
{
    Rational total = 0;
    Rational scaled = x;
    for (std::uint64_t n = 0; n < k; ++n) {
        Rational term = phi(scaled) * inv_pow2(n);
        if (seq.at(n) > 0) {
            total += term;
        } else {
            total -= term;
        }
        scaled *= 2;
    }
    total.canonicalize();
    return total;
}

Rational eval_dyadic(const SignSequence& seq, const DyadicRational& x)
{
    if (x < DyadicRational(0, 0) || x > DyadicRational(1, 0)) {
        throw DomainError("eval_dyadic: x must lie in [0, 1], got " + x.to_string());
    }
    // x = k / 2^e; the n-th term is r_n min(t, 2^(e-n) - t) / 2^e with
    // t = k mod 2^(e-n), and all terms past n = e vanish.
    const auto e = x.exponent();
    if (e <= 62) {
        const auto k = x.numerator().get_ui();
        std::int64_t total = 0;
        for (std::uint64_t n = 0; n < e; ++n) {
            const std::uint64_t span = std::uint64_t{1} << (e - n);
            const auto t = k & (span - 1);
            const auto u = static_cast<std::int64_t>(std::min(t, span - t));
            total += seq.at(n) > 0 ? u : -u;
        }
        Rational out(BigInt(static_cast<long>(total)), pow2(e));
        out.canonicalize();
        return out;
    }
    const auto& k = x.numerator();
    BigInt total = 0;
    BigInt t;
    for (std::uint64_t n = 0; n < e; ++n) {
        mpz_fdiv_r_2exp(t.get_mpz_t(), k.get_mpz_t(), e - n);
        BigInt other = pow2(e - n) - t;
        const BigInt& u = t <= other ? t : other;
        if (seq.at(n) > 0) {
            total += u;
        } else {
            total -= u;
        }
    }
    Rational out(total, pow2(e));
    out.canonicalize();
    return out;
}

Enclosure eval_enclosure(const SignSequence& seq, const Rational& x, std::uint64_t k,
                         const ShiftExtremaTable& table)
{
    const auto base = eval_partial(seq, x, k);
    const auto& tail = table.at(k);
    const auto scale = inv_pow2(k);
    Enclosure out{base + scale * tail.min_value, base + scale * tail.max_value};
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

Enclosure eval_enclosure(const SignSequence& seq, const Rational& x, std::uint64_t k)
{
    const auto tail = extrema(shift(seq, k));
    const auto base = eval_partial(seq, x, k);
    const auto scale = inv_pow2(k);
    Enclosure out{base + scale * tail.min_value, base + scale * tail.max_value};
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

Rational c_of_r(const SignSequence& seq)
{
    const auto& pre = seq.preamble();
    const auto& per = seq.period();
    Rational head = 0;
    for (std::size_t n = 0; n < pre.size(); ++n) {
        head += Rational(static_cast<long>(pre[n])) * inv_pow2(n + 2);
    }
    Rational cycle = 0;
    for (std::size_t j = 0; j < per.size(); ++j) {
        cycle += Rational(static_cast<long>(per[j])) * inv_pow2(j);
    }
    Rational tail = cycle * inv_pow2(pre.size() + 2) / (1 - inv_pow2(per.size()));
    Rational out = head + tail;
    out.canonicalize();
    return out;
}

Enclosure eval_via_D(const SignSequence& seq, const BinaryWord& word)
{
    const auto depth = word.depth();
    const auto trace = walk(seq, word);
    Rational sum = 0;
    for (std::size_t n = 1; n + 1 <= depth; ++n) {
        const Rational term = Rational(trace.at(n)) * inv_pow2(n);
        if (word[n] == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    const Rational center = c_of_r(seq) - sum / 4;
    // (1/4) sum_{n >= d} n 2^-n = (d + 1) / 2^(d + 1), with d >= 1.
    const auto d = std::max<std::size_t>(depth, 1);
    const Rational tail = Rational(BigInt(static_cast<unsigned long>(d + 1))) * inv_pow2(d + 1);
    Enclosure out{center - tail, center + tail};
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

WordState WordState::child(const SignSequence& seq, std::uint8_t bit) const
{
    const auto r = seq.at(depth);
    WordState next;
    next.depth = depth + 1;
    next.scaled_value = 2 * scaled_value;
    if (bit == 0) {
        next.slope = slope + r;
    } else {
        next.scaled_value += slope + r;
        next.slope = slope - r;
    }
    return next;
}

Rational WordState::left_value() const
{
    Rational out(scaled_value, pow2(depth));
    out.canonicalize();
    return out;
}

Rational WordState::right_value() const
{
    Rational out(scaled_value + slope, pow2(depth));
    out.canonicalize();
    return out;
}

WordState word_state(const SignSequence& seq, const BinaryWord& word)
{
    WordState state;
    for (std::size_t j = 0; j < word.depth(); ++j) {
        state = state.child(seq, word[j]);
    }
    return state;
}

Enclosure range_on_interval(const SignSequence& seq, const BinaryWord& word, const ShiftExtremaTable& table)
{
    const auto state = word_state(seq, word);
    const auto a = state.left_value();
    const auto b = state.right_value();
    const auto& tail = table.at(word.depth());
    const auto scale = inv_pow2(word.depth());
    Enclosure out{std::min(a, b) + scale * tail.min_value, std::max(a, b) + scale * tail.max_value};
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

Enclosure range_on_interval(const SignSequence& seq, const BinaryWord& word)
{
    const ShiftExtremaTable table(seq);
    return range_on_interval(seq, word, table);
}

} // namespace takagi
