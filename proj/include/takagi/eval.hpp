#pragma once

#include "takagi/dyadics.hpp"
#include "takagi/rational.hpp"
#include "takagi/signs.hpp"

#include <cstdint>

namespace takagi {

/// Exact closed interval [lo, hi] certified to contain a value or a range.
struct Enclosure {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& y) const { return lo <= y && y <= hi; }
    bool intersects(const Enclosure& other) const { return lo <= other.hi && other.lo <= hi; }

    friend bool operator==(const Enclosure&, const Enclosure&) = default;
};

/// Distance from x to the nearest integer.
Rational phi(const Rational& x);

/// f_k(x) = sum_{n<k} r_n 2^-n phi(2^n x).
Rational eval_partial(const SignSequence& seq, const Rational& x, std::uint64_t k);

/// f(x) exactly, for dyadic x in [0, 1].
Rational eval_dyadic(const SignSequence& seq, const DyadicRational& x);

/// f(x) in f_k(x) + 2^-k [m(g), M(g)] with g the k-fold shift of the signs.
Enclosure eval_enclosure(const SignSequence& seq, const Rational& x, std::uint64_t k);
Enclosure eval_enclosure(const SignSequence& seq, const Rational& x, std::uint64_t k,
                         const ShiftExtremaTable& table);

/// C(r) = sum_n r_n / 2^(n+2).
Rational c_of_r(const SignSequence& seq);

/// Encloses f(value(word)) through the digit-walk series
///   f(x) = C(r) - 1/4 sum_{n>=1} (-1)^{eps_{n+1}} D_n(x) / 2^n,
/// summing the first depth-1 terms exactly and bounding the rest by |D_n| <= n.
Enclosure eval_via_D(const SignSequence& seq, const BinaryWord& word);

/// Certified range of f over the closed interval of a word.
///
/// On [a, a + 2^-n] the partial sum f_n is affine with slope D_n, and the
/// remainder is 2^-n g(2^n x - k) with g the n-fold shift. When D_n = 0 the
/// bound is the exact image.
Enclosure range_on_interval(const SignSequence& seq, const BinaryWord& word);
Enclosure range_on_interval(const SignSequence& seq, const BinaryWord& word, const ShiftExtremaTable& table);

/// Incremental state of f_n at the left end of a word's interval.
///
/// scaled_value = 2^n f_n(a) is an integer and slope = D_n. Extending the word
/// by a digit updates both in O(1) big-integer operations.
struct WordState {
    std::uint64_t depth = 0;
    BigInt scaled_value = 0;
    std::int64_t slope = 0;

    WordState child(const SignSequence& seq, std::uint8_t bit) const;
    /// f_n at the left end a.
    Rational left_value() const;
    /// f_n at the right end a + 2^-n.
    Rational right_value() const;
};

WordState word_state(const SignSequence& seq, const BinaryWord& word);

} // namespace takagi
