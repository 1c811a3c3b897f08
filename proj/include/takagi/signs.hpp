#pragma once

#include "takagi/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace takagi {

using Sign = std::int8_t;

/// An eventually periodic sequence r_0, r_1, ... of +1/-1 signs.
///
/// Stored as a finite preamble followed by a nonempty repeating period. The
/// stored form is canonical: the period is primitive and the preamble does not
/// end with the last sign of the period, so equal sequences compare equal.
class SignSequence {
public:
    SignSequence(std::vector<Sign> preamble, std::vector<Sign> period);

    /// Parses the sign-spec grammar `[+-]*\([+-]+\)`, e.g. "(+)", "-(+)", "(+--)".
    static SignSequence parse(std::string_view text);

    Sign at(std::uint64_t n) const;

    const std::vector<Sign>& preamble() const { return preamble_; }
    const std::vector<Sign>& period() const { return period_; }

    /// Number of distinct shifts: |preamble| + |period|.
    std::size_t shift_classes() const { return preamble_.size() + period_.size(); }

    /// Sum of one period (the drift of the partial-sum walk).
    std::int64_t drift() const;

    SignSequence negated() const;

    std::string to_string() const;

    friend bool operator==(const SignSequence&, const SignSequence&) = default;

private:
    std::vector<Sign> preamble_;
    std::vector<Sign> period_;
};

inline SignSequence parse_spec(std::string_view text) { return SignSequence::parse(text); }

/// s_n = r_0 + ... + r_{n-1}.
std::int64_t partial_sum(const SignSequence& seq, std::uint64_t n);

/// First-passage time of the walk s_n to a level; empty means infinite.
struct HittingTime {
    std::optional<std::uint64_t> value;

    bool infinite() const { return !value.has_value(); }
    friend bool operator==(const HittingTime&, const HittingTime&) = default;
};

/// tau_j = inf{n : s_n = j}, j != 0. Infinite values are certified exactly
/// from the period drift, never by a step limit.
HittingTime hitting_time(const SignSequence& seq, std::int64_t level);

struct ExtremaReport {
    Rational max_value;
    Rational min_value;
    Rational height;
};

/// Exact max, min and height of f_r, summed in closed form from the record
/// times of the partial-sum walk.
ExtremaReport extrema(const SignSequence& seq);

/// Sum of 2^-tau_{2k-1} over the finite odd-level times tau <= horizon. The
/// closed-form maximum exceeds this by at most 2^-horizon.
Rational truncated_max_sum(const SignSequence& seq, std::uint64_t horizon);

/// The sequence (r_n, r_{n+1}, ...).
SignSequence shift(const SignSequence& seq, std::uint64_t n);

enum class HeightClass { Half, TwoThirds, Intermediate };

HeightClass classify_height(const SignSequence& seq);

std::string to_string(HeightClass cls);

/// Extrema of every shift of a sequence, computed once. Shift n and shift
/// n + |period| agree once n >= |preamble|, so the table is finite.
class ShiftExtremaTable {
public:
    explicit ShiftExtremaTable(const SignSequence& seq);

    const ExtremaReport& at(std::uint64_t shift) const;
    std::size_t index_of(std::uint64_t shift) const;
    std::size_t size() const { return table_.size(); }

private:
    std::size_t preamble_;
    std::size_t period_;
    std::vector<ExtremaReport> table_;
};

} // namespace takagi
