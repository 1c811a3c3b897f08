#include "takagi/signs.hpp"

#include "takagi/errors.hpp"

#include <algorithm>
#include <numeric>

namespace takagi {

namespace {

std::vector<Sign> primitive_period(const std::vector<Sign>& period)
{
    const auto n = period.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) {
            continue;
        }
        bool repeats = true;
        for (std::size_t i = d; i < n && repeats; ++i) {
            repeats = period[i] == period[i - d];
        }
        if (repeats) {
            return {period.begin(), period.begin() + static_cast<std::ptrdiff_t>(d)};
        }
    }
    return period;
}

void check_signs(const std::vector<Sign>& signs)
{
    for (auto s : signs) {
        if (s != 1 && s != -1) {
            throw DomainError("sign sequence entries must be +1 or -1");
        }
    }
}

} // namespace

SignSequence::SignSequence(std::vector<Sign> preamble, std::vector<Sign> period)
    : preamble_(std::move(preamble)), period_(std::move(period))
{
    if (period_.empty()) {
        throw DomainError("sign sequence period must be nonempty");
    }
    check_signs(preamble_);
    check_signs(period_);
    period_ = primitive_period(period_);
    while (!preamble_.empty() && preamble_.back() == period_.back()) {
        preamble_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
}

SignSequence SignSequence::parse(std::string_view text)
{
    std::vector<Sign> preamble;
    std::vector<Sign> period;
    std::size_t i = 0;
    auto sign_of = [&](char c) -> std::optional<Sign> {
        if (c == '+') {
            return Sign{1};
        }
        if (c == '-') {
            return Sign{-1};
        }
        return std::nullopt;
    };
    auto fail = [&](std::size_t pos, const std::string& what) {
        throw ParseError("malformed sign spec '" + std::string(text) + "' at position " +
                         std::to_string(pos) + ": " + what);
    };
    for (; i < text.size() && text[i] != '('; ++i) {
        auto s = sign_of(text[i]);
        if (!s) {
            fail(i, "expected '+', '-' or '('");
        }
        preamble.push_back(*s);
    }
    if (i == text.size()) {
        fail(i, "missing parenthesized period");
    }
    ++i;
    for (; i < text.size() && text[i] != ')'; ++i) {
        auto s = sign_of(text[i]);
        if (!s) {
            fail(i, "expected '+', '-' or ')'");
        }
        period.push_back(*s);
    }
    if (i == text.size()) {
        fail(i, "missing ')'");
    }
    if (period.empty()) {
        fail(i, "empty period");
    }
    if (i + 1 != text.size()) {
        fail(i + 1, "trailing characters after period");
    }
    return SignSequence(std::move(preamble), std::move(period));
}

Sign SignSequence::at(std::uint64_t n) const
{
    if (n < preamble_.size()) {
        return preamble_[n];
    }
    return period_[(n - preamble_.size()) % period_.size()];
}

std::int64_t SignSequence::drift() const
{
    return std::accumulate(period_.begin(), period_.end(), std::int64_t{0});
}

SignSequence SignSequence::negated() const
{
    auto flip = [](std::vector<Sign> v) {
        for (auto& s : v) {
            s = static_cast<Sign>(-s);
        }
        return v;
    };
    return SignSequence(flip(preamble_), flip(period_));
}

std::string SignSequence::to_string() const
{
    std::string out;
    for (auto s : preamble_) {
        out += s > 0 ? '+' : '-';
    }
    out += '(';
    for (auto s : period_) {
        out += s > 0 ? '+' : '-';
    }
    out += ')';
    return out;
}

std::int64_t partial_sum(const SignSequence& seq, std::uint64_t n)
{
    const auto& pre = seq.preamble();
    const auto& per = seq.period();
    std::int64_t s = 0;
    const auto head = std::min<std::uint64_t>(n, pre.size());
    for (std::uint64_t i = 0; i < head; ++i) {
        s += pre[i];
    }
    if (n <= pre.size()) {
        return s;
    }
    const auto rest = n - pre.size();
    s += static_cast<std::int64_t>(rest / per.size()) * seq.drift();
    for (std::uint64_t i = 0; i < rest % per.size(); ++i) {
        s += per[i];
    }
    return s;
}

namespace {

// Ceiling division for positive divisor.
std::int64_t ceil_div(std::int64_t a, std::int64_t b)
{
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

} // namespace

HittingTime hitting_time(const SignSequence& seq, std::int64_t level)
{
    if (level == 0) {
        throw DomainError("hitting_time: level must be nonzero");
    }
    const auto& pre = seq.preamble();
    const auto& per = seq.period();
    std::int64_t s = 0;
    for (std::size_t n = 0; n < pre.size(); ++n) {
        s += pre[n];
        if (s == level) {
            return {n + 1};
        }
    }
    // Within one period the walk visits base + c*drift + prefix[i], i = 1..P.
    std::vector<std::int64_t> prefix(per.size() + 1, 0);
    for (std::size_t i = 0; i < per.size(); ++i) {
        prefix[i + 1] = prefix[i] + per[i];
    }
    const auto lo = *std::min_element(prefix.begin() + 1, prefix.end());
    const auto hi = *std::max_element(prefix.begin() + 1, prefix.end());
    const auto drift = seq.drift();
    const auto base = s;

    std::int64_t cycle = 0;
    if (drift > 0) {
        cycle = std::max<std::int64_t>(0, ceil_div(level - base - hi, drift));
    } else if (drift < 0) {
        cycle = std::max<std::int64_t>(0, ceil_div(base + lo - level, -drift));
    }
    const auto offset = base + cycle * drift;
    if (level < offset + lo || level > offset + hi) {
        return {};
    }
    for (std::size_t i = 1; i <= per.size(); ++i) {
        if (offset + prefix[i] == level) {
            return {pre.size() + static_cast<std::uint64_t>(cycle) * per.size() + i};
        }
    }
    return {};
}

namespace {

// M(f) = sum over odd positive levels j of 2^-tau_j.
Rational max_value(const SignSequence& seq)
{
    const auto horizon = seq.preamble().size() + seq.period().size();
    std::int64_t record = 0;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        record = std::max(record, partial_sum(seq, n));
    }
    Rational total = 0;
    for (std::int64_t j = 1; j <= record; j += 2) {
        total += inv_pow2(*hitting_time(seq, j).value);
    }
    const auto drift = seq.drift();
    if (drift <= 0) {
        return total;
    }
    // Past the record level, tau_{j + drift} = tau_j + P. Step in levels by an
    // even multiple of the drift so odd levels map to odd levels.
    const std::int64_t level_step = drift % 2 == 0 ? drift : 2 * drift;
    const auto time_step = static_cast<std::uint64_t>(level_step / drift) * seq.period().size();
    Rational block = 0;
    for (std::int64_t j = record + 1; j <= record + level_step; ++j) {
        if (j % 2 != 0) {
            block += inv_pow2(*hitting_time(seq, j).value);
        }
    }
    const Rational ratio = 1 - inv_pow2(time_step);
    total += block / ratio;
    total.canonicalize();
    return total;
}

} // namespace

ExtremaReport extrema(const SignSequence& seq)
{
    ExtremaReport out;
    out.max_value = max_value(seq);
    out.min_value = -max_value(seq.negated());
    out.height = out.max_value - out.min_value;
    return out;
}

Rational truncated_max_sum(const SignSequence& seq, std::uint64_t horizon)
{
    Rational total = 0;
    for (std::int64_t j = 1;; j += 2) {
        const auto tau = hitting_time(seq, j);
        if (tau.infinite() || *tau.value > horizon) {
            break;
        }
        total += inv_pow2(*tau.value);
    }
    return total;
}

SignSequence shift(const SignSequence& seq, std::uint64_t n)
{
    const auto& pre = seq.preamble();
    const auto& per = seq.period();
    if (n < pre.size()) {
        return SignSequence({pre.begin() + static_cast<std::ptrdiff_t>(n), pre.end()}, per);
    }
    const auto k = static_cast<std::ptrdiff_t>((n - pre.size()) % per.size());
    std::vector<Sign> rotated(per.begin() + k, per.end());
    rotated.insert(rotated.end(), per.begin(), per.begin() + k);
    return SignSequence({}, std::move(rotated));
}

HeightClass classify_height(const SignSequence& seq)
{
    const auto tail = shift(seq, 1);
    if (tail.preamble().empty() && tail.period().size() == 1) {
        return HeightClass::TwoThirds;
    }
    if (seq.drift() == 0) {
        const auto horizon = seq.preamble().size() + seq.period().size();
        std::int64_t lo = 0;
        std::int64_t hi = 0;
        for (std::uint64_t n = 1; n <= horizon; ++n) {
            const auto s = partial_sum(seq, n);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if ((lo == 0 && hi <= 2) || (hi == 0 && lo >= -2)) {
            return HeightClass::Half;
        }
    }
    return HeightClass::Intermediate;
}

std::string to_string(HeightClass cls)
{
    switch (cls) {
    case HeightClass::Half:
        return "HALF";
    case HeightClass::TwoThirds:
        return "TWO_THIRDS";
    case HeightClass::Intermediate:
        return "INTERMEDIATE";
    }
    return "INTERMEDIATE";
}

ShiftExtremaTable::ShiftExtremaTable(const SignSequence& seq)
    : preamble_(seq.preamble().size()), period_(seq.period().size())
{
    table_.reserve(preamble_ + period_);
    for (std::size_t n = 0; n < preamble_ + period_; ++n) {
        table_.push_back(extrema(shift(seq, n)));
    }
}

std::size_t ShiftExtremaTable::index_of(std::uint64_t shift) const
{
    if (shift < preamble_) {
        return static_cast<std::size_t>(shift);
    }
    return preamble_ + static_cast<std::size_t>((shift - preamble_) % period_);
}

const ExtremaReport& ShiftExtremaTable::at(std::uint64_t shift) const
{
    return table_[index_of(shift)];
}

} // namespace takagi
