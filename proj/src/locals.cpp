#include "takagi/locals.hpp"

#include "takagi/errors.hpp"

#include <algorithm>
#include <numeric>

namespace takagi {

LocalSignature signature(const SignSequence& seq, const BinaryWord& word)
{
    LocalSignature out;
    for (auto d : walk(seq, word).values) {
        out.abs_walk.push_back(d < 0 ? -d : d);
    }
    return out;
}

BinaryWord principal_representative(const SignSequence& seq, const BinaryWord& word)
{
    return flip_negative_excursions(seq, word);
}

namespace {

// Half-open step ranges [begin, end) of the blocks between zeros of the walk.
std::vector<std::pair<std::size_t, std::size_t>> blocks_of(const SignSequence& seq, const BinaryWord& word)
{
    const auto trace = walk(seq, word);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t begin = 0;
    for (std::size_t j = 0; j < trace.size(); ++j) {
        if (trace.values[j] == 0) {
            out.emplace_back(begin, j + 1);
            begin = j + 1;
        }
    }
    if (begin < trace.size()) {
        out.emplace_back(begin, trace.size());
    }
    return out;
}

} // namespace

std::size_t flip_blocks(const SignSequence& seq, const BinaryWord& word)
{
    return blocks_of(seq, word).size();
}

std::vector<BinaryWord> local_class_members(const SignSequence& seq, const BinaryWord& word, ClassBudget budget)
{
    const auto blocks = blocks_of(seq, word);
    if (blocks.size() > budget.max_blocks) {
        throw BudgetError("local class of " + word.to_string() + " has " + std::to_string(blocks.size()) +
                          " blocks, over the budget of " + std::to_string(budget.max_blocks));
    }
    std::vector<BinaryWord> out;
    const std::uint64_t count = std::uint64_t{1} << blocks.size();
    out.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        auto bits = word.bits();
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if ((mask >> b) & 1U) {
                for (auto j = blocks[b].first; j < blocks[b].second; ++j) {
                    bits[j] ^= 1U;
                }
            }
        }
        out.emplace_back(std::move(bits));
    }
    std::sort(out.begin(), out.end());
    return out;
}

DyadicRational member_point(const SignSequence& seq, const BinaryWord& reference, const BinaryWord& member)
{
    if (reference.depth() != member.depth()) {
        throw DomainError("member_point: words differ in depth");
    }
    const auto same_tail = walk(seq, reference).last() == walk(seq, member).last();
    const auto value = member.value();
    if (same_tail) {
        return value;
    }
    return value + DyadicRational(1, member.depth());
}

std::string to_string(LocalKind kind)
{
    switch (kind) {
    case LocalKind::Finite:
        return "FINITE";
    case LocalKind::Cantor:
        return "CANTOR";
    case LocalKind::Undecided:
        return "UNDECIDED";
    }
    return "UNDECIDED";
}

LocalClassification classify_local(const SignSequence& seq, const Rational& x, std::uint64_t horizon)
{
    if (x < 0 || x >= 1) {
        throw DomainError("classify_local: x must lie in [0, 1), got " + to_string(x));
    }
    // Binary digits of p/q: a preamble of v2(q) digits, then period
    // ord_{q'}(2) for the odd part q' (a single repeated 0 when q' = 1).
    BigInt odd = x.get_den();
    const std::uint64_t digit_preamble = mpz_scan1(odd.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), digit_preamble);
    std::uint64_t digit_period = 1;
    if (odd != 1) {
        BigInt power = 2 % odd;
        while (power != 1) {
            if (++digit_period > horizon) {
                return {};
            }
            power = (power * 2) % odd;
        }
    }
    const std::uint64_t preamble = std::max<std::uint64_t>(digit_preamble, seq.preamble().size());
    const std::uint64_t period = std::lcm(digit_period, static_cast<std::uint64_t>(seq.period().size()));
    if (preamble + period > horizon) {
        return {};
    }
    const auto trace = walk(seq, expand(x, preamble + period));
    std::optional<std::uint64_t> last_zero = 0;
    for (std::uint64_t j = 1; j <= preamble; ++j) {
        if (trace.at(j) == 0) {
            last_zero = j;
        }
    }
    const std::int64_t drift = trace.at(preamble + period) - trace.at(preamble);
    LocalClassification out;
    if (drift == 0) {
        for (std::uint64_t i = 1; i <= period; ++i) {
            if (trace.at(preamble + i) == 0) {
                out.kind = LocalKind::Cantor;
                return out;
            }
        }
    } else {
        // D_{preamble + c*period + i} = D_{preamble + i} + c * drift.
        for (std::uint64_t i = 1; i <= period; ++i) {
            const auto v = trace.at(preamble + i);
            if (v % drift == 0 && -v / drift >= 0) {
                const auto c = static_cast<std::uint64_t>(-v / drift);
                last_zero = std::max(*last_zero, preamble + c * period + i);
            }
        }
    }
    out.kind = LocalKind::Finite;
    out.last_zero = last_zero;
    return out;
}

PrincipalHumpIndex::PrincipalHumpIndex(const SignSequence& seq, std::size_t max_order, EnumerationBudget budget)
    : max_order_(max_order), buckets_(max_order + 1)
{
    for (std::size_t m = 0; m <= max_order; ++m) {
        buckets_[m].width = inv_pow2(2 * m + 1);
        buckets_[m].upward = seq.at(2 * m) > 0;
    }
    for (auto& h : enumerate_humps(seq, max_order, true, std::nullopt, budget)) {
        buckets_[h.order].bases.push_back(std::move(h.y_base));
    }
    for (auto& b : buckets_) {
        std::sort(b.bases.begin(), b.bases.end());
    }
}

std::size_t PrincipalHumpIndex::size() const
{
    std::size_t n = 0;
    for (const auto& b : buckets_) {
        n += b.bases.size();
    }
    return n;
}

LocalCount PrincipalHumpIndex::count(const Rational& y) const
{
    LocalCount out;
    out.max_order = max_order_;
    for (const auto& b : buckets_) {
        // Upward projections [base, base + w] hold y iff base in [y - w, y].
        Rational lo = b.upward ? Rational(y - b.width) : y;
        Rational hi = b.upward ? y : Rational(y + b.width);
        const auto first = std::lower_bound(b.bases.begin(), b.bases.end(), lo);
        const auto last = std::upper_bound(b.bases.begin(), b.bases.end(), hi);
        out.count += static_cast<std::uint64_t>(last - first);
        if (first != last && (*first == lo || *std::prev(last) == hi)) {
            out.boundary = true;
        }
        out.balanced = out.balanced || std::binary_search(b.bases.begin(), b.bases.end(), y);
    }
    return out;
}

LocalCount count_local_level_sets(const SignSequence& seq, const Rational& y, std::size_t max_order)
{
    return PrincipalHumpIndex(seq, max_order).count(y);
}

} // namespace takagi
