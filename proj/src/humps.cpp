#include "takagi/humps.hpp"

#include "takagi/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace takagi {

DyadicRational Hump::right() const
{
    return base.value() + DyadicRational(1, 2 * order);
}

BigInt binomial(std::uint64_t n, std::uint64_t k)
{
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

BigInt catalan(std::uint64_t m)
{
    return binomial(2 * m, m) / (m + 1);
}

namespace {

struct HumpSearch {
    const SignSequence& seq;
    std::size_t max_depth;
    bool only_principal;
    std::optional<std::size_t> generation;
    std::vector<std::uint8_t> bits;
    std::vector<Hump> out;

    void emit(const WordState& state, std::size_t zeros, bool principal)
    {
        out.push_back(Hump{BinaryWord(bits), bits.size() / 2, zeros, state.left_value(), principal,
                           shift(seq, bits.size())});
    }

    void visit(const WordState& state, std::size_t zeros, bool principal)
    {
        if (state.slope == 0 && (!generation || zeros == *generation)) {
            emit(state, zeros, principal);
        }
        if (state.depth == max_depth) {
            return;
        }
        const auto remaining = static_cast<std::int64_t>(max_depth - state.depth) - 1;
        for (std::uint8_t bit = 0; bit <= 1; ++bit) {
            const auto next = state.child(seq, bit);
            if (std::abs(next.slope) > remaining) {
                continue;
            }
            if (only_principal && next.slope < 0) {
                continue;
            }
            const auto next_zeros = zeros + (next.slope == 0 ? 1 : 0);
            if (generation && next_zeros > *generation) {
                continue;
            }
            bits.push_back(bit);
            visit(next, next_zeros, principal && next.slope >= 0);
            bits.pop_back();
        }
    }
};

} // namespace

std::vector<Hump> enumerate_humps(const SignSequence& seq, std::size_t max_order, bool only_principal,
                                  std::optional<std::size_t> generation, EnumerationBudget budget)
{
    BigInt bound = 0;
    for (std::size_t m = 0; m <= max_order; ++m) {
        bound += only_principal ? catalan(m) : binomial(2 * m, m);
        if (bound > budget.max_humps) {
            throw BudgetError("hump enumeration to order " + std::to_string(max_order) + " exceeds the budget of " +
                              std::to_string(budget.max_humps) + " humps");
        }
    }
    HumpSearch search{seq, 2 * max_order, only_principal, generation, {}, {}};
    search.visit(WordState{}, 0, true);
    std::stable_sort(search.out.begin(), search.out.end(),
                     [](const Hump& a, const Hump& b) { return a.order < b.order; });
    return std::move(search.out);
}

SeriesValue catalan_series(std::uint64_t max_order)
{
    SeriesValue out;
    if (max_order <= kExactSeriesCutoff) {
        // Horner in base 4: acc = sum_m C_m 4^(M - m).
        BigInt acc = 0;
        BigInt c = 1;
        for (std::uint64_t m = 0; m <= max_order; ++m) {
            acc = 4 * acc + c;
            c = c * (2 * (2 * m + 1));
            c /= (m + 2);
        }
        Rational exact(acc, pow2(2 * max_order));
        exact.canonicalize();
        out.approx = exact.get_d();
        out.exact = std::move(exact);
        return out;
    }
    // C_{m+1} / 4^(m+1) = C_m / 4^m * (2m + 1) / (2m + 4).
    mpf_class term(1, 256);
    mpf_class total(0, 256);
    for (std::uint64_t m = 0; m <= max_order; ++m) {
        total += term;
        term *= static_cast<double>(2 * m + 1);
        term /= static_cast<double>(2 * m + 4);
    }
    out.approx = total.get_d();
    return out;
}

Enclosure hump_projection(const Hump& hump)
{
    const auto tail = extrema(hump.shape);
    const auto scale = inv_pow2(2 * hump.order);
    Enclosure out{hump.y_base + scale * tail.min_value, hump.y_base + scale * tail.max_value};
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

TruncatedHump truncated_projection(const Hump& hump)
{
    const Rational width = inv_pow2(2 * hump.order + 1);
    Enclosure projection = hump.shape.at(0) > 0 ? Enclosure{hump.y_base, hump.y_base + width}
                                                : Enclosure{hump.y_base - width, hump.y_base};
    projection.lo.canonicalize();
    projection.hi.canonicalize();
    return {hump, std::move(projection)};
}

Hump pair_with_principal(const SignSequence& seq, const Hump& hump, std::span<const Hump> principal_pool)
{
    const auto target = flip_negative_excursions(seq, hump.base);
    const auto it = std::find_if(principal_pool.begin(), principal_pool.end(),
                                 [&](const Hump& h) { return h.principal && h.base == target; });
    if (it == principal_pool.end()) {
        throw DomainError("pair_with_principal: pool has no principal hump with base " + target.to_string());
    }
    return *it;
}

Rational coverage_of_first_generation(const SignSequence& seq, std::size_t max_order)
{
    Rational total = 0;
    for (const auto& h : enumerate_humps(seq, max_order, false, 1)) {
        total += inv_pow2(2 * h.order);
    }
    total.canonicalize();
    return total;
}

} // namespace takagi
