#pragma once

#include "takagi/dyadics.hpp"
#include "takagi/eval.hpp"
#include "takagi/rational.hpp"
#include "takagi/signs.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace takagi {

/// The piece of the graph over I(x0) = [x0, x0 + 4^-m] for a balanced base x0
/// of length 2m. It is a 4^-m scaled copy of the graph of f_shape raised by
/// y_base.
struct Hump {
    BinaryWord base;
    std::size_t order = 0;
    std::size_t generation = 0;
    Rational y_base;
    bool principal = false;
    SignSequence shape;

    DyadicRational left() const { return base.value(); }
    DyadicRational right() const;
};

/// A hump with the interiors of its next-generation sub-humps removed.
struct TruncatedHump {
    Hump hump;
    Enclosure y_projection;
};

struct EnumerationBudget {
    std::uint64_t max_humps = 3'000'000;
};

/// All balanced words of length 2m <= 2 * max_order, grouped by order and
/// sorted by base value within an order. There are binom(2m, m) of order m, and
/// C_m of them principal. Throws BudgetError if the count could exceed the
/// budget.
std::vector<Hump> enumerate_humps(const SignSequence& seq, std::size_t max_order, bool only_principal,
                                  std::optional<std::size_t> generation = std::nullopt,
                                  EnumerationBudget budget = {});

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt catalan(std::uint64_t m);

/// Partial sums of sum_m C_m 4^-m, which converges to 2.
struct SeriesValue {
    std::optional<Rational> exact;
    double approx = 0.0;
};

/// Orders above this are summed in 256-bit floating point instead of exactly.
inline constexpr std::uint64_t kExactSeriesCutoff = 20000;

SeriesValue catalan_series(std::uint64_t max_order);

Enclosure hump_projection(const Hump& hump);

/// The y-projection of the truncated hump: an interval of length (1/2) 4^-m
/// anchored at y_base and extending in the direction of the shape's first sign.
TruncatedHump truncated_projection(const Hump& hump);

/// The principal hump of the same order whose walk is |D_j(base)|.
Hump pair_with_principal(const SignSequence& seq, const Hump& hump, std::span<const Hump> principal_pool);

/// Total length of I(x0) over first-generation bases of order <= max_order.
Rational coverage_of_first_generation(const SignSequence& seq, std::size_t max_order);

} // namespace takagi
