#pragma once

#include "takagi/dyadics.hpp"
#include "takagi/humps.hpp"
#include "takagi/rational.hpp"
#include "takagi/signs.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace takagi {

/// |D_1|, ..., |D_n| along a word. Two points are locally equivalent when
/// these agree at every depth.
struct LocalSignature {
    std::vector<std::int64_t> abs_walk;

    std::size_t depth() const { return abs_walk.size(); }
    friend bool operator==(const LocalSignature&, const LocalSignature&) = default;
};

LocalSignature signature(const SignSequence& seq, const BinaryWord& word);

/// The unique word with the same signature and a nonnegative walk.
BinaryWord principal_representative(const SignSequence& seq, const BinaryWord& word);

struct ClassBudget {
    std::size_t max_blocks = 24;
};

/// Number of independently flippable blocks: the complete excursions of the
/// walk, plus a trailing incomplete one when D_n != 0.
std::size_t flip_blocks(const SignSequence& seq, const BinaryWord& word);

/// Every word of the same depth and signature, 2^blocks of them, in
/// increasing value order. Throws BudgetError past the block budget.
std::vector<BinaryWord> local_class_members(const SignSequence& seq, const BinaryWord& word,
                                            ClassBudget budget = {});

/// The point of the member's local class matching the reference word
/// completed by zeros: the member completed by zeros when its last walk value
/// agrees with the reference, otherwise completed by ones (value + 2^-n).
DyadicRational member_point(const SignSequence& seq, const BinaryWord& reference, const BinaryWord& member);

enum class LocalKind { Finite, Cantor, Undecided };

struct LocalClassification {
    LocalKind kind = LocalKind::Undecided;
    /// Position of the last zero of the walk when kind is Finite.
    std::optional<std::uint64_t> last_zero;
};

std::string to_string(LocalKind kind);

/// Whether the walk of x returns to zero infinitely often. Decided exactly
/// from the joint period of the digits of x and the signs; Undecided only when
/// that period does not fit within the horizon.
LocalClassification classify_local(const SignSequence& seq, const Rational& x, std::uint64_t horizon = 1'000'000);

struct LocalCount {
    std::uint64_t count = 0;
    bool boundary = false;
    bool balanced = false;
    std::size_t max_order = 0;
};

/// Truncated principal-hump projections up to an order cutoff, sorted by base
/// height within each order so a level can be counted by binary search.
class PrincipalHumpIndex {
public:
    PrincipalHumpIndex(const SignSequence& seq, std::size_t max_order, EnumerationBudget budget = {});

    /// Principal humps of order <= max_order whose truncated projection holds y.
    LocalCount count(const Rational& y) const;

    std::size_t max_order() const { return max_order_; }
    std::size_t size() const;

private:
    struct OrderBucket {
        std::vector<Rational> bases;
        Rational width;
        bool upward = true;
    };
    std::size_t max_order_;
    std::vector<OrderBucket> buckets_;
};

LocalCount count_local_level_sets(const SignSequence& seq, const Rational& y, std::size_t max_order);

} // namespace takagi
