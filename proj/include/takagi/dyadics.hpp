#pragma once

#include "takagi/rational.hpp"
#include "takagi/signs.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace takagi {

/// numerator / 2^exponent, kept with an odd numerator or zero exponent.
class DyadicRational {
public:
    DyadicRational() = default;
    DyadicRational(BigInt numerator, std::uint64_t exponent);

    /// Throws DomainError unless the denominator is a power of two.
    static DyadicRational from_rational(const Rational& value);

    /// Parses "k/2^n", "p/q" with q a power of two, or an integer.
    static DyadicRational parse(std::string_view text);

    const BigInt& numerator() const { return numerator_; }
    std::uint64_t exponent() const { return exponent_; }

    Rational to_rational() const;
    std::string to_string() const;

    friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
    friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b);
    friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b);
    DyadicRational operator-() const { return {-numerator_, exponent_}; }

    friend bool operator==(const DyadicRational& a, const DyadicRational& b)
    {
        return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
    }
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

private:
    BigInt numerator_ = 0;
    std::uint64_t exponent_ = 0;
};

/// The finite digit prefix eps_1 ... eps_n of a point in [0, 1). Depth is part
/// of the identity: "01" and "0100" are different words.
class BinaryWord {
public:
    BinaryWord() = default;
    explicit BinaryWord(std::vector<std::uint8_t> bits);

    /// Parses a string of '0'/'1' characters.
    static BinaryWord parse(std::string_view text);

    std::size_t depth() const { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    DyadicRational value() const;
    /// The index k with value() = k / 2^depth.
    BigInt index() const;

    BinaryWord child(std::uint8_t bit) const;
    BinaryWord prefix(std::size_t n) const;
    BinaryWord complemented() const;
    BinaryWord concat(const BinaryWord& tail) const;

    std::string to_string() const;

    friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
    friend auto operator<=>(const BinaryWord&, const BinaryWord&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// D_1 ... D_n along a word.
struct WalkTrace {
    std::vector<std::int64_t> values;

    std::size_t size() const { return values.size(); }
    /// D_k for k in 0..n, with D_0 = 0.
    std::int64_t at(std::size_t k) const { return k == 0 ? 0 : values[k - 1]; }
    std::int64_t last() const { return values.empty() ? 0 : values.back(); }
};

/// The zero-terminated binary expansion of x in [0, 1) to the given depth.
BinaryWord digits(const DyadicRational& x, std::size_t depth);

/// The first depth binary digits of a rational x in [0, 1), by exact doubling.
BinaryWord expand(const Rational& x, std::size_t depth);

/// D_k = sum_{j <= k} r_{j-1} (-1)^{eps_j}.
WalkTrace walk(const SignSequence& seq, const BinaryWord& word);

struct BalanceReport {
    bool balanced = false;
    std::size_t generation = 0;
};

BalanceReport is_balanced(const SignSequence& seq, const BinaryWord& word);

/// Complements every digit inside the excursions where the walk is negative,
/// giving the unique word whose walk is |D_j| pointwise.
BinaryWord flip_negative_excursions(const SignSequence& seq, const BinaryWord& word);

} // namespace takagi
