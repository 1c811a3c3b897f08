#include "takagi/dyadics.hpp"

#include "takagi/errors.hpp"

namespace takagi {

DyadicRational::DyadicRational(BigInt numerator, std::uint64_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent)
{
    if (numerator_ == 0) {
        exponent_ = 0;
        return;
    }
    const auto twos = mpz_scan1(numerator_.get_mpz_t(), 0);
    const auto drop = std::min<std::uint64_t>(twos, exponent_);
    if (drop > 0) {
        mpz_fdiv_q_2exp(numerator_.get_mpz_t(), numerator_.get_mpz_t(), drop);
        exponent_ -= drop;
    }
}

DyadicRational DyadicRational::from_rational(const Rational& value)
{
    if (!is_dyadic(value)) {
        throw DomainError("not a dyadic rational: " + takagi::to_string(value));
    }
    const auto exponent = mpz_scan1(value.get_den_mpz_t(), 0);
    return DyadicRational(value.get_num(), exponent);
}

DyadicRational DyadicRational::parse(std::string_view text)
{
    const auto value = parse_rational(text);
    if (!is_dyadic(value)) {
        throw ParseError("not a dyadic rational: '" + std::string(text) + "'");
    }
    return from_rational(value);
}

Rational DyadicRational::to_rational() const
{
    Rational out(numerator_, pow2(exponent_));
    out.canonicalize();
    return out;
}

std::string DyadicRational::to_string() const
{
    if (exponent_ == 0) {
        return numerator_.get_str();
    }
    return numerator_.get_str() + "/2^" + std::to_string(exponent_);
}

namespace {

BigInt scaled(const DyadicRational& x, std::uint64_t exponent)
{
    BigInt out;
    mpz_mul_2exp(out.get_mpz_t(), x.numerator().get_mpz_t(), exponent - x.exponent());
    return out;
}

} // namespace

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b)
{
    const auto e = std::max(a.exponent_, b.exponent_);
    return {scaled(a, e) + scaled(b, e), e};
}

DyadicRational operator-(const DyadicRational& a, const DyadicRational& b)
{
    const auto e = std::max(a.exponent_, b.exponent_);
    return {scaled(a, e) - scaled(b, e), e};
}

DyadicRational operator*(const DyadicRational& a, const DyadicRational& b)
{
    return {a.numerator_ * b.numerator_, a.exponent_ + b.exponent_};
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b)
{
    const auto e = std::max(a.exponent_, b.exponent_);
    const auto c = cmp(scaled(a, e), scaled(b, e));
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

BinaryWord::BinaryWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits))
{
    for (auto b : bits_) {
        if (b > 1) {
            throw DomainError("binary word digits must be 0 or 1");
        }
    }
}

BinaryWord BinaryWord::parse(std::string_view text)
{
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw ParseError("malformed bit string '" + std::string(text) + "' at position " + std::to_string(i));
        }
        bits.push_back(static_cast<std::uint8_t>(text[i] - '0'));
    }
    return BinaryWord(std::move(bits));
}

BigInt BinaryWord::index() const
{
    BigInt k = 0;
    for (auto b : bits_) {
        k = 2 * k + b;
    }
    return k;
}

DyadicRational BinaryWord::value() const
{
    return {index(), bits_.size()};
}

BinaryWord BinaryWord::child(std::uint8_t bit) const
{
    auto bits = bits_;
    bits.push_back(bit);
    return BinaryWord(std::move(bits));
}

BinaryWord BinaryWord::prefix(std::size_t n) const
{
    return BinaryWord({bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min(n, bits_.size()))});
}

BinaryWord BinaryWord::complemented() const
{
    auto bits = bits_;
    for (auto& b : bits) {
        b ^= 1U;
    }
    return BinaryWord(std::move(bits));
}

BinaryWord BinaryWord::concat(const BinaryWord& tail) const
{
    auto bits = bits_;
    bits.insert(bits.end(), tail.bits_.begin(), tail.bits_.end());
    return BinaryWord(std::move(bits));
}

std::string BinaryWord::to_string() const
{
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) {
        out += static_cast<char>('0' + b);
    }
    return out;
}

BinaryWord digits(const DyadicRational& x, std::size_t depth)
{
    if (x.numerator() < 0 || x >= DyadicRational(1, 0)) {
        throw DomainError("digits: x must lie in [0, 1), got " + x.to_string());
    }
    if (depth < x.exponent()) {
        throw DomainError("digits: depth " + std::to_string(depth) + " cannot represent " + x.to_string());
    }
    BigInt k;
    mpz_mul_2exp(k.get_mpz_t(), x.numerator().get_mpz_t(), depth - x.exponent());
    std::vector<std::uint8_t> bits(depth, 0);
    for (std::size_t i = 0; i < depth; ++i) {
        bits[depth - 1 - i] = static_cast<std::uint8_t>(mpz_tstbit(k.get_mpz_t(), i));
    }
    return BinaryWord(std::move(bits));
}

BinaryWord expand(const Rational& x, std::size_t depth)
{
    if (x < 0 || x >= 1) {
        throw DomainError("expand: x must lie in [0, 1), got " + takagi::to_string(x));
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(depth);
    Rational frac = x;
    for (std::size_t i = 0; i < depth; ++i) {
        frac *= 2;
        if (frac >= 1) {
            bits.push_back(1);
            frac -= 1;
        } else {
            bits.push_back(0);
        }
    }
    return BinaryWord(std::move(bits));
}

WalkTrace walk(const SignSequence& seq, const BinaryWord& word)
{
    WalkTrace trace;
    trace.values.reserve(word.depth());
    std::int64_t d = 0;
    for (std::size_t j = 0; j < word.depth(); ++j) {
        d += word[j] == 0 ? seq.at(j) : -seq.at(j);
        trace.values.push_back(d);
    }
    return trace;
}

BalanceReport is_balanced(const SignSequence& seq, const BinaryWord& word)
{
    if (word.depth() % 2 != 0) {
        return {};
    }
    const auto trace = walk(seq, word);
    BalanceReport out;
    out.balanced = trace.last() == 0;
    if (out.balanced) {
        for (auto d : trace.values) {
            out.generation += d == 0 ? 1 : 0;
        }
    }
    return out;
}

BinaryWord flip_negative_excursions(const SignSequence& seq, const BinaryWord& word)
{
    const auto trace = walk(seq, word);
    auto bits = word.bits();
    // D_j is nonzero throughout an excursion, so its sign at any step is the
    // sign of the whole block.
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (trace.values[j] < 0 || (trace.values[j] == 0 && trace.at(j) < 0)) {
            bits[j] ^= 1U;
        }
    }
    return BinaryWord(std::move(bits));
}

} // namespace takagi
