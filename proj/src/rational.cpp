#include "takagi/rational.hpp"

#include "takagi/errors.hpp"

#include <cctype>

namespace takagi {

BigInt pow2(std::uint64_t n)
{
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, n);
    return out;
}

Rational inv_pow2(std::uint64_t n)
{
    Rational out(BigInt(1), pow2(n));
    return out;
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t i = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        i = 1;
    }
    if (i == text.size()) {
        throw ParseError("malformed rational '" + std::string(whole) + "': missing digits");
    }
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
            throw ParseError("malformed rational '" + std::string(whole) + "': unexpected character '" +
                             std::string(1, text[j]) + "'");
        }
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return BigInt(digits, 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    if (text.empty()) {
        throw ParseError("malformed rational: empty string");
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    const auto num = parse_integer(text.substr(0, slash), text);
    auto rest = text.substr(slash + 1);
    BigInt den;
    if (rest.size() >= 2 && rest.substr(0, 2) == "2^") {
        const auto exp = parse_integer(rest.substr(2), text);
        if (exp < 0 || !exp.fits_ulong_p()) {
            throw ParseError("malformed rational '" + std::string(text) + "': bad exponent");
        }
        den = pow2(exp.get_ui());
    } else {
        den = parse_integer(rest, text);
    }
    if (den <= 0) {
        throw ParseError("malformed rational '" + std::string(text) + "': denominator must be positive");
    }
    Rational out(num, den);
    out.canonicalize();
    return out;
}

bool is_dyadic(const Rational& value)
{
    const BigInt& den = value.get_den();
    return mpz_popcount(den.get_mpz_t()) == 1;
}

BigInt floor(const Rational& value)
{
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

double to_double(const Rational& value)
{
    return value.get_d();
}

} // namespace takagi
