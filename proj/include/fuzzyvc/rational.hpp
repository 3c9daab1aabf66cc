#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "fuzzyvc/errors.hpp"

namespace fuzzyvc {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline Rational make_rational(long num, long den = 1)
{
    return Rational(num, den);
}

inline BigInt floor_of(const Rational& x)
{
    BigInt n = boost::multiprecision::numerator(x);
    BigInt d = boost::multiprecision::denominator(x);
    BigInt q = n / d;
    if (n % d != 0 && n < 0)
        q -= 1;
    return q;
}

inline BigInt ceil_of(const Rational& x)
{
    BigInt n = boost::multiprecision::numerator(x);
    BigInt d = boost::multiprecision::denominator(x);
    BigInt q = n / d;
    if (n % d != 0 && n > 0)
        q += 1;
    return q;
}

inline double to_double(const Rational& x)
{
    return x.convert_to<double>();
}

/** Canonical "p/q" text; always carries the denominator, even when it is 1. */
inline std::string to_string(const Rational& x)
{
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

namespace detail {

inline bool is_integer_text(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    return true;
}

}   // namespace detail

/**
 * Parse a rational written as "p/q". With `strict`, the text must be in
 * lowest terms with q > 0 (the file encoding); otherwise a bare integer
 * such as "1" is also accepted (command-line flags).
 */
inline Rational parse_rational(std::string_view text, bool strict = true)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
    {
        if (strict || !detail::is_integer_text(text))
            throw ParseError("expected \"p/q\", got \"" + std::string(text) + "\"");
        return Rational(BigInt(std::string(text)));
    }
    auto num_text = text.substr(0, slash);
    auto den_text = text.substr(slash + 1);
    if (!detail::is_integer_text(num_text) || !detail::is_integer_text(den_text) || den_text[0] == '-')
        throw ParseError("malformed rational \"" + std::string(text) + "\"");
    BigInt num(std::string{num_text});
    BigInt den(std::string{den_text});
    if (den == 0)
        throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    Rational value(num, den);
    if (strict && (boost::multiprecision::numerator(value) != num ||
                   boost::multiprecision::denominator(value) != den))
        throw ParseError("rational \"" + std::string(text) + "\" is not in lowest terms");
    return value;
}

/** Least common multiple of the denominators of `values` (1 for an empty list). */
inline BigInt common_denominator(const std::vector<Rational>& values)
{
    BigInt l = 1;
    for (const auto& v : values)
        l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(v)));
    return l;
}

inline Rational abs_of(const Rational& x)
{
    return x < 0 ? Rational(-x) : x;
}

}   // namespace fuzzyvc
