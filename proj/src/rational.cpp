#include "geohom/rational.hpp"

#include "geohom/errors.hpp"

#include <cctype>

namespace geohom {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (! std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

}

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (! body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash), den = body.substr(slash + 1);
        if (! all_digits(num) || ! all_digits(den))
            throw ParseError("malformed rational '" + std::string(text) + "'");
        BigInt d(std::string{den});
        if (d == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        result = Rational(BigInt(std::string{num}), d);
    }
    else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot), frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (! whole.empty() && ! all_digits(whole)) || (! frac.empty() && ! all_digits(frac)))
            throw ParseError("malformed decimal '" + std::string(text) + "'");
        BigInt w = whole.empty() ? BigInt(0) : BigInt(std::string{whole});
        BigInt f = frac.empty() ? BigInt(0) : BigInt(std::string{frac});
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        result = Rational(w * scale + f, scale);
    }
    else {
        if (! all_digits(body))
            throw ParseError("malformed number '" + std::string(text) + "'");
        result = Rational(BigInt(std::string{body}));
    }
    return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

std::int64_t floor_to_int(const Rational& q)
{
    BigInt n = numerator(q), d = denominator(q);
    BigInt f = n / d;
    if (n < 0 && f * d != n)
        f -= 1;
    return f.convert_to<std::int64_t>();
}

std::int64_t ceil_to_int(const Rational& q)
{
    return -floor_to_int(-q);
}

double to_double(const Rational& q)
{
    return q.convert_to<double>();
}

}
