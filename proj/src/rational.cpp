#include "projkit/rational.hpp"

#include <cctype>

#include "projkit/error.hpp"

namespace projkit {

Rational make_rational(long num, long den)
{
    if (den == 0) {
        throw Error(ErrorKind::NonUnitDivisor, "zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(const Integer &num, const Integer &den)
{
    if (den == 0) {
        throw Error(ErrorKind::NonUnitDivisor, "zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw SyntaxError(0, "not a rational literal: '" + std::string(text) + "'");
    }
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) {
        throw Error(ErrorKind::NonUnitDivisor, "zero denominator in '" + std::string(text) + "'");
    }
    if (negative) {
        n = -n;
    }
    return make_rational(n, d);
}

std::string to_string(const Rational &r)
{
    if (r.get_den() == 1) {
        return r.get_num().get_str();
    }
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool rational_sqrt(const Rational &r, Rational &root)
{
    if (sgn(r) < 0) {
        return false;
    }
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den().get_mpz_t());
    if (n * n != r.get_num() || d * d != r.get_den()) {
        return false;
    }
    root = make_rational(n, d);
    return true;
}

Rational pow(const Rational &base, long exponent)
{
    if (exponent < 0) {
        if (sgn(base) == 0) {
            throw Error(ErrorKind::NonUnitDivisor, "zero raised to a negative power");
        }
        return pow(Rational(1) / base, -exponent);
    }
    Rational result(1);
    Rational b = base;
    unsigned long e = static_cast<unsigned long>(exponent);
    while (e != 0) {
        if (e & 1UL) {
            result *= b;
        }
        b *= b;
        e >>= 1;
    }
    return result;
}

} // namespace projkit
