#include "slopelab/rational.hpp"
#include "slopelab/errors.hpp"

#include <cstdlib>
#include <numeric>

namespace slopelab {

namespace {

long long checked_narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        fail(errc::usage_error, "rational overflow");
    return (long long)v;
}

} // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) fail(errc::usage_error, "rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    num = n;
    den = d;
}

Rational Rational::from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::strtoll(s.c_str(), nullptr, 10));
    long long n = std::strtoll(s.substr(0, slash).c_str(), nullptr, 10);
    long long d = std::strtoll(s.substr(slash + 1).c_str(), nullptr, 10);
    return Rational(n, d);
}

Rational Rational::operator+(const Rational& o) const {
    __int128 n = (__int128)num * o.den + (__int128)o.num * den;
    __int128 d = (__int128)den * o.den;
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    __int128 g = a ? a : 1;
    return Rational(checked_narrow(n / g), checked_narrow(d / g));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    Rational a(num, o.den), b(o.num, den); /* cross-reduce before multiplying */
    __int128 n = (__int128)a.num * b.num;
    __int128 d = (__int128)a.den * b.den;
    return Rational(checked_narrow(n), checked_narrow(d));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) fail(errc::usage_error, "rational division by zero");
    Rational inv;
    inv.num = o.den;
    inv.den = o.num;
    if (inv.den < 0) { inv.num = -inv.num; inv.den = -inv.den; }
    return *this * inv;
}

bool Rational::operator<(const Rational& o) const {
    return (__int128)num * o.den < (__int128)o.num * den;
}

long long Rational::floor() const {
    if (num >= 0) return num / den;
    return -(((-num) + den - 1) / den);
}

long long Rational::ceil() const { return -((-*this).floor()); }

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Valuation Valuation::operator+(const Valuation& o) const {
    if (infinite || o.infinite) return inf();
    return Valuation(value + o.value);
}

Valuation Valuation::operator-(const Valuation& o) const {
    if (o.infinite) fail(errc::usage_error, "valuation difference with infinite subtrahend");
    if (infinite) return inf();
    return Valuation(value - o.value);
}

bool Valuation::operator==(const Valuation& o) const {
    if (infinite || o.infinite) return infinite == o.infinite;
    return value == o.value;
}

bool Valuation::operator<(const Valuation& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
}

std::string Valuation::str() const { return infinite ? "inf" : value.str(); }

Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

} // namespace slopelab
