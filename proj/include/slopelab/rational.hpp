#pragma once
#include <cstdint>
#include <string>

namespace slopelab {

/* exact rational on 64-bit words, always normalized: den > 0, gcd(|num|,den) = 1.
   every quantity this library stores in one (valuations, slopes, weights of
   polygon vertices) stays tiny; intermediates are widened to 128 bits and
   checked, so overflow aborts instead of wrapping. */
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d);

    static Rational from_string(const std::string& s); /* "a" or "a/b" */

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    bool is_integer() const { return den == 1; }
    long long floor() const;
    long long ceil() const;
    std::string str() const;
};

/* rational value or +infinity (valuation of zero) */
struct Valuation {
    bool infinite = false;
    Rational value;

    Valuation() = default;
    Valuation(Rational v) : infinite(false), value(v) {}
    Valuation(long long v) : infinite(false), value(v) {}
    static Valuation inf() { Valuation v; v.infinite = true; return v; }

    Valuation operator+(const Valuation& o) const;
    Valuation operator-(const Valuation& o) const; /* undefined for inf-inf: aborts */
    bool operator==(const Valuation& o) const;
    bool operator!=(const Valuation& o) const { return !(*this == o); }
    bool operator<(const Valuation& o) const;
    bool operator<=(const Valuation& o) const { return *this < o || *this == o; }
    bool operator>(const Valuation& o) const { return o < *this; }
    bool operator>=(const Valuation& o) const { return o <= *this; }
    std::string str() const; /* "inf", "a" or "a/b" */
};

Valuation min(const Valuation& a, const Valuation& b);

} // namespace slopelab
