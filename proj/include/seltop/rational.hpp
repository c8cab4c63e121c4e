#pragma once

#include "seltop/bigint.hpp"

#include <iosfwd>
#include <string>

namespace seltop {

// Exact rational number. Invariants: denominator > 0, gcd(num, den) = 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt num, BigInt den);

    static Rational parse(const std::string& s); // "p/q" or integer

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    int sign() const { return num_.sign(); }

    friend int cmp(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& b) { *this = *this + b; return *this; }
    Rational& operator-=(const Rational& b) { *this = *this - b; return *this; }
    Rational& operator*=(const Rational& b) { *this = *this * b; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    friend Rational abs(const Rational& a);
    friend Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
    friend Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }
    friend Rational pow(const Rational& base, int e); // e may be negative

    std::string to_string() const; // "p/q", or "p" when integral
    std::size_t hash() const { return num_.hash() * 1315423911u ^ den_.hash(); }

private:
    BigInt num_, den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational rat(long long num, long long den) { return Rational(BigInt(num), BigInt(den)); }

} // namespace seltop
