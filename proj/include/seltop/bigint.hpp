#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace seltop {

// Arbitrary-precision signed integer, sign + magnitude.
// Magnitudes that fit in a uint64_t stay on an inline fast path; larger
// values spill into base-2^32 limbs (little-endian, no leading zeros).
class BigInt {
public:
    BigInt() = default;
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    BigInt(long v) : BigInt(static_cast<long long>(v)) {}
    BigInt(long long v);
    BigInt(unsigned long long v);

    static BigInt from_string(const std::string& s); // decimal, optional leading '-'

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    // Total order; exact.
    friend int cmp(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    BigInt operator-() const;
    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    // Truncated division (C semantics): q = trunc(a/b), r = a - q*b.
    friend void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& b) { *this = *this + b; return *this; }
    BigInt& operator-=(const BigInt& b) { *this = *this - b; return *this; }
    BigInt& operator*=(const BigInt& b) { *this = *this * b; return *this; }

    friend BigInt abs(const BigInt& a);
    friend BigInt gcd(BigInt a, BigInt b); // nonnegative

    // True iff the magnitude fits in uint64 (fast-path representation).
    bool fits_u64() const { return big_.empty(); }
    // Requires fits_u64() and value representable in int64.
    long long to_int64() const;

    std::string to_string() const;
    std::size_t hash() const;

private:
    int sign_ = 0;           // -1, 0, +1
    std::uint64_t small_ = 0; // magnitude when big_ empty
    std::vector<std::uint32_t> big_; // magnitude limbs otherwise

    void set_mag_u64(std::uint64_t v);
    void normalize();
    static int cmp_mag(const BigInt& a, const BigInt& b);
    std::vector<std::uint32_t> limbs() const; // magnitude as limb vector
    static BigInt from_limbs(int sign, std::vector<std::uint32_t> limbs);
};

} // namespace seltop
