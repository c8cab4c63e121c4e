#include "seltop/bigint.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace seltop {

namespace {
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

void trim(std::vector<u32>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

int cmp_limbs(const std::vector<u32>& a, const std::vector<u32>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<u32> add_limbs(const std::vector<u32>& a, const std::vector<u32>& b) {
    std::vector<u32> r(std::max(a.size(), b.size()) + 1, 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r[i] = static_cast<u32>(s);
        carry = s >> 32;
    }
    trim(r);
    return r;
}

// requires a >= b
std::vector<u32> sub_limbs(const std::vector<u32>& a, const std::vector<u32>& b) {
    std::vector<u32> r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (s < 0) { s += (std::int64_t(1) << 32); borrow = 1; } else borrow = 0;
        r[i] = static_cast<u32>(s);
    }
    trim(r);
    return r;
}

std::vector<u32> mul_limbs(const std::vector<u32>& a, const std::vector<u32>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<u32> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            u128 cur = static_cast<u128>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<u32>(cur);
            carry = static_cast<u64>(cur >> 32);
        }
        std::size_t k = i + b.size();
        while (carry) {
            u128 cur = static_cast<u128>(r[k]) + carry;
            r[k] = static_cast<u32>(cur);
            carry = static_cast<u64>(cur >> 32);
            ++k;
        }
    }
    trim(r);
    return r;
}

std::vector<u32> shl_limbs(const std::vector<u32>& a, unsigned bits) {
    if (a.empty()) return {};
    unsigned words = bits / 32, rem = bits % 32;
    std::vector<u32> r(a.size() + words + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 v = static_cast<u64>(a[i]) << rem;
        r[i + words] |= static_cast<u32>(v);
        r[i + words + 1] |= static_cast<u32>(v >> 32);
    }
    trim(r);
    return r;
}

std::vector<u32> shr_limbs(const std::vector<u32>& a, unsigned bits) {
    unsigned words = bits / 32, rem = bits % 32;
    if (words >= a.size()) return {};
    std::vector<u32> r(a.size() - words, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 lo = a[i + words] >> rem;
        u64 hi = (rem && i + words + 1 < a.size()) ? (static_cast<u64>(a[i + words + 1]) << (32 - rem)) : 0;
        r[i] = static_cast<u32>(lo | hi);
    }
    trim(r);
    return r;
}

// Knuth algorithm D. q = a / b, r = a % b, magnitudes only; b nonzero.
void divmod_limbs(std::vector<u32> a, std::vector<u32> b, std::vector<u32>& q, std::vector<u32>& r) {
    if (cmp_limbs(a, b) < 0) { q.clear(); r = std::move(a); return; }
    if (b.size() == 1) {
        u64 d = b[0], rem = 0;
        q.assign(a.size(), 0);
        for (std::size_t i = a.size(); i-- > 0;) {
            u64 cur = (rem << 32) | a[i];
            q[i] = static_cast<u32>(cur / d);
            rem = cur % d;
        }
        trim(q);
        r.clear();
        if (rem) r.push_back(static_cast<u32>(rem));
        return;
    }
    // Normalize so the top limb of b has its high bit set.
    unsigned shift = 0;
    for (u32 top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
    std::vector<u32> u = shl_limbs(a, shift);
    std::vector<u32> v = shl_limbs(b, shift);
    const std::size_t n = v.size(), m = u.size() - n;
    u.push_back(0);
    q.assign(m + 1, 0);
    const u64 vtop = v[n - 1], vnext = v[n - 2];
    for (std::size_t j = m + 1; j-- > 0;) {
        u128 num = (static_cast<u128>(u[j + n]) << 32) | u[j + n - 1];
        u64 qhat = static_cast<u64>(num / vtop);
        u64 rhat = static_cast<u64>(num % vtop);
        while (qhat > 0xFFFFFFFFull ||
               static_cast<u128>(qhat) * vnext > ((static_cast<u128>(rhat) << 32) | u[j + n - 2])) {
            --qhat;
            rhat += vtop;
            if (rhat > 0xFFFFFFFFull) break;
        }
        // u[j..j+n] -= qhat * v
        std::int64_t borrow = 0;
        u64 carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u128 p = static_cast<u128>(qhat) * v[i] + carry;
            carry = static_cast<u64>(p >> 32);
            std::int64_t t = static_cast<std::int64_t>(u[j + i]) - static_cast<std::int64_t>(static_cast<u32>(p)) - borrow;
            if (t < 0) { t += (std::int64_t(1) << 32); borrow = 1; } else borrow = 0;
            u[j + i] = static_cast<u32>(t);
        }
        std::int64_t t = static_cast<std::int64_t>(u[j + n]) - static_cast<std::int64_t>(carry) - borrow;
        if (t < 0) { // qhat was one too large
            t += (std::int64_t(1) << 32);
            --qhat;
            u64 add_carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u64 s = static_cast<u64>(u[j + i]) + v[i] + add_carry;
                u[j + i] = static_cast<u32>(s);
                add_carry = s >> 32;
            }
            t += static_cast<std::int64_t>(add_carry);
        }
        u[j + n] = static_cast<u32>(t);
        q[j] = static_cast<u32>(qhat);
    }
    trim(q);
    u.resize(n);
    trim(u);
    r = shr_limbs(u, shift);
}
} // namespace

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    small_ = v < 0 ? (~static_cast<u64>(v) + 1) : static_cast<u64>(v);
}

BigInt::BigInt(unsigned long long v) {
    if (v == 0) return;
    sign_ = 1;
    small_ = v;
}

void BigInt::set_mag_u64(u64 v) {
    big_.clear();
    small_ = v;
    if (v == 0) sign_ = 0;
}

void BigInt::normalize() {
    trim(big_);
    if (big_.size() <= 2) {
        u64 v = 0;
        if (big_.size() >= 1) v = big_[0];
        if (big_.size() == 2) v |= static_cast<u64>(big_[1]) << 32;
        set_mag_u64(v);
    } else {
        small_ = 0;
    }
    if (big_.empty() && small_ == 0) sign_ = 0;
}

std::vector<u32> BigInt::limbs() const {
    if (!big_.empty()) return big_;
    std::vector<u32> v;
    if (small_) {
        v.push_back(static_cast<u32>(small_));
        if (small_ >> 32) v.push_back(static_cast<u32>(small_ >> 32));
    }
    return v;
}

BigInt BigInt::from_limbs(int sign, std::vector<u32> limbs) {
    BigInt r;
    r.big_ = std::move(limbs);
    r.sign_ = sign;
    r.normalize();
    return r;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.big_.empty() && b.big_.empty())
        return a.small_ < b.small_ ? -1 : a.small_ > b.small_ ? 1 : 0;
    if (a.big_.empty()) return -1;
    if (b.big_.empty()) return 1;
    return cmp_limbs(a.big_, b.big_);
}

int cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int m = BigInt::cmp_mag(a, b);
    return a.sign_ >= 0 ? m : -m;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.sign_ == b.sign_) {
        if (a.big_.empty() && b.big_.empty()) {
            u64 s;
            if (!__builtin_add_overflow(a.small_, b.small_, &s)) {
                BigInt r;
                r.sign_ = a.sign_;
                r.set_mag_u64(s);
                return r;
            }
        }
        return BigInt::from_limbs(a.sign_, add_limbs(a.limbs(), b.limbs()));
    }
    int m = BigInt::cmp_mag(a, b);
    if (m == 0) return BigInt();
    if (a.big_.empty() && b.big_.empty()) {
        BigInt r;
        r.sign_ = m > 0 ? a.sign_ : b.sign_;
        r.set_mag_u64(m > 0 ? a.small_ - b.small_ : b.small_ - a.small_);
        return r;
    }
    if (m > 0) return BigInt::from_limbs(a.sign_, sub_limbs(a.limbs(), b.limbs()));
    return BigInt::from_limbs(b.sign_, sub_limbs(b.limbs(), a.limbs()));
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    int s = a.sign_ * b.sign_;
    if (a.big_.empty() && b.big_.empty()) {
        u128 p = static_cast<u128>(a.small_) * b.small_;
        if ((p >> 64) == 0) {
            BigInt r;
            r.sign_ = s;
            r.set_mag_u64(static_cast<u64>(p));
            return r;
        }
    }
    return BigInt::from_limbs(s, mul_limbs(a.limbs(), b.limbs()));
}

void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    if (a.sign_ == 0) { q = BigInt(); r = BigInt(); return; }
    if (a.big_.empty() && b.big_.empty()) {
        q = BigInt();
        r = BigInt();
        q.sign_ = a.sign_ * b.sign_;
        q.set_mag_u64(a.small_ / b.small_);
        r.sign_ = a.sign_;
        r.set_mag_u64(a.small_ % b.small_);
        return;
    }
    std::vector<u32> ql, rl;
    divmod_limbs(a.limbs(), b.limbs(), ql, rl);
    q = BigInt::from_limbs(a.sign_ * b.sign_, std::move(ql));
    r = BigInt::from_limbs(a.sign_, std::move(rl));
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
}

BigInt abs(const BigInt& a) {
    BigInt r = a;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt gcd(BigInt a, BigInt b) {
    a = abs(a);
    b = abs(b);
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

long long BigInt::to_int64() const {
    if (!fits_u64() || small_ > 0x7FFFFFFFFFFFFFFFull)
        throw std::overflow_error("BigInt: does not fit int64");
    long long v = static_cast<long long>(small_);
    return sign_ < 0 ? -v : v;
}

BigInt BigInt::from_string(const std::string& s) {
    std::size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        if (s[i] == '-') sign = -1;
        ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("BigInt: empty numeral");
    BigInt r;
    const BigInt base(1000000000ll);
    while (i < s.size()) {
        std::size_t chunk = std::min<std::size_t>(9, s.size() - i);
        u64 v = 0;
        for (std::size_t k = 0; k < chunk; ++k, ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
            v = v * 10 + static_cast<u64>(s[i] - '0');
        }
        u64 scale = 1;
        for (std::size_t k = 0; k < chunk; ++k) scale *= 10;
        r = r * BigInt(static_cast<long long>(scale)) + BigInt(static_cast<long long>(v));
    }
    if (sign < 0) r = -r;
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    if (fits_u64()) {
        std::string s = std::to_string(small_);
        return sign_ < 0 ? "-" + s : s;
    }
    std::vector<u32> cur = big_;
    std::string out;
    const std::vector<u32> ten9 = {1000000000u};
    while (!cur.empty()) {
        std::vector<u32> q, r;
        divmod_limbs(cur, ten9, q, r);
        u64 digit = r.empty() ? 0 : r[0];
        std::string part = std::to_string(digit);
        cur = std::move(q);
        if (cur.empty()) {
            out = part + out;
        } else {
            out = std::string(9 - part.size(), '0') + part + out;
        }
    }
    return sign_ < 0 ? "-" + out : out;
}

std::size_t BigInt::hash() const {
    std::size_t h = static_cast<std::size_t>(sign_) * 0x9E3779B97F4A7C15ull;
    if (fits_u64()) {
        h ^= small_ + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    } else {
        for (u32 l : big_) h ^= l + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return h;
}

} // namespace seltop
