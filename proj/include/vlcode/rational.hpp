#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace vlcode {

// Small exact rational for desk-scale oracles.  Intermediate products run
// through 128 bits and overflow of the reduced form throws rather than
// wrapping.
class rat {
public:
    rat() = default;
    rat(long long num, long long den = 1) { assign(num, den); }

    long long num() const noexcept { return num_; }
    long long den() const noexcept { return den_; }

    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend rat operator+(const rat& a, const rat& b) {
        return from_i128(static_cast<__int128>(a.num_) * b.den_ +
                             static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend rat operator-(const rat& a, const rat& b) {
        return from_i128(static_cast<__int128>(a.num_) * b.den_ -
                             static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend rat operator*(const rat& a, const rat& b) {
        return from_i128(static_cast<__int128>(a.num_) * b.num_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend rat operator/(const rat& a, const rat& b) {
        if (b.num_ == 0) throw std::domain_error("rat: division by zero");
        return from_i128(static_cast<__int128>(a.num_) * b.den_,
                         static_cast<__int128>(a.den_) * b.num_);
    }
    rat& operator+=(const rat& o) { return *this = *this + o; }
    rat& operator-=(const rat& o) { return *this = *this - o; }
    rat& operator*=(const rat& o) { return *this = *this * o; }
    rat& operator/=(const rat& o) { return *this = *this / o; }

    friend bool operator==(const rat&, const rat&) = default;
    friend auto operator<=>(const rat& a, const rat& b) {
        return static_cast<__int128>(a.num_) * b.den_ <=>
               static_cast<__int128>(b.num_) * a.den_;
    }

private:
    void assign(long long num, long long den) {
        if (den == 0) throw std::domain_error("rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        num_ = num;
        den_ = den;
    }

    static rat from_i128(__int128 num, __int128 den) {
        if (den == 0) throw std::domain_error("rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        __int128 a = num < 0 ? -num : num, b = den;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { num /= a; den /= a; }
        constexpr __int128 lim = std::numeric_limits<long long>::max();
        if (num > lim || num < -lim || den > lim)
            throw std::overflow_error("rat: value out of 64-bit range");
        rat r;
        r.num_ = static_cast<long long>(num);
        r.den_ = static_cast<long long>(den);
        return r;
    }

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace vlcode
