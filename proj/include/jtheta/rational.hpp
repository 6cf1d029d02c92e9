// Exact rational arithmetic on 64-bit numerator/denominator.
// Every narrowing from the 128-bit intermediate is overflow-checked;
// out-of-range results throw instead of wrapping.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jtheta {

using int128 = __int128;

struct overflow_error : std::runtime_error {
    explicit overflow_error(const char* what) : std::runtime_error(what) {}
};

inline long long checked_narrow(int128 v) {
    if (v > int128(INT64_MAX) || v < int128(INT64_MIN)) throw overflow_error("rational overflow");
    return static_cast<long long>(v);
}

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        int128 n = int128(a.num_) * b.den_ + int128(b.num_) * a.den_;
        int128 d = int128(a.den_) * b.den_;
        return from_int128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        int128 n = int128(a.num_) * b.den_ - int128(b.num_) * a.den_;
        int128 d = int128(a.den_) * b.den_;
        return from_int128(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_int128(int128(a.num_) * b.num_, int128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("division by zero rational");
        return from_int128(int128(a.num_) * b.den_, int128(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return int128(a.num_) * b.den_ < int128(b.num_) * a.den_;
    }

    Rational inverse() const {
        if (num_ == 0) throw std::domain_error("inverse of zero rational");
        return Rational(den_, num_);
    }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static Rational from_int128(int128 n, int128 d) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = checked_narrow(n);
        r.den_ = checked_narrow(d);
        return r;
    }
    static int128 gcd128(int128 a, int128 b) {
        while (b != 0) { int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

}  // namespace jtheta
