#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ffr {

// Exact rational arithmetic on int64 numerator/denominator.  All exponent
// bookkeeping goes through this type; floating point enters only when a
// fraction is finally handed to pow().  Overflow throws instead of wrapping.
class Fraction {
public:
    constexpr Fraction() : num_(0), den_(1) {}
    Fraction(std::int64_t n) : num_(n), den_(1) {}
    Fraction(std::int64_t n, std::int64_t d) : num_(n), den_(d) { reduce(); }

    static Fraction parse(const std::string& s);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool is_zero() const { return num_ == 0; }

    Fraction operator-() const { return Fraction(-num_, den_); }

    friend Fraction operator+(const Fraction& a, const Fraction& b) {
        return Fraction(checked(i128(a.num_) * b.den_ + i128(b.num_) * a.den_),
                        checked(i128(a.den_) * b.den_));
    }
    friend Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }
    friend Fraction operator*(const Fraction& a, const Fraction& b) {
        return Fraction(checked(i128(a.num_) * b.num_), checked(i128(a.den_) * b.den_));
    }
    friend Fraction operator/(const Fraction& a, const Fraction& b) {
        if (b.num_ == 0) throw std::domain_error("Fraction: division by zero");
        return Fraction(checked(i128(a.num_) * b.den_), checked(i128(a.den_) * b.num_));
    }

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }
    friend bool operator<(const Fraction& a, const Fraction& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Fraction& a, const Fraction& b) { return a < b || a == b; }
    friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
    friend bool operator>=(const Fraction& a, const Fraction& b) { return b <= a; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;

    static std::int64_t checked(i128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Fraction: overflow");
        return static_cast<std::int64_t>(v);
    }

    void reduce() {
        if (den_ == 0) throw std::domain_error("Fraction: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Fraction Fraction::parse(const std::string& s) {
    auto slash = s.find('/');
    if (s.find('.') != std::string::npos)
        throw std::invalid_argument("Fraction: decimals rejected, write a/b: " + s);
    try {
        if (slash == std::string::npos) return Fraction(std::stoll(s));
        return Fraction(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Fraction: cannot parse: " + s);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("Fraction: out of range: " + s);
    }
}

}  // namespace ffr
