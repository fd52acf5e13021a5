#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tritree {

enum class Colour : std::uint8_t { Green = 0, Red = 1 };

inline Colour other(Colour c) { return c == Colour::Green ? Colour::Red : Colour::Green; }
inline const char* name(Colour c) { return c == Colour::Green ? "green" : "red"; }
inline char letter(Colour c) { return c == Colour::Green ? 'G' : 'R'; }

/// Error with a stable machine-readable code ("IntraClassEdge", ...) plus detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Exact rational arithmetic for all threshold comparisons (eta, mu, eps, d).
/// Keeps "size >= (1-eta')*n" decisions free of floating-point rounding.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw Error("ZeroDenominator", "rational with denominator 0");
        normalize();
    }

    /// Parse a decimal literal such as "0.05" or "1" exactly.
    static Rational from_decimal(const std::string& s);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator+(const Rational& o) const { return {cross(num_, o.den_) + cross(o.num_, den_), mul(den_, o.den_)}; }
    Rational operator-(const Rational& o) const { return {cross(num_, o.den_) - cross(o.num_, den_), mul(den_, o.den_)}; }
    Rational operator*(const Rational& o) const { return {mul(num_, o.num_), mul(den_, o.den_)}; }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw Error("DivisionByZero", "rational division by zero");
        return {mul(num_, o.den_), mul(den_, o.num_)};
    }
    Rational operator-() const { return {-num_, den_}; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return lt(*this, o); }
    bool operator>(const Rational& o) const { return lt(o, *this); }
    bool operator<=(const Rational& o) const { return !lt(o, *this); }
    bool operator>=(const Rational& o) const { return !lt(*this, o); }

    /// Smallest integer m with m >= *this.
    std::int64_t ceil() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

private:
    static bool lt(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    static std::int64_t mul(std::int64_t a, std::int64_t b) {
        __int128 p = static_cast<__int128>(a) * b;
        if (p > INT64_MAX || p < INT64_MIN) throw Error("RationalOverflow", "product too large");
        return static_cast<std::int64_t>(p);
    }
    static std::int64_t cross(std::int64_t a, std::int64_t b) { return mul(a, b); }
    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational Rational::from_decimal(const std::string& s) {
    if (s.empty()) throw Error("BadRational", "empty string");
    std::size_t dot = s.find('.');
    if (dot == std::string::npos) return {std::stoll(s), 1};
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den = mul(den, 10);
    std::int64_t num = mul(std::stoll(whole), den);
    std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
    num += (s[0] == '-' ? -f : f);
    return {num, den};
}

}  // namespace tritree
