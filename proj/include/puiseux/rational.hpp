#pragma once

/// Exact nonnegative rational arithmetic on arbitrary-precision integers.
///
/// Every value is kept in canonical reduced form: gcd(num, den) = 1,
/// den >= 1, and 0 is uniquely represented as 0/1. Arithmetic never
/// leaves the nonnegative rationals; subtraction below zero throws.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "puiseux/errors.hpp"

namespace puiseux {

using Integer = boost::multiprecision::cpp_int;

class PosRational {
public:
    PosRational() : num_(0), den_(1) {}

    PosRational(Integer n) : num_(std::move(n)), den_(1) {
        if (num_ < 0)
            throw precondition_error("PosRational: negative value");
    }

    PosRational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0)
            throw precondition_error("PosRational: zero denominator");
        if (den_ < 0 || num_ < 0)
            throw precondition_error("PosRational: negative value");
        reduce();
    }

    const Integer& num() const noexcept { return num_; }
    const Integer& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }

    PosRational operator+(const PosRational& rhs) const {
        return PosRational(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
    }

    // Defined only when the result stays nonnegative.
    PosRational operator-(const PosRational& rhs) const {
        Integer n = num_ * rhs.den_ - rhs.num_ * den_;
        if (n < 0)
            throw precondition_error("PosRational: subtraction below zero");
        return PosRational(std::move(n), den_ * rhs.den_);
    }

    PosRational operator*(const PosRational& rhs) const {
        return PosRational(num_ * rhs.num_, den_ * rhs.den_);
    }

    PosRational operator/(const PosRational& rhs) const {
        if (rhs.is_zero())
            throw precondition_error("PosRational: division by zero");
        return PosRational(num_ * rhs.den_, den_ * rhs.num_);
    }

    PosRational& operator+=(const PosRational& rhs) { return *this = *this + rhs; }

    bool operator==(const PosRational& rhs) const {
        return num_ == rhs.num_ && den_ == rhs.den_;
    }
    bool operator!=(const PosRational& rhs) const { return !(*this == rhs); }
    bool operator<(const PosRational& rhs) const {
        return num_ * rhs.den_ < rhs.num_ * den_;
    }
    bool operator>(const PosRational& rhs) const { return rhs < *this; }
    bool operator<=(const PosRational& rhs) const { return !(rhs < *this); }
    bool operator>=(const PosRational& rhs) const { return !(*this < rhs); }

    PosRational pow(unsigned exponent) const {
        using boost::multiprecision::pow;
        if (exponent == 0) return PosRational(1);
        return PosRational(pow(num_, exponent), pow(den_, exponent));
    }

    /// Canonical wire format is always "num/den", including integers ("2/1").
    std::string to_string() const {
        return num_.str() + "/" + den_.str();
    }

    /// Parses "num/den" or a bare nonnegative integer "num".
    /// Rejects signs, whitespace, missing parts and zero denominators.
    static PosRational parse(std::string_view text) {
        if (text.empty())
            throw parse_error("empty rational", 0);
        std::size_t slash = text.find('/');
        std::string_view num_part = text.substr(0, slash);
        Integer n = parse_integer(num_part, 0);
        if (slash == std::string_view::npos)
            return PosRational(std::move(n));
        std::string_view den_part = text.substr(slash + 1);
        if (den_part.empty())
            throw parse_error("missing denominator", slash + 1);
        Integer d = parse_integer(den_part, slash + 1);
        if (d == 0)
            throw parse_error("zero denominator", slash + 1);
        return PosRational(std::move(n), std::move(d));
    }

private:
    static Integer parse_integer(std::string_view digits, std::size_t base_offset) {
        if (digits.empty())
            throw parse_error("missing numerator", base_offset);
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] < '0' || digits[i] > '9')
                throw parse_error(std::string("invalid character '") + digits[i] +
                                      "' in rational",
                                  base_offset + i);
        }
        Integer value = 0;
        for (char c : digits)
            value = value * 10 + (c - '0');
        return value;
    }

    void reduce() {
        using boost::multiprecision::gcd;
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        Integer g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Integer num_;
    Integer den_;
};

inline PosRational reduce(Integer num, Integer den) {
    return PosRational(std::move(num), std::move(den));
}

inline PosRational add(const PosRational& a, const PosRational& b) { return a + b; }

inline PosRational scalar_mul(const Integer& c, const PosRational& a) {
    if (c < 0)
        throw precondition_error("scalar_mul: negative scalar");
    return PosRational(c * a.num(), a.den());
}

/// Three-way comparison: -1, 0 or 1.
inline int compare(const PosRational& a, const PosRational& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

inline Integer den_lcm(const std::vector<PosRational>& values) {
    using boost::multiprecision::gcd;
    Integer l = 1;
    for (const auto& v : values)
        l = l / gcd(l, v.den()) * v.den();
    return l;
}

/// Strict weak order on (den, num) pairs. Not the value order; used for
/// cheap deduplication sets where only equality matters.
struct NumDenLess {
    bool operator()(const PosRational& a, const PosRational& b) const {
        if (a.den() != b.den()) return a.den() < b.den();
        return a.num() < b.num();
    }
};

} // namespace puiseux
