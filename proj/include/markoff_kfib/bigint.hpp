#pragma once

// Exact integer and rational types shared by every module, plus the few
// integer helpers the rest of the library needs (integer square root,
// floor division, decimal parsing).

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace markoff_kfib {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Index into a k-Fibonacci sequence.
using Index = unsigned;

/// Raised when an operation is called outside its documented domain.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const char* message) {
    if (!condition) throw PreconditionError(message);
}

inline int sign(const BigInt& v) { return v.sign(); }

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

/// Parses an optionally signed decimal integer. Throws PreconditionError on
/// anything else (no whitespace, no leading '+').
inline BigInt parse_bigint(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (!text.empty() && text[0] == '-') {
        negative = true;
        pos = 1;
    }
    require(pos < text.size(), "expected a decimal integer");
    BigInt value = 0;
    for (; pos < text.size(); ++pos) {
        const char ch = text[pos];
        require(std::isdigit(static_cast<unsigned char>(ch)) != 0, "expected a decimal integer");
        value = value * 10 + (ch - '0');
    }
    return negative ? BigInt(-value) : value;
}

/// floor(n / d) for d > 0.
inline BigInt floor_div(const BigInt& n, const BigInt& d) {
    BigInt q = n / d;  // truncates toward zero
    if (n.sign() < 0 && q * d != n) --q;
    return q;
}

/// floor(sqrt(n)) by integer Newton iteration; n >= 0.
inline BigInt isqrt(const BigInt& n) {
    require(n.sign() >= 0, "isqrt of a negative number");
    if (n < 2) return n;
    // Start above the root: 2^ceil(bits/2) > sqrt(n).
    const auto bits = boost::multiprecision::msb(n) + 1;
    BigInt x = BigInt(1) << ((bits + 1) / 2);
    while (true) {
        BigInt y = (x + n / x) >> 1;
        if (y >= x) return x;
        x = std::move(y);
    }
}

inline bool is_perfect_square(const BigInt& n, BigInt* root = nullptr) {
    if (n.sign() < 0) return false;
    BigInt s = isqrt(n);
    const bool square = s * s == n;
    if (root != nullptr) *root = std::move(s);
    return square;
}

inline BigInt pow_int(BigInt base, unsigned exponent) {
    BigInt result = 1;
    while (exponent != 0) {
        if ((exponent & 1U) != 0) result *= base;
        exponent >>= 1;
        if (exponent != 0) base *= base;
    }
    return result;
}

}  // namespace markoff_kfib
