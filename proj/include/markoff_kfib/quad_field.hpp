#pragma once

// Two evaluation regimes for quantities built from alpha_k = (k + sqrt(k^2+4))/2:
//
//  * QuadInt: exact elements p + q*alpha_k of Z[alpha_k], with an exact total
//    order decided through the minimal polynomial x^2 - kx - 1.
//  * RealBound / BoundExpr: certified rational enclosures of real expressions
//    in alpha_k, D_k = sqrt(k^2+4) and rationals, refined on demand.
//
// Nothing here touches floating point.

#include "markoff_kfib/bigint.hpp"
#include "markoff_kfib/kfib.hpp"

#include <compare>
#include <memory>
#include <variant>

namespace markoff_kfib {

struct QuadInt {
    unsigned k = 1;
    BigInt p = 0;
    BigInt q = 0;

    friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

inline QuadInt quad_from_int(KParam k, BigInt p) { return {k.value(), std::move(p), 0}; }

inline void require_same_field(const QuadInt& x, const QuadInt& y) {
    require(x.k == y.k, "QuadInt operands live in different fields");
}

inline QuadInt operator+(const QuadInt& x, const QuadInt& y) {
    require_same_field(x, y);
    return {x.k, x.p + y.p, x.q + y.q};
}

inline QuadInt operator-(const QuadInt& x, const QuadInt& y) {
    require_same_field(x, y);
    return {x.k, x.p - y.p, x.q - y.q};
}

// alpha^2 = k alpha + 1
inline QuadInt operator*(const QuadInt& x, const QuadInt& y) {
    require_same_field(x, y);
    const BigInt qq = x.q * y.q;
    return {x.k, x.p * y.p + qq, x.p * y.q + x.q * y.p + qq * x.k};
}

/// alpha_k^n = F_k(n-1) + F_k(n) alpha_k for n >= 1; alpha_k^0 = 1.
inline QuadInt alpha_pow(KParam k, Index n) {
    if (n == 0) return {k.value(), 1, 0};
    return {k.value(), kfib(k, n - 1), kfib(k, n)};
}

/// Sign of p + q*alpha_k.
inline int quad_sign(const QuadInt& x) {
    if (x.q.sign() == 0) return x.p.sign();
    // x = q (alpha - r) with r = -p/q. The polynomial f(t) = t^2 - k t - 1 has
    // roots conj < 0 < alpha, and f(r) != 0 because alpha is irrational.
    // alpha > r  iff  f(r) < 0 (r between the roots) or r < k/2 (r below conj).
    // Scaled by q^2 > 0: q^2 f(r) = p^2 + k p q - q^2.
    const BigInt scaled = x.p * x.p + x.p * x.q * x.k - x.q * x.q;
    bool alpha_above_r = false;
    if (scaled.sign() < 0) {
        alpha_above_r = true;
    } else {
        // r < k/2  <=>  -2p/q < k  <=>  -2p < kq (q > 0) or -2p > kq (q < 0)
        const BigInt lhs = -2 * x.p;
        const BigInt rhs = x.q * x.k;
        alpha_above_r = x.q.sign() > 0 ? lhs < rhs : lhs > rhs;
    }
    return alpha_above_r ? x.q.sign() : -x.q.sign();
}

inline std::strong_ordering quad_cmp(const QuadInt& x, const QuadInt& y) {
    require_same_field(x, y);
    const int s = quad_sign(x - y);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline std::strong_ordering operator<=>(const QuadInt& x, const QuadInt& y) { return quad_cmp(x, y); }

// ---------------------------------------------------------------------------
// Certified enclosures

/// Closed interval [lo, hi] known to contain some real quantity.
struct RealBound {
    Rational lo;
    Rational hi;

    [[nodiscard]] Rational width() const { return hi - lo; }
    [[nodiscard]] bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    [[nodiscard]] bool contains(const RealBound& inner) const { return lo <= inner.lo && inner.hi <= hi; }
    /// Every point of *this is strictly below every point of other.
    [[nodiscard]] bool certainly_below(const RealBound& other) const { return hi < other.lo; }
};

namespace detail {

inline Rational round_down(const Rational& v, unsigned grid_bits) {
    const BigInt scale = BigInt(1) << grid_bits;
    return Rational(floor_div(boost::multiprecision::numerator(v) * scale,
                              boost::multiprecision::denominator(v)),
                    scale);
}

inline Rational round_up(const Rational& v, unsigned grid_bits) {
    const BigInt scale = BigInt(1) << grid_bits;
    return Rational(-floor_div(-boost::multiprecision::numerator(v) * scale,
                               boost::multiprecision::denominator(v)),
                    scale);
}

inline RealBound outward(RealBound b, unsigned grid_bits) {
    return {round_down(b.lo, grid_bits), round_up(b.hi, grid_bits)};
}

inline RealBound add(const RealBound& x, const RealBound& y) { return {x.lo + y.lo, x.hi + y.hi}; }
inline RealBound sub(const RealBound& x, const RealBound& y) { return {x.lo - y.hi, x.hi - y.lo}; }

inline RealBound mul(const RealBound& x, const RealBound& y) {
    const Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    RealBound r{c[0], c[0]};
    for (const auto& v : c) {
        if (v < r.lo) r.lo = v;
        if (v > r.hi) r.hi = v;
    }
    return r;
}

inline RealBound reciprocal(const RealBound& x) {
    if (x.lo.sign() <= 0 && x.hi.sign() >= 0)
        throw std::domain_error("interval division by an enclosure containing zero");
    return {1 / x.hi, 1 / x.lo};
}

/// [floor(sqrt(n) 2^p), that + 1] / 2^p, exact when n 4^p is a square.
inline RealBound sqrt_enclosure(const BigInt& n, unsigned bits) {
    const BigInt scaled = n << (2 * bits);
    BigInt root;
    const bool exact = is_perfect_square(scaled, &root);
    const BigInt denom = BigInt(1) << bits;
    return {Rational(root, denom), Rational(exact ? root : BigInt(root + 1), denom)};
}

}  // namespace detail

/// A small expression tree over rationals, square roots of integers, the four
/// field operations and integer powers. Evaluated at a working precision into
/// a RealBound; higher precision always yields a nested (contained) bound.
class BoundExpr {
public:
    static BoundExpr constant(Rational v) { return BoundExpr(Node{Constant{std::move(v)}}); }
    static BoundExpr integer(long long v) { return constant(Rational(v)); }
    static BoundExpr sqrt_of(BigInt n) {
        require(n.sign() >= 0, "sqrt of a negative integer");
        return BoundExpr(Node{Sqrt{std::move(n)}});
    }
    /// D_k = sqrt(k^2 + 4)
    static BoundExpr disc_root(KParam k) {
        const unsigned long long kk = k.value();
        return sqrt_of(BigInt(kk * kk + 4));
    }
    /// alpha_k = (k + D_k) / 2
    static BoundExpr alpha(KParam k) {
        return (integer(k.value()) + disc_root(k)) / integer(2);
    }

    friend BoundExpr operator+(BoundExpr a, BoundExpr b) { return binary(Op::add, std::move(a), std::move(b)); }
    friend BoundExpr operator-(BoundExpr a, BoundExpr b) { return binary(Op::sub, std::move(a), std::move(b)); }
    friend BoundExpr operator*(BoundExpr a, BoundExpr b) { return binary(Op::mul, std::move(a), std::move(b)); }
    friend BoundExpr operator/(BoundExpr a, BoundExpr b) { return binary(Op::div, std::move(a), std::move(b)); }
    friend BoundExpr pow(BoundExpr base, int exponent) {
        return BoundExpr(Node{Power{std::move(base.node_), exponent}});
    }

    /// Enclosure with square roots resolved to 2^-bits and every intermediate
    /// rounded outward to a 2^-(2*bits) grid.
    [[nodiscard]] RealBound evaluate(unsigned bits) const { return eval(*node_, bits); }

private:
    enum class Op { add, sub, mul, div };
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;
    struct Constant { Rational value; };
    struct Sqrt { BigInt radicand; };
    struct Binary { Op op; NodePtr lhs, rhs; };
    struct Power { NodePtr base; int exponent; };
    struct Node { std::variant<Constant, Sqrt, Binary, Power> v; };

    explicit BoundExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

    static BoundExpr binary(Op op, BoundExpr a, BoundExpr b) {
        return BoundExpr(Node{Binary{op, std::move(a.node_), std::move(b.node_)}});
    }

    static RealBound eval(const Node& n, unsigned bits) {
        const unsigned grid = 2 * bits;
        return std::visit(
            [&](const auto& item) -> RealBound {
                using T = std::decay_t<decltype(item)>;
                if constexpr (std::is_same_v<T, Constant>) {
                    return {item.value, item.value};
                } else if constexpr (std::is_same_v<T, Sqrt>) {
                    return detail::sqrt_enclosure(item.radicand, bits);
                } else if constexpr (std::is_same_v<T, Binary>) {
                    const RealBound a = eval(*item.lhs, bits);
                    const RealBound b = eval(*item.rhs, bits);
                    switch (item.op) {
                        case Op::add: return detail::add(a, b);
                        case Op::sub: return detail::sub(a, b);
                        case Op::mul: return detail::outward(detail::mul(a, b), grid);
                        case Op::div: return detail::outward(detail::mul(a, detail::reciprocal(b)), grid);
                    }
                    return a;
                } else {
                    RealBound base = eval(*item.base, bits);
                    const bool invert = item.exponent < 0;
                    unsigned e = invert ? static_cast<unsigned>(-item.exponent)
                                        : static_cast<unsigned>(item.exponent);
                    if (invert) base = detail::outward(detail::reciprocal(base), grid);
                    RealBound result{1, 1};
                    while (e != 0) {
                        if ((e & 1U) != 0) result = detail::outward(detail::mul(result, base), grid);
                        e >>= 1;
                        if (e != 0) base = detail::outward(detail::mul(base, base), grid);
                    }
                    return result;
                }
            },
            n.v);
    }

    NodePtr node_;
};

inline constexpr unsigned kInitialBits = 64;
inline constexpr unsigned kMaxBits = 1U << 16;

/// Enclosure of width <= tol, tightening the working precision as needed.
inline RealBound enclose(const BoundExpr& expr, const Rational& tol) {
    require(tol.sign() > 0, "enclose: tolerance must be positive");
    for (unsigned bits = kInitialBits; bits <= kMaxBits; bits *= 2) {
        RealBound b = expr.evaluate(bits);
        if (b.width() <= tol) return b;
    }
    throw std::runtime_error("enclose: precision limit reached");
}

/// Default enclosure width, 10^-12.
inline Rational default_tolerance() { return Rational(1, BigInt(1000000000000LL)); }

/// Decides a < b for two quantities known to be distinct by refining both
/// enclosures until they separate.
inline bool certified_less(const BoundExpr& a, const BoundExpr& b) {
    for (unsigned bits = kInitialBits; bits <= kMaxBits; bits *= 2) {
        const RealBound ea = a.evaluate(bits);
        const RealBound eb = b.evaluate(bits);
        if (ea.certainly_below(eb)) return true;
        if (eb.certainly_below(ea)) return false;
    }
    throw std::runtime_error("certified_less: enclosures never separated");
}

}  // namespace markoff_kfib
