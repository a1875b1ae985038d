#pragma once

// Lower-bound machinery for minimal k-Fibonacci Markoff triples: the L_k
// constants, the bound m_k(a,b,c) > L_k alpha_k^{2c} / D_k^2, the maximal m
// for a given third index, and the exact window that pins c for a given m.

#include "markoff_kfib/bigint.hpp"
#include "markoff_kfib/kfib.hpp"
#include "markoff_kfib/quad_field.hpp"

#include <algorithm>
#include <vector>

namespace markoff_kfib {

/// Expression for L_k. For k = 3 the second term uses alpha_3 and D_3.
inline BoundExpr lk_expr(KParam k) {
    require(k.value() >= 2, "L_k is defined for k >= 2");
    using E = BoundExpr;
    const E one = E::integer(1);
    const E three = E::integer(3);
    const E d = E::disc_root(k);
    const E a = E::alpha(k);
    if (k.value() == 2) {
        return (one - three / d * pow(a, -1)) +
               E::integer(2) * (one - three / d * a) * pow(a, -4) -
               (E::integer(6) + three / d * a + E::integer(9) / d) * pow(a, -6);
    }
    if (k.value() == 3) {
        return (one - three / d) * (one + E::integer(2) * pow(a, -2)) -
               (E::integer(6) + E::integer(12) / d) * pow(a, -4);
    }
    return one - three / d;
}

/// The k = 3 constant exactly as typeset: alpha_2^{-4} in the last term.
/// Kept for reporting; it is negative and does not support the bound.
inline BoundExpr l3_as_printed_expr() {
    using E = BoundExpr;
    const KParam k3(3);
    const E one = E::integer(1);
    const E d = E::disc_root(k3);
    return (one - E::integer(3) / d) * (one + E::integer(2) * pow(E::alpha(k3), -2)) -
           (E::integer(6) + E::integer(12) / d) * pow(E::alpha(KParam(2)), -4);
}

struct LkConstant {
    KParam k;
    RealBound value;
};

inline LkConstant lk(KParam k, const Rational& tol = default_tolerance()) {
    return {k, enclose(lk_expr(k), tol)};
}

/// L_k > alpha_k^{-2}, decided by refining both enclosures until disjoint.
inline bool check_lk_gt_alpha_inv2(KParam k) {
    require(k.value() >= 2, "L_k is defined for k >= 2");
    return certified_less(pow(BoundExpr::alpha(k), -2), lk_expr(k));
}

inline void require_karamata_range(KParam k, Index c) {
    require(k.value() >= 2, "bound needs k >= 2");
    require(k.value() == 2 ? c >= 3 : c >= 2, "bound needs c >= 3 (k = 2) or c >= 2 (k >= 3)");
}

inline BoundExpr karamata_expr(KParam k, Index c) {
    require_karamata_range(k, c);
    const unsigned long long kk = k.value();
    return lk_expr(k) * pow(BoundExpr::alpha(k), static_cast<int>(2 * c)) /
           BoundExpr::integer(static_cast<long long>(kk * kk + 4));
}

/// Enclosure of L_k alpha_k^{2c} / D_k^2.
inline RealBound karamata_lower(KParam k, Index c, const Rational& tol = default_tolerance()) {
    return enclose(karamata_expr(k, c), tol);
}

/// True iff the integer m is certified strictly above L_k alpha_k^{2c} / D_k^2,
/// i.e. m exceeds the upper endpoint of some refinement of the enclosure.
/// The bound is irrational so refinement separates it from any integer.
inline bool exceeds_karamata(KParam k, Index c, const BigInt& m) {
    return certified_less(karamata_expr(k, c), BoundExpr::constant(Rational(m)));
}

/// F_k(c)^2 - 3 F_k(c) + 2 = m_k(1, 1, c).
inline BigInt m_upper_for_c(KParam k, Index c) {
    require(c >= 1, "c must be >= 1");
    const BigInt& f = kfib(k, c);
    return f * f - 3 * f + 2;
}

struct CWindow {
    KParam k;
    BigInt m;
    /// c >= 2 with alpha^{2(c-1)} < D^2 m < alpha^{2c}; at most one element.
    std::vector<Index> candidates;
    /// Minimal configurations outside the lower-bound chain that match m.
    std::vector<Index> exceptional;

    [[nodiscard]] bool contains(Index c) const {
        return std::find(candidates.begin(), candidates.end(), c) != candidates.end() ||
               std::find(exceptional.begin(), exceptional.end(), c) != exceptional.end();
    }
};

/// Exact in Z[alpha_k]: the target (k^2+4) m is compared against even powers
/// of alpha_k until they pass it.
inline CWindow c_window(KParam k, const BigInt& m) {
    require(k.value() >= 2, "c_window needs k >= 2");
    require(m.sign() > 0, "c_window needs m >= 1");
    const unsigned long long kk = k.value();
    const QuadInt target = quad_from_int(k, m * (kk * kk + 4));
    CWindow w{k, m, {}, {}};
    for (Index c = 2;; ++c) {
        const QuadInt below = alpha_pow(k, 2 * (c - 1));
        if (!(below < target)) break;
        if (target < alpha_pow(k, 2 * c)) w.candidates.push_back(c);
    }
    // For k = 2 the only minimal triple with c <= a + b is (2,2,4), where
    // F(4) = 3 F(2) F(2); it sits outside the chain that yields the window.
    if (kk == 2) {
        const BigInt& f2 = kfib(k, 2);
        const BigInt& f4 = kfib(k, 4);
        const BigInt m224 = 2 * f2 * f2 + f4 * f4 - 3 * f2 * f2 * f4;
        if (m224 == m) w.exceptional.push_back(4);
    }
    return w;
}

}  // namespace markoff_kfib
