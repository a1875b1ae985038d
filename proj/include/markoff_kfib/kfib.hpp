#pragma once

// k-Fibonacci numbers F_k(0)=0, F_k(1)=1, F_k(n)=k F_k(n-1)+F_k(n-2), with a
// per-k append-only cache, and the classical identities and inequalities
// exposed as (lhs, rhs) evaluations so callers can check them exactly.

#include "markoff_kfib/bigint.hpp"

#include <algorithm>
#include <deque>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string_view>

namespace markoff_kfib {

/// Sequence parameter k >= 1.
class KParam {
public:
    explicit KParam(unsigned k) : k_(k) { require(k >= 1, "k must be >= 1"); }
    [[nodiscard]] unsigned value() const noexcept { return k_; }
    friend bool operator==(KParam, KParam) = default;

private:
    unsigned k_;
};

/// Append-only table of F_k(0..). Readers take a shared lock; growth takes
/// the exclusive lock. Elements live in a deque so references handed out
/// stay valid while the table grows.
class SequenceCache {
public:
    explicit SequenceCache(KParam k) : k_(k) {
        terms_.emplace_back(0);
        terms_.emplace_back(1);
    }

    SequenceCache(const SequenceCache&) = delete;
    SequenceCache& operator=(const SequenceCache&) = delete;

    [[nodiscard]] KParam k() const noexcept { return k_; }

    const BigInt& term(Index n) {
        {
            std::shared_lock lock(mutex_);
            if (n < terms_.size()) return terms_[n];
        }
        std::unique_lock lock(mutex_);
        grow_to_locked(n);
        return terms_[n];
    }

    /// Smallest n with F_k(n) == v, if any.
    std::optional<Index> index_of(const BigInt& v) {
        if (v.sign() < 0) return std::nullopt;
        {
            std::unique_lock lock(mutex_);
            while (terms_.back() < v) grow_to_locked(static_cast<Index>(terms_.size()));
        }
        std::shared_lock lock(mutex_);
        const auto it = std::lower_bound(terms_.begin() + 1, terms_.end(), v);
        if (v == 0) return Index{0};
        if (it == terms_.end() || *it != v) return std::nullopt;
        return static_cast<Index>(it - terms_.begin());
    }

    [[nodiscard]] std::size_t size() const {
        std::shared_lock lock(mutex_);
        return terms_.size();
    }

private:
    void grow_to_locked(Index n) {
        while (terms_.size() <= n) {
            const auto last = terms_.size();
            terms_.push_back(terms_[last - 1] * k_.value() + terms_[last - 2]);
        }
    }

    KParam k_;
    mutable std::shared_mutex mutex_;
    std::deque<BigInt> terms_;
};

/// Process-wide cache for a given k; created on first use, never evicted.
inline SequenceCache& sequence_cache(KParam k) {
    static std::mutex registry_mutex;
    static std::map<unsigned, std::unique_ptr<SequenceCache>> registry;
    std::lock_guard lock(registry_mutex);
    auto& slot = registry[k.value()];
    if (!slot) slot = std::make_unique<SequenceCache>(k);
    return *slot;
}

inline const BigInt& kfib(KParam k, Index n) { return sequence_cache(k).term(n); }

inline std::optional<Index> kfib_index_of(KParam k, const BigInt& v) {
    return sequence_cache(k).index_of(v);
}

/// Both sides of an identity or inequality, evaluated exactly.
struct Sides {
    BigInt lhs;
    BigInt rhs;

    [[nodiscard]] bool equal() const { return lhs == rhs; }
    [[nodiscard]] bool lhs_le_rhs() const { return lhs <= rhs; }
};

inline int parity_sign(Index n) { return (n % 2 == 0) ? 1 : -1; }

/// F(n+i)F(n+j) - F(n)F(n+i+j) against (-1)^n F(i)F(j).
inline Sides vajda_sides(KParam k, Index n, Index i, Index j) {
    require(n >= 1 && i >= 1 && j >= 1, "vajda: n, i, j must be >= 1");
    Sides s;
    s.lhs = kfib(k, n + i) * kfib(k, n + j) - kfib(k, n) * kfib(k, n + i + j);
    s.rhs = parity_sign(n) * (kfib(k, i) * kfib(k, j));
    return s;
}

enum class Identity { sum, docagne, catalan, simson, sum_of_squares };

inline std::string_view identity_name(Identity id) {
    switch (id) {
        case Identity::sum: return "sum";
        case Identity::docagne: return "docagne";
        case Identity::catalan: return "catalan";
        case Identity::simson: return "simson";
        case Identity::sum_of_squares: return "sum_of_squares";
    }
    return "?";
}

/// Parameters per identity:
///   sum(a, b)            a, b >= 1      F(a+b) = F(a+1)F(b) + F(a)F(b-1)
///   docagne(a, b)        1 <= a <= b    (-1)^a F(b-a) = F(b)F(a+1) - F(b+1)F(a)
///   catalan(n, r)        1 <= r <= n    F(n)^2 = F(n+r)F(n-r) + (-1)^(n-r) F(r)^2
///   simson(n)            n >= 1         F(n)^2 = F(n+1)F(n-1) - (-1)^n
///   sum_of_squares(N)    N >= 0         sum_{n<=N} F(n)^2 = F(N)F(N+1)/k
inline Sides identity_check(Identity id, KParam k, std::span<const Index> params) {
    const auto arity = [&](std::size_t n) {
        require(params.size() == n, "identity_check: wrong number of parameters");
    };
    auto F = [&](Index n) -> const BigInt& { return kfib(k, n); };
    Sides s;
    switch (id) {
        case Identity::sum: {
            arity(2);
            const Index a = params[0], b = params[1];
            require(a >= 1 && b >= 1, "sum: a, b must be >= 1");
            s.lhs = F(a + b);
            s.rhs = F(a + 1) * F(b) + F(a) * F(b - 1);
            break;
        }
        case Identity::docagne: {
            arity(2);
            const Index a = params[0], b = params[1];
            require(a >= 1 && a <= b, "docagne: need 1 <= a <= b");
            s.lhs = parity_sign(a) * F(b - a);
            s.rhs = F(b) * F(a + 1) - F(b + 1) * F(a);
            break;
        }
        case Identity::catalan: {
            arity(2);
            const Index n = params[0], r = params[1];
            require(r >= 1 && r <= n, "catalan: need 1 <= r <= n");
            s.lhs = F(n) * F(n);
            s.rhs = F(n + r) * F(n - r) + parity_sign(n - r) * (F(r) * F(r));
            break;
        }
        case Identity::simson: {
            arity(1);
            const Index n = params[0];
            require(n >= 1, "simson: n must be >= 1");
            s.lhs = F(n) * F(n);
            s.rhs = F(n + 1) * F(n - 1) - parity_sign(n);
            break;
        }
        case Identity::sum_of_squares: {
            arity(1);
            const Index N = params[0];
            for (Index n = 0; n <= N; ++n) s.lhs += F(n) * F(n);
            const BigInt product = F(N) * F(N + 1);
            if (product % k.value() != 0)
                throw std::logic_error("sum_of_squares: F(N)F(N+1) not divisible by k");
            s.rhs = product / k.value();
            break;
        }
    }
    return s;
}

inline Sides identity_check(Identity id, KParam k, std::initializer_list<Index> params) {
    return identity_check(id, k, std::span<const Index>(params.begin(), params.size()));
}

/// (k F(a), F(a+1)); lhs <= rhs with equality iff a == 1.
inline Sides basic_bound_sides(KParam k, Index a) {
    require(a >= 1, "basic bound: a must be >= 1");
    return {kfib(k, a) * k.value(), kfib(k, a + 1)};
}

/// (F(a)F(b), F(a+b-1)); lhs <= rhs with equality iff a == 1 or b == 1.
inline Sides product_lower_sides(KParam k, Index a, Index b) {
    require(a >= 1 && b >= 1, "product bound: a, b must be >= 1");
    return {kfib(k, a) * kfib(k, b), kfib(k, a + b - 1)};
}

/// F(a+b-1) <= F(a)F(b)(1 + 1/k^2), scaled by k^2 to stay integral:
/// (k^2 F(a+b-1), (k^2+1) F(a)F(b)); equality iff a == b == 2.
inline Sides product_upper_sides(KParam k, Index a, Index b) {
    require(a >= 1 && b >= 1, "product bound: a, b must be >= 1");
    const unsigned long long k2 = 1ULL * k.value() * k.value();
    return {kfib(k, a + b - 1) * k2, kfib(k, a) * kfib(k, b) * (k2 + 1)};
}

/// F(c) >= 3 F(a) F(b).
inline bool ge3product(KParam k, Index a, Index b, Index c) {
    require(a >= 1 && b >= 1 && c >= 1, "ge3product: indices must be >= 1");
    return kfib(k, c) >= 3 * kfib(k, a) * kfib(k, b);
}

/// (4 F(2n-2), F(n)^2); valid for k >= 4, where lhs <= rhs.
inline Sides lemma24_sides(KParam k, Index n) {
    require(k.value() >= 4, "4F(2n-2) <= F(n)^2 only claimed for k >= 4");
    require(n >= 1, "n must be >= 1");
    return {4 * kfib(k, 2 * n - 2), kfib(k, n) * kfib(k, n)};
}

}  // namespace markoff_kfib
