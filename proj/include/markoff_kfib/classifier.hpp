#pragma once

// Markoff m-triples whose components are k-Fibonacci numbers, addressed by
// index triples (a, b, c): exact m_k(a,b,c), the closed-form sign rules,
// exhaustive enumeration, the k = 2 non-minimal family, duplicate-m
// detection and lookup of every triple for a given m.

#include "markoff_kfib/bigint.hpp"
#include "markoff_kfib/bounds.hpp"
#include "markoff_kfib/kfib.hpp"
#include "markoff_kfib/markoff.hpp"
#include "markoff_kfib/parallel.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace markoff_kfib {

/// Ordered index triple 1 <= a <= b <= c.
struct IndexTriple {
    Index a;
    Index b;
    Index c;

    IndexTriple(Index a_, Index b_, Index c_) : a(a_), b(b_), c(c_) {
        require(1 <= a && a <= b && b <= c, "index triple must satisfy 1 <= a <= b <= c");
    }

    friend bool operator==(const IndexTriple&, const IndexTriple&) = default;

    /// Lexicographic in (c, b, a).
    friend std::strong_ordering operator<=>(const IndexTriple& x, const IndexTriple& y) {
        return std::tie(x.c, x.b, x.a) <=> std::tie(y.c, y.b, y.a);
    }

    [[nodiscard]] std::string str() const {
        return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    }
};

struct Solution {
    KParam k;
    IndexTriple idx;
    ValueTriple values;
    MValue m;
    bool minimal;

    friend bool operator==(const Solution&, const Solution&) = default;
};

inline MValue m_k_indices(KParam k, const IndexTriple& t) {
    const BigInt& x = kfib(k, t.a);
    const BigInt& y = kfib(k, t.b);
    const BigInt& z = kfib(k, t.c);
    return x * x + y * y + z * z - 3 * x * y * z;
}

/// Solution record for t, or nullopt when m_k(t) <= 0.
inline std::optional<Solution> make_solution(KParam k, const IndexTriple& t) {
    MValue m = m_k_indices(k, t);
    if (m.sign() <= 0) return std::nullopt;
    ValueTriple v(kfib(k, t.a), kfib(k, t.b), kfib(k, t.c));
    const bool minimal = is_minimal(v);
    return Solution{k, t, std::move(v), std::move(m), minimal};
}

enum class Region { Positive, NonPositive, Unknown };

inline std::string_view region_name(Region r) {
    switch (r) {
        case Region::Positive: return "positive";
        case Region::NonPositive: return "nonpositive";
        case Region::Unknown: return "unknown";
    }
    return "unknown";
}

namespace rule {
/// F(c) >= 3F(a)F(b) holds, so the triple is minimal and m > 0.
inline constexpr std::string_view minimal_threshold = "minimal_threshold";
/// k >= 3 and c < a + b.
inline constexpr std::string_view short_third_index = "short_third_index";
/// k = 2, a >= 3, c <= a + b.
inline constexpr std::string_view pell_large_first = "pell_large_first";
/// k = 2, a = 1, c <= b + 1.
inline constexpr std::string_view pell_unit_first = "pell_unit_first";
/// k = 2, a = 2, c = b + 1.
inline constexpr std::string_view pell_two_adjacent = "pell_two_adjacent";
/// k = 2, a = 2, c = b + 2: m = 4(1 - (-1)^(b+1)), so 8 for b even, 0 for b odd.
inline constexpr std::string_view pell_two_gap_parity = "pell_two_gap_parity";
/// b = c: m = F(a)^2 + F(c)^2 (2 - 3F(a)) <= F(a)^2 - F(c)^2 <= 0.
inline constexpr std::string_view repeated_top = "repeated_top";
inline constexpr std::string_view none = "none";
}  // namespace rule

struct RegionVerdict {
    Region predicted;
    std::string_view rule;
};

inline RegionVerdict predict_region(KParam k, const IndexTriple& t) {
    require(k.value() >= 2, "sign rules need k >= 2");
    const Index a = t.a, b = t.b, c = t.c;
    if (k.value() >= 3) {
        if (c < a + b) return {Region::NonPositive, rule::short_third_index};
        return {Region::Positive, rule::minimal_threshold};
    }
    if (c >= a + b + 1) return {Region::Positive, rule::minimal_threshold};
    if (a >= 3) return {Region::NonPositive, rule::pell_large_first};
    if (a == 1 && c <= b + 1) return {Region::NonPositive, rule::pell_unit_first};
    if (a == 2 && c == b + 1) return {Region::NonPositive, rule::pell_two_adjacent};
    if (a == 2 && c == b + 2) {
        return {b % 2 == 0 ? Region::Positive : Region::NonPositive, rule::pell_two_gap_parity};
    }
    if (b == c) return {Region::NonPositive, rule::repeated_top};
    return {Region::Unknown, rule::none};
}

/// Every Solution with c <= c_max, ordered by (c, b, a). Work is split by c.
inline std::vector<Solution> enumerate_solutions(KParam k, Index c_max,
                                                 unsigned jobs = resolve_jobs()) {
    require(k.value() >= 2, "enumeration needs k >= 2");
    require(c_max >= 1, "c_max must be >= 1");
    kfib(k, c_max);  // warm the cache before fanning out
    std::vector<std::vector<Solution>> per_c(c_max);
    parallel_for(c_max, jobs, [&](std::size_t i) {
        const Index c = static_cast<Index>(i + 1);
        auto& bucket = per_c[i];
        for (Index b = 1; b <= c; ++b) {
            for (Index a = 1; a <= b; ++a) {
                if (auto s = make_solution(k, IndexTriple(a, b, c))) bucket.push_back(std::move(*s));
            }
        }
    });
    std::vector<Solution> out;
    for (auto& bucket : per_c) {
        for (auto& s : bucket) out.push_back(std::move(s));
    }
    return out;
}

/// Members (2, 2n, 2n+2) of the k = 2 family with 2 <= n and 2n + 2 <= c_max.
inline std::vector<IndexTriple> pell_family_members(Index c_max) {
    std::vector<IndexTriple> out;
    for (Index n = 2; 2 * n + 2 <= c_max; ++n) out.emplace_back(2, 2 * n, 2 * n + 2);
    return out;
}

struct FamilyReport {
    bool pass = true;
    std::vector<IndexTriple> found;       // non-minimal solutions, (c, b, a) order
    std::vector<IndexTriple> expected;
    std::vector<IndexTriple> unexpected;  // found but not expected
    std::vector<IndexTriple> missing;     // expected but not found
    std::vector<IndexTriple> wrong_m;     // expected members whose m != 8
};

/// Non-minimal solutions must be exactly the k = 2 family, each with m = 8,
/// and must not exist at all for k >= 3.
inline FamilyReport nonminimal_family_check(KParam k, Index c_max, unsigned jobs = resolve_jobs()) {
    require(k.value() >= 2, "family check needs k >= 2");
    FamilyReport r;
    std::map<IndexTriple, MValue> found_m;
    for (const auto& s : enumerate_solutions(k, c_max, jobs)) {
        if (s.minimal) continue;
        r.found.push_back(s.idx);
        found_m.emplace(s.idx, s.m);
    }
    if (k.value() == 2) r.expected = pell_family_members(c_max);
    for (const auto& t : r.found) {
        if (std::find(r.expected.begin(), r.expected.end(), t) == r.expected.end()) r.unexpected.push_back(t);
    }
    for (const auto& t : r.expected) {
        const auto it = found_m.find(t);
        if (it == found_m.end()) r.missing.push_back(t);
        else if (it->second != 8) r.wrong_m.push_back(t);
    }
    r.pass = r.unexpected.empty() && r.missing.empty() && r.wrong_m.empty();
    return r;
}

using SolutionPair = std::pair<Solution, Solution>;

/// Unordered pairs of distinct minimal solutions sharing m. Within a pair the
/// solution with the smaller a comes first; pairs are ordered by that first
/// member's (c, b, a).
inline std::vector<SolutionPair> duplicate_pairs(KParam k, Index c_max, unsigned jobs = resolve_jobs()) {
    require(k.value() >= 2, "duplicate search needs k >= 2");
    std::map<MValue, std::vector<Solution>> by_m;
    for (auto& s : enumerate_solutions(k, c_max, jobs)) {
        if (s.minimal) by_m[s.m].push_back(std::move(s));
    }
    std::vector<SolutionPair> out;
    for (auto& [m, group] : by_m) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                const bool i_first = std::tie(group[i].idx.a, group[i].idx) < std::tie(group[j].idx.a, group[j].idx);
                out.emplace_back(i_first ? group[i] : group[j], i_first ? group[j] : group[i]);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SolutionPair& x, const SolutionPair& y) { return x.first.idx < y.first.idx; });
    return out;
}

/// The k = 3 pairs {(a, b, a+b), (a+1, b-1, a+b)} with a odd, b even,
/// b >= a + 3 and a + b <= c_max.
inline std::vector<std::pair<IndexTriple, IndexTriple>> k3_duplicate_family(Index c_max) {
    std::vector<std::pair<IndexTriple, IndexTriple>> out;
    for (Index c = 1; c <= c_max; ++c) {
        for (Index a = 1; 2 * a + 3 <= c; a += 2) {
            const Index b = c - a;
            if (b % 2 != 0 || b < a + 3) continue;
            out.emplace_back(IndexTriple(a, b, c), IndexTriple(a + 1, b - 1, c));
        }
    }
    return out;
}

struct DuplicateReport {
    bool pass = true;
    std::vector<SolutionPair> pairs;
    /// Pairs that break the expected shape.
    std::vector<SolutionPair> violations;
    /// Expected k = 3 family members not found as a duplicate pair.
    std::vector<std::pair<IndexTriple, IndexTriple>> missing;
};

/// For k = 3 the duplicate pairs must be exactly k3_duplicate_family; for
/// every other k there must be none. Also checks c = c' and a + b = a' + b'.
inline DuplicateReport duplicate_family_check(KParam k, Index c_max, unsigned jobs = resolve_jobs()) {
    DuplicateReport r;
    r.pairs = duplicate_pairs(k, c_max, jobs);
    const auto expected = k.value() == 3 ? k3_duplicate_family(c_max)
                                         : std::vector<std::pair<IndexTriple, IndexTriple>>{};
    for (const auto& p : r.pairs) {
        const auto& s = p.first.idx;
        const auto& t = p.second.idx;
        const bool conserved = s.c == t.c && s.a + s.b == t.a + t.b;
        const bool listed = std::find(expected.begin(), expected.end(), std::make_pair(s, t)) != expected.end();
        if (!conserved || !listed) r.violations.push_back(p);
    }
    for (const auto& e : expected) {
        const bool found = std::any_of(r.pairs.begin(), r.pairs.end(), [&](const SolutionPair& p) {
            return p.first.idx == e.first && p.second.idx == e.second;
        });
        if (!found) r.missing.push_back(e);
    }
    r.pass = r.violations.empty() && r.missing.empty();
    return r;
}

/// Symbolic description of the infinite k = 2, m = 8 family.
struct FamilyDescriptor {
    std::string form = "(F_2(2), F_2(2n), F_2(2n+2))";
    Index n_min = 2;
    BigInt m = 8;
    Index materialized_up_to_c = 0;
};

struct FindResult {
    std::vector<Solution> solutions;  // (c, b, a) order
    std::optional<FamilyDescriptor> family;
    CWindow window;
};

inline constexpr Index kDefaultFamilyCap = 64;

/// Every Solution with the given m: each candidate c from the window is
/// scanned over a <= b <= c; for k = 2 and m = 8 the non-minimal family is
/// added symbolically plus its members with c <= cap.
inline FindResult find_triples_for_m(KParam k, const BigInt& m, Index cap = kDefaultFamilyCap) {
    require(k.value() >= 2, "lookup needs k >= 2");
    require(m.sign() > 0, "m must be >= 1");
    FindResult r{{}, std::nullopt, c_window(k, m)};
    std::vector<Index> cs = r.window.candidates;
    cs.insert(cs.end(), r.window.exceptional.begin(), r.window.exceptional.end());
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (const Index c : cs) {
        for (Index b = 1; b <= c; ++b) {
            for (Index a = 1; a <= b; ++a) {
                const IndexTriple t(a, b, c);
                if (m_k_indices(k, t) == m) r.solutions.push_back(*make_solution(k, t));
            }
        }
    }
    if (k.value() == 2 && m == 8) {
        FamilyDescriptor f;
        f.materialized_up_to_c = cap;
        for (const auto& t : pell_family_members(cap)) {
            auto s = make_solution(k, t);
            if (s && s->m == m && std::find(r.solutions.begin(), r.solutions.end(), *s) == r.solutions.end())
                r.solutions.push_back(std::move(*s));
        }
        r.family = std::move(f);
    }
    std::sort(r.solutions.begin(), r.solutions.end(),
              [](const Solution& x, const Solution& y) { return x.idx < y.idx; });
    return r;
}

// ---------------------------------------------------------------------------
// Serialization

/// {"k":..,"a":..,"b":..,"c":..,"x":"..","y":"..","z":"..","m":"..","minimal":..}
inline nlohmann::ordered_json to_json(const Solution& s) {
    nlohmann::ordered_json j;
    j["k"] = s.k.value();
    j["a"] = s.idx.a;
    j["b"] = s.idx.b;
    j["c"] = s.idx.c;
    j["x"] = s.values.x().str();
    j["y"] = s.values.y().str();
    j["z"] = s.values.z().str();
    j["m"] = s.m.str();
    j["minimal"] = s.minimal;
    return j;
}

inline nlohmann::ordered_json to_json(const FamilyDescriptor& f) {
    nlohmann::ordered_json j;
    j["family"] = f.form;
    j["n_min"] = f.n_min;
    j["m"] = f.m.str();
    j["materialized_up_to_c"] = f.materialized_up_to_c;
    j["note"] = "n = 1 gives the minimal triple (2,2,12)";
    return j;
}

inline constexpr std::string_view kCsvHeader = "k,a,b,c,x,y,z,m,minimal";

inline std::string to_csv_row(const Solution& s) {
    return std::to_string(s.k.value()) + "," + std::to_string(s.idx.a) + "," + std::to_string(s.idx.b) + "," +
           std::to_string(s.idx.c) + "," + s.values.x().str() + "," + s.values.y().str() + "," +
           s.values.z().str() + "," + s.m.str() + "," + (s.minimal ? "true" : "false");
}

}  // namespace markoff_kfib
