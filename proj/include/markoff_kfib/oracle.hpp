#pragma once

// Brute-force ground truth. Works purely in value space: no index
// arithmetic, no sign rules, no quadratic formula. Shares only k-Fibonacci
// generation and the ValueTriple type with the rest of the library.

#include "markoff_kfib/bigint.hpp"
#include "markoff_kfib/kfib.hpp"
#include "markoff_kfib/markoff.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace markoff_kfib::oracle {

/// Wall-clock allowance; a run that exceeds it stops and reports a skip.
class Budget {
public:
    Budget() = default;
    explicit Budget(std::chrono::duration<double> allowance)
        : deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(allowance)) {}

    [[nodiscard]] bool exhausted() const {
        return deadline_ && std::chrono::steady_clock::now() > *deadline_;
    }

private:
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

using TripleSet = std::set<ValueTriple>;

struct BruteResult {
    TripleSet triples;
    bool skipped = false;
};

namespace detail {
inline BigInt markoff_residual(const BigInt& x, const BigInt& y, const BigInt& z) {
    return x * x + y * y + z * z - 3 * x * y * z;
}
}  // namespace detail

/// Ordered triples of positive k-Fibonacci values <= value_max with m > 0.
inline BruteResult brute_solutions(KParam k, const BigInt& value_max, const Budget& budget = {}) {
    require(value_max >= 1, "value_max must be >= 1");
    std::vector<BigInt> values;
    for (Index n = 1; kfib(k, n) <= value_max; ++n) {
        if (values.empty() || values.back() != kfib(k, n)) values.push_back(kfib(k, n));
    }
    BruteResult r;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (budget.exhausted()) {
            r.skipped = true;
            return r;
        }
        for (std::size_t j = i; j < values.size(); ++j) {
            for (std::size_t l = j; l < values.size(); ++l) {
                if (detail::markoff_residual(values[i], values[j], values[l]).sign() > 0)
                    r.triples.emplace(values[i], values[j], values[l]);
            }
        }
    }
    return r;
}

/// Minimal solutions for m by direct search: x <= y with x^2 + y^2 <= m, then
/// z walks upward from max(y, 3xy). Past 3xy the residual
/// z^2 - 3xyz + x^2 + y^2 - m is increasing in z, so the walk stops once it
/// turns positive.
inline BruteResult brute_census(const BigInt& m, const Budget& budget = {}) {
    require(m.sign() > 0, "m must be >= 1");
    BruteResult r;
    for (BigInt x = 1; x * x + x * x <= m; ++x) {
        if (budget.exhausted()) {
            r.skipped = true;
            return r;
        }
        for (BigInt y = x; x * x + y * y <= m; ++y) {
            const BigInt start = std::max<BigInt>(y, 3 * x * y);
            for (BigInt z = start;; ++z) {
                const BigInt residual = z * z - 3 * x * y * z + x * x + y * y - m;
                if (residual.sign() == 0) r.triples.emplace(x, y, z);
                if (residual.sign() > 0) break;
            }
        }
    }
    return r;
}

enum class Provenance { missing_in_candidate, extra_in_candidate };

struct Mismatch {
    ValueTriple triple;
    Provenance provenance;
};

struct OracleReport {
    std::string domain;
    TripleSet solutions;  // the reference set
    std::vector<Mismatch> mismatches;
    bool skipped = false;

    [[nodiscard]] bool agrees() const { return !skipped && mismatches.empty(); }
};

inline OracleReport cross_check(const TripleSet& reference, const TripleSet& candidate, std::string domain = {}) {
    OracleReport r{std::move(domain), reference, {}, false};
    for (const auto& t : reference) {
        if (!candidate.contains(t)) r.mismatches.push_back({t, Provenance::missing_in_candidate});
    }
    for (const auto& t : candidate) {
        if (!reference.contains(t)) r.mismatches.push_back({t, Provenance::extra_in_candidate});
    }
    return r;
}

inline nlohmann::ordered_json to_json(const OracleReport& r) {
    nlohmann::ordered_json j;
    j["domain"] = r.domain;
    j["skipped"] = r.skipped;
    j["solution_count"] = r.solutions.size();
    j["mismatches"] = nlohmann::ordered_json::array();
    for (const auto& mm : r.mismatches) {
        j["mismatches"].push_back(
            {{"triple", triple_json(mm.triple)},
             {"provenance", mm.provenance == Provenance::missing_in_candidate ? "missing_in_candidate"
                                                                             : "extra_in_candidate"}});
    }
    return j;
}

}  // namespace markoff_kfib::oracle
