#pragma once

// The Markoff m-equation x^2 + y^2 + z^2 = 3xyz + m over ordered positive
// triples: m-values, minimality (z >= 3xy), Vieta-jump children, bounded tree
// generation with JSON/DOT output, and the minimal-triple census for one m.

#include "markoff_kfib/bigint.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <compare>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace markoff_kfib {

/// Ordered triple 1 <= x <= y <= z. Unordered input is sorted.
class ValueTriple {
public:
    ValueTriple(BigInt x, BigInt y, BigInt z) : v_{std::move(x), std::move(y), std::move(z)} {
        require(v_[0] >= 1 && v_[1] >= 1 && v_[2] >= 1, "triple components must be positive");
        std::sort(v_.begin(), v_.end());
    }

    [[nodiscard]] const BigInt& x() const noexcept { return v_[0]; }
    [[nodiscard]] const BigInt& y() const noexcept { return v_[1]; }
    [[nodiscard]] const BigInt& z() const noexcept { return v_[2]; }

    friend bool operator==(const ValueTriple&, const ValueTriple&) = default;
    friend std::strong_ordering operator<=>(const ValueTriple& a, const ValueTriple& b) {
        for (std::size_t i = 0; i < 3; ++i) {
            if (a.v_[i] < b.v_[i]) return std::strong_ordering::less;
            if (b.v_[i] < a.v_[i]) return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    [[nodiscard]] std::string str() const {
        return "(" + x().str() + "," + y().str() + "," + z().str() + ")";
    }

private:
    std::array<BigInt, 3> v_;
};

using MValue = BigInt;

inline MValue m_of(const ValueTriple& t) {
    return t.x() * t.x() + t.y() * t.y() + t.z() * t.z() - 3 * t.x() * t.y() * t.z();
}

inline bool is_minimal(const ValueTriple& t) { return t.z() >= 3 * t.x() * t.y(); }

/// Vieta jumps (x, z, 3xz - y) then (y, z, 3yz - x), canonicalised and
/// deduplicated. Throws std::logic_error if a child lost the parent's m.
inline std::vector<ValueTriple> children(const ValueTriple& t) {
    const MValue m = m_of(t);
    std::vector<ValueTriple> out;
    out.emplace_back(t.x(), t.z(), 3 * t.x() * t.z() - t.y());
    ValueTriple lower(t.y(), t.z(), 3 * t.y() * t.z() - t.x());
    if (lower != out.front()) out.push_back(std::move(lower));
    for (const auto& c : out) {
        if (m_of(c) != m) throw std::logic_error("Vieta jump changed m for " + t.str());
    }
    return out;
}

struct MarkoffTreeNode {
    ValueTriple triple;
    std::vector<MarkoffTreeNode> children;
};

struct DepthLimit {
    unsigned depth;
};
struct MaxZLimit {
    BigInt max_z;
};
using TreeLimit = std::variant<DepthLimit, MaxZLimit>;

namespace detail {

inline void expand(MarkoffTreeNode& node, const TreeLimit& limit, unsigned level) {
    if (const auto* d = std::get_if<DepthLimit>(&limit); d != nullptr && level >= d->depth) return;
    for (auto& child : markoff_kfib::children(node.triple)) {
        if (const auto* b = std::get_if<MaxZLimit>(&limit); b != nullptr && child.z() > b->max_z) continue;
        node.children.push_back({std::move(child), {}});
        expand(node.children.back(), limit, level + 1);
    }
}

}  // namespace detail

/// Tree of all descendants of a minimal root within the limit; the upper
/// child (x, z, 3xz - y) is always listed first.
inline MarkoffTreeNode generate_tree(const ValueTriple& root, const TreeLimit& limit) {
    if (m_of(root).sign() <= 0) throw PreconditionError("nonpositive m");
    if (!is_minimal(root)) throw PreconditionError("root not minimal");
    MarkoffTreeNode tree{root, {}};
    detail::expand(tree, limit, 0);
    return tree;
}

/// Preorder list of triples (parent before children, children in order).
inline std::vector<ValueTriple> flatten(const MarkoffTreeNode& node) {
    std::vector<ValueTriple> out{node.triple};
    for (const auto& c : node.children) {
        auto sub = flatten(c);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

inline nlohmann::ordered_json triple_json(const ValueTriple& t) {
    return nlohmann::ordered_json::array({t.x().str(), t.y().str(), t.z().str()});
}

/// {"triple": ["x","y","z"], "children": [...]}; integers as decimal strings.
inline nlohmann::ordered_json tree_to_json(const MarkoffTreeNode& node) {
    nlohmann::ordered_json j;
    j["triple"] = triple_json(node.triple);
    j["children"] = nlohmann::ordered_json::array();
    for (const auto& c : node.children) j["children"].push_back(tree_to_json(c));
    return j;
}

inline std::string tree_to_dot(const MarkoffTreeNode& root) {
    std::ostringstream os;
    os << "digraph markoff_tree {\n";
    std::size_t next_id = 0;
    auto emit = [&](auto&& self, const MarkoffTreeNode& node) -> std::size_t {
        const std::size_t id = next_id++;
        os << "  n" << id << " [label=\"" << node.triple.str() << "\"];\n";
        for (const auto& c : node.children) {
            const std::size_t child_id = self(self, c);
            os << "  n" << id << " -> n" << child_id << ";\n";
        }
        return id;
    };
    emit(emit, root);
    os << "}\n";
    return os.str();
}

inline std::string tree_to_text(const MarkoffTreeNode& root) {
    std::ostringstream os;
    auto emit = [&](auto&& self, const MarkoffTreeNode& node, unsigned level) -> void {
        os << std::string(2 * level, ' ') << node.triple.str() << "\n";
        for (const auto& c : node.children) self(self, c, level + 1);
    };
    emit(emit, root, 0);
    return os.str();
}

/// All ordered minimal solutions of x^2 + y^2 + z^2 = 3xyz + m, ascending.
/// Minimality forces x^2 + y^2 <= m, and z is the larger root of
/// z^2 - 3xy z + (x^2 + y^2 - m) = 0.
inline std::vector<ValueTriple> minimal_triples_for_m(const BigInt& m) {
    require(m.sign() > 0, "m must be >= 1");
    std::vector<ValueTriple> out;
    for (BigInt x = 1; 2 * x * x <= m; ++x) {
        for (BigInt y = x; x * x + y * y <= m; ++y) {
            const BigInt xy3 = 3 * x * y;
            const BigInt disc = xy3 * xy3 - 4 * (x * x + y * y - m);
            BigInt root;
            if (!is_perfect_square(disc, &root)) continue;
            const BigInt twice_z = xy3 + root;
            if ((twice_z & 1) != 0) continue;
            BigInt z = twice_z / 2;
            if (z < y || z < xy3) continue;
            out.emplace_back(x, y, std::move(z));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace markoff_kfib
