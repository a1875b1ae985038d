#include "markoff_kfib/markoff.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace markoff_kfib;

namespace {

ValueTriple vt(long long x, long long y, long long z) { return ValueTriple(BigInt(x), BigInt(y), BigInt(z)); }

}  // namespace

TEST(ValueTriple, SortsOnConstruction) {
    const auto t = vt(12, 2, 2);
    EXPECT_EQ(t.x(), 2);
    EXPECT_EQ(t.y(), 2);
    EXPECT_EQ(t.z(), 12);
    EXPECT_EQ(t, vt(2, 12, 2));
    EXPECT_EQ(t.str(), "(2,2,12)");
    EXPECT_THROW(vt(0, 1, 2), PreconditionError);
    EXPECT_THROW(vt(-1, 1, 2), PreconditionError);
}

TEST(MOf, Examples) {
    EXPECT_EQ(m_of(vt(2, 2, 12)), 8);
    EXPECT_EQ(m_of(vt(1, 1, 1)), 0);
    EXPECT_EQ(m_of(vt(2, 12, 70)), 8);
    EXPECT_EQ(m_of(vt(1, 2, 5)), 0);
    EXPECT_EQ(m_of(vt(3, 3, 3)), -54);
}

TEST(IsMinimal, Examples) {
    EXPECT_TRUE(is_minimal(vt(2, 2, 12)));
    EXPECT_FALSE(is_minimal(vt(2, 12, 70)));
    EXPECT_TRUE(is_minimal(vt(1, 1, 3)));
}

TEST(Children, Examples) {
    EXPECT_EQ(children(vt(2, 2, 12)), (std::vector<ValueTriple>{vt(2, 12, 70)}));
    EXPECT_EQ(children(vt(2, 12, 70)), (std::vector<ValueTriple>{vt(2, 70, 408), vt(12, 70, 2518)}));
    EXPECT_EQ(children(vt(2, 70, 408)), (std::vector<ValueTriple>{vt(2, 408, 2378), vt(70, 408, 85678)}));
}

TEST(Children, VietaInvarianceRandomized) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = 1 + static_cast<long long>(rng() % 50);
        const auto y = x + static_cast<long long>(rng() % 50);
        const auto t = vt(x, y, 3 * x * y + static_cast<long long>(rng() % 100));
        for (const auto& c : children(t)) ASSERT_EQ(m_of(c), m_of(t));
    }
}

TEST(GenerateTree, ReferenceDepthFourNodeForNode) {
    const auto tree = generate_tree(vt(2, 2, 12), DepthLimit{4});
    const std::vector<ValueTriple> expected{
        vt(2, 2, 12),
        vt(2, 12, 70),
        vt(2, 70, 408),
        vt(2, 408, 2378),
        vt(2, 2378, 13860),
        vt(408, 2378, 2910670),
        vt(70, 408, 85678),
        vt(70, 85678, 17991972),
        vt(408, 85678, 104869802),
        vt(12, 70, 2518),
        vt(12, 2518, 90578),
        vt(12, 90578, 3258290),
        vt(2518, 90578, 684226200),
        vt(70, 2518, 528768),
        vt(70, 528768, 111038762),
        vt(2518, 528768, 3994313402LL),
    };
    EXPECT_EQ(flatten(tree), expected);
    // shape: unary root, then binary below
    ASSERT_EQ(tree.children.size(), 1U);
    ASSERT_EQ(tree.children[0].children.size(), 2U);
    for (const auto& g : tree.children[0].children) {
        ASSERT_EQ(g.children.size(), 2U);
        for (const auto& gg : g.children) {
            ASSERT_EQ(gg.children.size(), 2U);
            for (const auto& leaf : gg.children) EXPECT_TRUE(leaf.children.empty());
        }
    }
}

TEST(GenerateTree, UpperBranchIsPellSequence) {
    // the leftmost path carries consecutive Pell numbers (2, P(2n), P(2n+2))
    const auto tree = generate_tree(vt(2, 2, 12), DepthLimit{8});
    const MarkoffTreeNode* node = &tree.children[0];
    std::vector<long long> pell{0, 1};
    for (int i = 2; i < 30; ++i) pell.push_back(2 * pell[i - 1] + pell[i - 2]);
    for (int n = 2; n <= 8; ++n) {
        EXPECT_EQ(node->triple, vt(2, pell[2 * n], pell[2 * n + 2]));
        if (node->children.empty()) break;
        node = &node->children[0];
    }
}

TEST(GenerateTree, Examples) {
    auto t = generate_tree(vt(2, 2, 12), DepthLimit{2});
    EXPECT_EQ(flatten(t), (std::vector<ValueTriple>{vt(2, 2, 12), vt(2, 12, 70), vt(2, 70, 408), vt(12, 70, 2518)}));
    t = generate_tree(vt(2, 2, 12), MaxZLimit{BigInt(100)});
    EXPECT_EQ(flatten(t), (std::vector<ValueTriple>{vt(2, 2, 12), vt(2, 12, 70)}));
    t = generate_tree(vt(1, 1, 3), DepthLimit{0});
    EXPECT_EQ(flatten(t), (std::vector<ValueTriple>{vt(1, 1, 3)}));
}

TEST(GenerateTree, Errors) {
    try {
        (void)generate_tree(vt(2, 12, 70), DepthLimit{1});
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_STREQ(e.what(), "root not minimal");
    }
    try {
        (void)generate_tree(vt(1, 1, 1), DepthLimit{1});
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_STREQ(e.what(), "nonpositive m");
    }
    try {
        (void)generate_tree(vt(3, 3, 3), DepthLimit{1});
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_STREQ(e.what(), "nonpositive m");
    }
}

TEST(GenerateTree, InvariantsOnManyRoots) {
    for (long long m = 1; m <= 300; ++m) {
        for (const auto& root : minimal_triples_for_m(BigInt(m))) {
            const auto tree = generate_tree(root, DepthLimit{5});
            auto check = [&](auto&& self, const MarkoffTreeNode& node) -> void {
                ASSERT_EQ(m_of(node.triple), m);
                for (const auto& c : node.children) {
                    ASSERT_GT(c.triple.z(), node.triple.z());
                    ASSERT_FALSE(is_minimal(c.triple));
                    self(self, c);
                }
            };
            check(check, tree);
        }
    }
}

TEST(GenerateTree, MaxZBoundsEveryNode) {
    const BigInt bound(1000000);
    const auto tree = generate_tree(vt(2, 2, 12), MaxZLimit{bound});
    const auto nodes = flatten(tree);
    for (const auto& t : nodes) EXPECT_LE(t.z(), bound);
    // depth-limited tree with filter reproduces the same set
    const auto deep = flatten(generate_tree(vt(2, 2, 12), DepthLimit{12}));
    std::size_t within = 0;
    for (const auto& t : deep) within += t.z() <= bound ? 1 : 0;
    EXPECT_EQ(within, nodes.size());
}

TEST(TreeSerialization, Json) {
    const auto tree = generate_tree(vt(2, 2, 12), DepthLimit{1});
    const auto j = tree_to_json(tree);
    EXPECT_EQ(j.dump(), R"({"triple":["2","2","12"],"children":[{"triple":["2","12","70"],"children":[]}]})");
}

TEST(TreeSerialization, Dot) {
    const auto tree = generate_tree(vt(2, 2, 12), DepthLimit{2});
    const std::string dot = tree_to_dot(tree);
    EXPECT_EQ(dot,
              "digraph markoff_tree {\n"
              "  n0 [label=\"(2,2,12)\"];\n"
              "  n1 [label=\"(2,12,70)\"];\n"
              "  n2 [label=\"(2,70,408)\"];\n"
              "  n1 -> n2;\n"
              "  n3 [label=\"(12,70,2518)\"];\n"
              "  n1 -> n3;\n"
              "  n0 -> n1;\n"
              "}\n");
}

TEST(TreeSerialization, Text) {
    const auto tree = generate_tree(vt(2, 2, 12), DepthLimit{2});
    EXPECT_EQ(tree_to_text(tree), "(2,2,12)\n  (2,12,70)\n    (2,70,408)\n    (12,70,2518)\n");
}

TEST(Census, SmallM) {
    EXPECT_TRUE(minimal_triples_for_m(BigInt(1)).empty());
    EXPECT_EQ(minimal_triples_for_m(BigInt(2)), (std::vector<ValueTriple>{vt(1, 1, 3)}));
    EXPECT_TRUE(minimal_triples_for_m(BigInt(3)).empty());
    EXPECT_EQ(minimal_triples_for_m(BigInt(8)), (std::vector<ValueTriple>{vt(2, 2, 12)}));
}

TEST(Census, M2180) {
    const auto list = minimal_triples_for_m(BigInt(2180));
    EXPECT_EQ(list.size(), 14U);
    EXPECT_NE(std::find(list.begin(), list.end(), vt(1, 33, 109)), list.end());
    EXPECT_NE(std::find(list.begin(), list.end(), vt(3, 10, 109)), list.end());
    EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
    for (const auto& t : list) {
        EXPECT_EQ(m_of(t), 2180);
        EXPECT_TRUE(is_minimal(t));
    }
}

TEST(Census, SoundOnRange) {
    for (long long m = 1; m <= 3000; ++m) {
        for (const auto& t : minimal_triples_for_m(BigInt(m))) {
            ASSERT_EQ(m_of(t), m);
            ASSERT_TRUE(is_minimal(t));
        }
    }
}

TEST(Census, RejectsNonPositive) {
    EXPECT_THROW(minimal_triples_for_m(BigInt(0)), PreconditionError);
    EXPECT_THROW(minimal_triples_for_m(BigInt(-4)), PreconditionError);
}
