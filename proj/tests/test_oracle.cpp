#include "markoff_kfib/classifier.hpp"
#include "markoff_kfib/markoff.hpp"
#include "markoff_kfib/oracle.hpp"

#include <gtest/gtest.h>

using namespace markoff_kfib;
using namespace markoff_kfib::oracle;

namespace {

ValueTriple vt(long long x, long long y, long long z) { return ValueTriple(BigInt(x), BigInt(y), BigInt(z)); }

TripleSet classifier_values(KParam k, Index c_max) {
    TripleSet out;
    for (const auto& s : enumerate_solutions(k, c_max)) out.insert(s.values);
    return out;
}

TripleSet census_set(long long m) {
    const auto v = minimal_triples_for_m(BigInt(m));
    return {v.begin(), v.end()};
}

}  // namespace

TEST(BruteSolutions, Examples) {
    auto r = brute_solutions(KParam(2), BigInt(12));
    EXPECT_FALSE(r.skipped);
    EXPECT_TRUE(r.triples.contains(vt(2, 2, 12)));
    EXPECT_TRUE(r.triples.contains(vt(1, 1, 5)));

    r = brute_solutions(KParam(2), BigInt(2));
    EXPECT_FALSE(r.triples.contains(vt(1, 1, 1)));
    for (const auto& t : r.triples) EXPECT_GT(m_of(t), 0);
    // values {1, 2}: (1,1,2) m=0, (1,2,2) m=-3, (2,2,2) m=-12, (1,1,1) m=0
    EXPECT_TRUE(r.triples.empty());

    r = brute_solutions(KParam(3), BigInt(109));
    EXPECT_TRUE(r.triples.contains(vt(1, 33, 109)));
    EXPECT_TRUE(r.triples.contains(vt(3, 10, 109)));
}

TEST(BruteSolutions, RejectsZeroBound) { EXPECT_THROW(brute_solutions(KParam(2), BigInt(0)), PreconditionError); }

TEST(BruteCensus, Examples) {
    auto r = brute_census(BigInt(8));
    EXPECT_EQ(r.triples, (TripleSet{vt(2, 2, 12)}));
    r = brute_census(BigInt(3));
    EXPECT_TRUE(r.triples.empty());
    r = brute_census(BigInt(2));
    EXPECT_EQ(r.triples, (TripleSet{vt(1, 1, 3)}));
    r = brute_census(BigInt(1));
    EXPECT_TRUE(r.triples.empty());
    r = brute_census(BigInt(2180));
    EXPECT_TRUE(r.triples.contains(vt(1, 33, 109)));
    EXPECT_TRUE(r.triples.contains(vt(3, 10, 109)));
    EXPECT_EQ(r.triples.size(), 14U);
    EXPECT_THROW(brute_census(BigInt(0)), PreconditionError);
}

TEST(CrossCheck, Examples) {
    const TripleSet s{vt(1, 1, 3), vt(2, 2, 12), vt(1, 2, 7)};
    auto rep = cross_check(s, s, "same");
    EXPECT_TRUE(rep.agrees());
    EXPECT_TRUE(rep.mismatches.empty());

    TripleSet fewer = s;
    fewer.erase(vt(2, 2, 12));
    rep = cross_check(s, fewer);
    ASSERT_EQ(rep.mismatches.size(), 1U);
    EXPECT_EQ(rep.mismatches[0].triple, vt(2, 2, 12));
    EXPECT_EQ(rep.mismatches[0].provenance, Provenance::missing_in_candidate);

    TripleSet more = s;
    more.insert(vt(5, 5, 5));
    rep = cross_check(s, more);
    ASSERT_EQ(rep.mismatches.size(), 1U);
    EXPECT_EQ(rep.mismatches[0].provenance, Provenance::extra_in_candidate);
    EXPECT_FALSE(rep.agrees());

    const auto j = to_json(rep);
    EXPECT_EQ(j["mismatches"][0]["provenance"], "extra_in_candidate");
    EXPECT_EQ(j["mismatches"][0]["triple"], nlohmann::ordered_json::parse(R"(["5","5","5"])"));
    EXPECT_EQ(j["solution_count"], 3);
}

TEST(CrossCheck, PellAcceptanceRun) {
    const KParam k(2);
    const auto brute = brute_solutions(k, kfib(k, 10));
    ASSERT_EQ(kfib(k, 10), 2378);
    EXPECT_TRUE(cross_check(brute.triples, classifier_values(k, 10)).agrees());
    const auto big = brute_solutions(k, BigInt(13860));
    EXPECT_TRUE(cross_check(big.triples, classifier_values(k, 12), "k=2 values<=13860").agrees());
}

TEST(CrossCheck, ClassifierMatchesBruteForce) {
    for (unsigned kv = 2; kv <= 6; ++kv) {
        const KParam k(kv);
        const auto brute = brute_solutions(k, kfib(k, 16));
        const auto rep = cross_check(brute.triples, classifier_values(k, 16));
        EXPECT_TRUE(rep.agrees()) << kv << " " << to_json(rep).dump();
    }
}

TEST(CrossCheck, CensusMatchesBruteForce) {
    for (long long m = 1; m <= 2000; ++m) {
        const auto brute = brute_census(BigInt(m));
        const auto rep = cross_check(brute.triples, census_set(m));
        ASSERT_TRUE(rep.agrees()) << m << " " << to_json(rep).dump();
    }
}

TEST(Budget, ExhaustedBudgetReportsSkip) {
    const Budget spent(std::chrono::duration<double>(-1.0));
    EXPECT_TRUE(spent.exhausted());
    EXPECT_TRUE(brute_solutions(KParam(2), BigInt(1000), spent).skipped);
    EXPECT_TRUE(brute_census(BigInt(500), spent).skipped);
    EXPECT_FALSE(Budget().exhausted());
    EXPECT_FALSE(brute_census(BigInt(500), Budget(std::chrono::duration<double>(60.0))).skipped);
}
