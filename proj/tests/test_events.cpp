#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "saw/errors.hpp"
#include "saw/events.hpp"
#include "saw/quotient.hpp"

using namespace saw;

namespace {

struct Setup {
    QuotientGraph q;
    CycleFamily family;
};

Setup setup(const char* graph, IntMatrix rows, int radius) {
    auto q = build_quotient(catalog(graph), SubgroupAction::sublattice(std::move(rows)));
    auto t = classify_type(q);
    auto f = build_cycle_family(q, t, radius);
    return {std::move(q), std::move(f)};
}

}  // namespace

TEST_CASE("cycle families") {
    const auto z3 = setup("zd:1", {{3}}, 0);
    CHECK(z3.family.length == 3);
    for (const auto& [root, cycles] : z3.family.cycles) {
        REQUIRE(cycles.size() == 1);
        CHECK(cycles[0].size() == 3);
    }
    const auto z22 = setup("zd:2", {{2, 0}, {0, 2}}, 0);
    CHECK(z22.family.length == 2);
    for (const auto& [root, cycles] : z22.family.cycles) CHECK(cycles.size() == 2);
}

TEST_CASE("event histograms on Z/k agree with the oracle") {
    for (int k : {3, 4, 5}) {
        const auto s = setup("zd:1", {{k}}, 0);
        std::vector<int> ks;
        for (int need = 1; need <= k; ++need) ks.push_back(need);
        const std::vector<int> ms{0, 1, 2, kWholeWalk};
        const auto p = event_profile(s.q, s.family, ks, ms, 8);
        for (int need : ks) {
            for (int m : ms) {
                const auto h = oracle::cycle_events(k, need, m, 8);
                for (int n = 0; n <= 8; ++n) {
                    for (int r = 0; r <= n + 1; ++r) {
                        std::uint64_t want = 0;
                        for (int c = 0; c <= r; ++c) want += h[n][c];
                        CHECK_MESSAGE(p.count(n, need, m, r) == want, "k=" << k << " need=" << need << " m=" << m
                                                                             << " n=" << n << " r=" << r);
                    }
                }
            }
        }
    }
}

TEST_CASE("single pattern evaluation") {
    const auto s = setup("zd:1", {{3}}, 0);
    const auto o = [&](int x) { return s.q.orbit_of(VertexKey::lattice(0, {x})); };
    CHECK(event_occurrences({o(0), o(1)}, s.family, 3, kWholeWalk) == 0);
    CHECK(event_occurrences({o(0), o(1), o(2)}, s.family, 3, kWholeWalk) == 3);
    CHECK(event_occurrences({o(0), o(1), o(2)}, s.family, 3, 1) == 1);
    CHECK(event_occurrences({o(0), o(1), o(2)}, s.family, 2, 1) == 3);
}

TEST_CASE("E_1 always occurs at the start") {
    for (const auto& s : {setup("zd:1", {{3}}, 0), setup("zd:2", {{2, 0}, {0, 2}}, 0), setup("zd:2", {{3, 0}}, 12),
                          setup("square-octagon", {{1, 1}}, 12)}) {
        const auto w = count_avoiding(s.q, s.family, 1, 8);
        CHECK(w.counts[0] == 0);
        for (int n = 1; n <= 8; ++n) CHECK(w.counts[n] == 0);
    }
}

TEST_CASE("avoidance counts are submultiplicative") {
    for (const auto& s : {setup("zd:2", {{3, 0}}, 20), setup("square-octagon", {{1, 1}}, 20)}) {
        for (int k = 2; k <= s.family.length; ++k) {
            const auto c = count_avoiding(s.q, s.family, k, 16).counts;
            for (int m = 1; m <= 8; ++m) {
                for (int n = 1; n <= 8; ++n) CHECK(c[m + n] <= c[m] * c[n]);
            }
        }
    }
}

TEST_CASE("histogram counts are monotone in r and m") {
    const auto s = setup("zd:2", {{3, 0}}, 10);
    const std::vector<int> ks{2, 3};
    const std::vector<int> ms{0, 1, 2, 3, 4, 5, 6, 7, 8, kWholeWalk};
    const auto p = event_profile(s.q, s.family, ks, ms, 8);
    for (int n = 0; n <= 8; ++n) {
        for (int k : ks) {
            for (std::size_t mi = 0; mi < ms.size(); ++mi) {
                for (int r = 0; r <= n; ++r) CHECK(p.count(n, k, ms[mi], r) <= p.count(n, k, ms[mi], r + 1));
                for (int r = 0; r <= n + 1; ++r) {
                    if (mi + 1 < ms.size()) CHECK(p.count(n, k, ms[mi + 1], r) <= p.count(n, k, ms[mi], r));
                }
            }
            // everything counted once r exceeds the possible number of steps
            CHECK(p.count(n, k, 0, n + 1) == p.count(n, k, kWholeWalk, n + 1));
        }
    }
}

TEST_CASE("pruned avoidance matches the histogram") {
    const auto s = setup("square-octagon", {{1, 1}}, 12);
    const int ell = s.family.length;
    const auto p = event_profile(s.q, s.family, {ell}, {kWholeWalk}, 9);
    const auto w = count_avoiding(s.q, s.family, ell, 9);
    for (int n = 0; n <= 9; ++n) CHECK(w.counts[n] == p.count(n, ell, kWholeWalk, 0));
    CountOptions many;
    many.workers = 8;
    CHECK(count_avoiding(s.q, s.family, ell, 9, many).counts == w.counts);
}

TEST_CASE("parameters are validated") {
    const auto s = setup("zd:1", {{3}}, 0);
    CHECK_THROWS_AS(count_avoiding(s.q, s.family, 0, 4), ParameterError);
    CHECK_THROWS_AS(count_avoiding(s.q, s.family, 4, 4), ParameterError);
    const auto p = event_profile(s.q, s.family, {3}, {0}, 3);
    CHECK_THROWS_AS(p.count(3, 2, 0, 0), ParameterError);
    CHECK_THROWS_AS(p.lambda_upper(3, 2), ParameterError);
}
