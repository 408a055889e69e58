#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "saw/errors.hpp"
#include "saw/graph.hpp"
#include "saw/quotient.hpp"
#include "saw/saw_engine.hpp"

using namespace saw;
using testing::same;
using testing::show;

TEST_CASE("SAW counts agree with the coordinate oracle") {
    struct Fixture {
        const char* name;
        oracle::Step step;
        int n;
    };
    const Fixture fixtures[] = {
        {"zd:2", oracle::z2, 10},
        {"ladder", oracle::ladder, 10},
        {"square-octagon", oracle::square_octagon, 10},
    };
    for (const auto& f : fixtures) {
        const auto g = catalog(f.name);
        const auto want = oracle::saws(f.step, {0, 0, 0}, f.n);
        const auto got = count_saws(g, g.origin(), f.n);
        CHECK_MESSAGE(same(got.counts, want), f.name << ": " << show(got.counts) << " vs " << show(want));
        CHECK_FALSE(got.truncated);
        CHECK(got.method == "enumeration");
    }
}

TEST_CASE("known initial terms") {
    const auto z2 = count_saws(catalog("zd:2"), catalog("zd:2").origin(), 10).counts;
    CHECK(z2[10] == 44100);
    const auto z3 = count_saws(catalog("zd:3"), catalog("zd:3").origin(), 5).counts;
    CHECK(z3[4] == 726);
    CHECK(z3[5] == 3534);
}

TEST_CASE("every start vertex of a transitive graph gives the same counts") {
    const auto g = catalog("square-octagon");
    const auto base = count_saws(g, g.origin(), 8).counts;
    for (const auto& v : ball(g, g.origin(), 2)) CHECK(count_saws(g, v, 8).counts == base);
}

TEST_CASE("regular tree closed form") {
    for (int d : {3, 4}) {
        const auto g = catalog("tree:" + std::to_string(d));
        const auto w = count_saws(g, g.origin(), 20);
        CHECK(w.method == "tree-formula");
        BigCount expect = d;
        for (int n = 1; n <= 20; ++n) {
            CHECK(w.counts[n] == expect);
            expect *= d - 1;
        }
        CountOptions opts;
        opts.strategy = CountOptions::Strategy::enumerate;
        const auto e = count_saws(g, g.origin(), 9, opts);
        CHECK(e.method == "enumeration");
        for (int n = 0; n <= 9; ++n) CHECK(e.counts[n] == w.counts[n]);
    }
}

TEST_CASE("parallel counting is deterministic") {
    const auto g = catalog("zd:2");
    CountOptions one, many;
    many.workers = 8;
    many.split_depth = 3;
    CHECK(count_saws(g, g.origin(), 11, one).counts == count_saws(g, g.origin(), 11, many).counts);
}

TEST_CASE("node budget truncates instead of failing") {
    const auto g = catalog("zd:2");
    CountOptions opts;
    opts.node_budget = 2000;
    const auto w = count_saws(g, g.origin(), 12, opts);
    CHECK(w.truncated);
    CHECK(w.n_max() < 12);
    const auto full = count_saws(g, g.origin(), w.n_max()).counts;
    CHECK(w.counts == full);
}

TEST_CASE("walk counts on a regular graph are powers of the degree") {
    const auto g = catalog("square-octagon");
    const auto w = count_walks(slot_function(g), g.origin(), 8);
    BigCount p = 1;
    for (int n = 0; n <= 8; ++n) {
        CHECK(w[n] == p);
        p *= 3;
    }
}

TEST_CASE("growth estimates") {
    CHECK(nth_root(BigCount(9), 2) == doctest::Approx(3.0));
    CHECK(nth_root(BigCount(3), 1) == 3.0);
    CHECK(nth_root(BigCount(0), 4) == 0.0);
    BigCount huge = 1;
    for (int i = 0; i < 2000; ++i) huge *= 3;
    CHECK(nth_root(huge, 2000) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(count_saws(catalog("zd:2"), VertexKey::lattice(1, {0, 0}), 2), InvalidVertexError);
}
