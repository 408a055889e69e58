// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <unistd.h>

#include "oracles.hpp"
#include "saw/cli.hpp"
#include "saw/events.hpp"
#include "saw/graph.hpp"
#include "saw/isomorphism.hpp"
#include "saw/quotient.hpp"
#include "saw/saw_engine.hpp"

using namespace saw;

namespace {

constexpr double kPhi = 1.6180339887498949;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::ostringstream digest;  // everything computed, for the determinism check

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "failed: ";
            else detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void digest(Outcome& o, const std::vector<BigCount>& v) {
    for (const auto& x : v) o.digest << x << ',';
    o.digest << ';';
}

QuotientGraph sub(const char* graph, IntMatrix rows) {
    return build_quotient(catalog(graph), SubgroupAction::sublattice(std::move(rows)));
}

std::vector<QuotientGraph> sublattice_fixtures() {
    std::vector<QuotientGraph> out;
    out.push_back(sub("zd:2", {{2, 0}, {0, 2}}));
    out.push_back(sub("zd:2", {{3, 0}, {0, 1}}));
    out.push_back(sub("zd:2", {{3, 0}}));
    for (int k = 1; k <= 5; ++k) out.push_back(sub("zd:1", {{k}}));
    out.push_back(sub("ladder", {{2}}));
    out.push_back(sub("square-octagon", {{1, 1}}));
    return out;
}

Outcome ladder_constant(const CountOptions& opts) {
    Outcome o;
    const auto g = catalog("ladder");
    const auto t0 = std::chrono::steady_clock::now();
    const auto w = count_saws(g, g.origin(), 24, opts);
    const double secs = seconds_since(t0);
    digest(o, w.counts);
    o.require(w.n_max() == 24 && !w.truncated, "counts up to 24");
    const auto a = w.growth();
    double min_a = 1e9;
    for (int n = 1; n <= w.n_max(); ++n) min_a = std::fmin(min_a, a[n]);
    o.require(min_a >= kPhi, "a_n >= phi");
    const double ratio = w.counts[24].convert_to<double>() / w.counts[23].convert_to<double>();
    o.require(std::fabs(ratio - kPhi) < 0.02, "sigma_24/sigma_23 within 0.02 of phi");
    o.require(secs < 30.0, "runtime under 30 s");
    o.detail << (o.pass ? "" : " | ") << "min a_n = " << min_a << ", sigma_24/sigma_23 = " << ratio << ", " << secs
             << " s";
    return o;
}

Outcome trees(const CountOptions& opts) {
    Outcome o;
    for (int d : {3, 4}) {
        const auto g = catalog("tree:" + std::to_string(d));
        const auto w = count_saws(g, g.origin(), 20, opts);
        digest(o, w.counts);
        BigCount expect = d;
        for (int n = 1; n <= 20; ++n) {
            o.require(w.counts[n] == expect, "tree(" + std::to_string(d) + ") sigma_" + std::to_string(n));
            expect *= d - 1;
        }
        // the same counts by plain enumeration
        CountOptions enumerate = opts;
        enumerate.strategy = CountOptions::Strategy::enumerate;
        const int n_enum = d == 3 ? 20 : 12;
        const auto e = count_saws(g, g.origin(), n_enum, enumerate);
        for (int n = 0; n <= n_enum; ++n) o.require(e.counts[n] == w.counts[n], "enumeration matches closed form");
    }
    const auto q = build_quotient(catalog("tree-with-end:3"), SubgroupAction::named("child-swap"));
    const auto d = count_directed_saws(q, 20, opts);
    digest(o, d.counts);
    for (int n = 1; n <= 20; ++n) o.require(d.counts[n] == (BigCount(1) << n) + 1, "directed sigma_n = 2^n + 1");
    const double a20 = nth_root(d.counts[20], 20);
    o.require(std::fabs(a20 - 2.0) < 0.05, "|a_20 - 2| < 0.05");
    o.detail << (o.pass ? "" : " | ") << "tree(3), tree(4) closed form to n = 20; directed a_20 = " << a20;
    return o;
}

Outcome oracle_equivalence(const CountOptions& opts) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::pair<const char*, oracle::Step> fixtures[] = {
        {"zd:2", oracle::z2}, {"ladder", oracle::ladder}, {"square-octagon", oracle::square_octagon}};
    for (const auto& [name, step] : fixtures) {
        const auto g = catalog(name);
        const auto w = count_saws(g, g.origin(), 10, opts);
        digest(o, w.counts);
        const auto want = oracle::saws(step, {0, 0, 0}, 10);
        bool same = w.counts.size() == want.size();
        for (std::size_t n = 0; same && n < want.size(); ++n) same = w.counts[n] == want[n];
        o.require(same, std::string(name) + " differs from the oracle");
    }
    const double secs = seconds_since(t0);
    o.require(secs < 60.0, "runtime under 60 s");
    o.detail << (o.pass ? "" : " | ") << "Z^2, ladder, square-octagon n <= 10 in " << secs << " s";
    return o;
}

Outcome quotient_soundness(const CountOptions&) {
    Outcome o;
    const auto z2 = catalog("zd:2");
    for (const IntMatrix& rows : {IntMatrix{{2, 0}, {0, 2}}, IntMatrix{{3, 0}, {0, 1}}}) {
        const auto a = SubgroupAction::sublattice(rows);
        const bool ok = check_representative_independence(z2, a, build_quotient(z2, a), 6);
        o.digest << ok;
        o.require(ok, "representative independence on " + a.describe());
    }
    int symmetric = 0;
    const auto fixtures = sublattice_fixtures();
    for (const auto& q : fixtures) {
        const bool s = check_symmetry(q);
        symmetric += s;
        o.require(s, q.id() + " not symmetric");
    }
    const auto t = build_quotient(catalog("tree-with-end:3"), SubgroupAction::named("child-swap"));
    o.require(!check_symmetry(t), "tree-with-end quotient reported symmetric");
    std::string types;
    const int expect[] = {1, 2, 3, 3, 3};
    for (int k = 1; k <= 5; ++k) {
        const auto r = classify_type(sub("zd:1", {{k}}));
        types += std::to_string(r.type);
        o.require(r.type == expect[k - 1], "type of Z/" + std::to_string(k));
    }
    o.digest << symmetric << types;
    o.detail << (o.pass ? "" : " | ") << "independence r=6 on 2 quotients, " << symmetric << "/" << fixtures.size()
             << " sublattice quotients symmetric, tree-with-end not, Z/k types " << types;
    return o;
}

Outcome walk_bijection(const CountOptions&) {
    Outcome o;
    auto fixtures = sublattice_fixtures();
    fixtures.push_back(build_quotient(catalog("tree-with-end:3"), SubgroupAction::named("child-swap")));
    fixtures.push_back(build_quotient(catalog("tree-with-end:4"), SubgroupAction::named("child-swap:2")));
    for (const auto& q : fixtures) {
        const auto& g = q.graph();
        const auto a = count_walks(slot_function(g), g.origin(), 8);
        const auto b = count_walks(slot_function(q), q.base_orbit(), 8);
        digest(o, b);
        o.require(a == b, q.id());
    }
    o.detail << (o.pass ? "" : " | ") << fixtures.size() << " quotients, n <= 8";
    return o;
}

Outcome strictness(const CountOptions& opts) {
    Outcome o;
    const auto z2 = catalog("zd:2");
    const auto base = count_saws(z2, z2.origin(), 12, opts);
    const auto dir = count_directed_saws(sub("zd:2", {{2, 0}, {0, 2}}), 12, opts);
    digest(o, base.counts);
    digest(o, dir.counts);
    o.require(dir.counts[12] < base.counts[12], "directed sigma_12 < sigma_12");
    const auto tri = augment(z2, z2.origin(), VertexKey::lattice(0, {1, 1}));
    const auto aug = count_saws(tri, tri.origin(), 12, opts);
    digest(o, aug.counts);
    o.require(aug.counts[1] == 6, "sigma_1 = 6 on Z^2 + diagonal");
    for (int n = 1; n <= 12; ++n) o.require(aug.counts[n] > base.counts[n], "augmented > Z^2 at n = " + std::to_string(n));
    o.detail << (o.pass ? "" : " | ") << "sigma_12: quotient " << dir.counts[12] << " < " << base.counts[12]
             << " < augmented " << aug.counts[12];
    return o;
}

Outcome relator_isomorphism(const CountOptions& opts) {
    Outcome o;
    const auto so = catalog("square-octagon");
    const auto q = build_quotient(so, SubgroupAction::sublattice({{1, 1}}));
    const auto simple = derive_undirected(q, false);
    const auto lad = catalog("ladder");
    const bool iso = balls_isomorphic(simple, simple.origin(), lad, lad.origin(), 6);
    o.digest << iso;
    o.require(iso, "radius-6 balls not isomorphic");
    const auto w = count_saws(so, so.origin(), 24, opts);
    digest(o, w.counts);
    const auto a = w.growth();
    double min_a = 1e9;
    for (int n = 1; n <= w.n_max(); ++n) min_a = std::fmin(min_a, a[n]);
    o.require(min_a >= 1.804, "a_n(square-octagon) >= 1.804");
    o.detail << (o.pass ? "" : " | ") << "simple quotient ~ ladder on radius-6 balls; min a_n (n <= " << w.n_max()
             << ") = " << min_a;
    return o;
}

Outcome certificate_pipeline(const CountOptions& opts) {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / ("saw-acceptance-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto path = (dir / "cert.json").string();
    std::ostringstream out, err;
    const int rc = cli::run({"ratio", "--graph", "zd:1", "--sublattice", "3", "--mu-exact", "1", "--budget", "20",
                             "--workers", std::to_string(opts.workers), "--deterministic", "--output", path},
                            out, err);
    o.require(rc == 0, "ratio exit code " + std::to_string(rc) + " " + err.str());
    if (rc != 0) return o;
    std::ifstream in(path);
    const auto cert = nlohmann::json::parse(in);
    o.digest << cert.dump();
    const double R = cert["parameters"]["R_final"].get<double>();
    o.require(cert["status"] == "certified", "status certified");
    o.require(R < 1.0, "R_final < 1");
    std::ostringstream vout, verr;
    const int vrc = cli::run({"verify", "--certificate", path}, vout, verr);
    const auto rep = nlohmann::json::parse(vout.str());
    o.require(vrc == 0 && rep["certified"] == true, "verify replay");
    std::filesystem::remove_all(dir);
    o.detail << (o.pass ? "" : " | ") << "Z/3 certified, R_final = " << std::setprecision(17) << R << ", "
             << rep["checks"].size() << " inequalities replayed";
    return o;
}

Outcome event_properties(const CountOptions& opts) {
    Outcome o;
    struct Fixture {
        QuotientGraph q;
        int radius;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({sub("zd:1", {{3}}), 0});
    fixtures.push_back({sub("zd:2", {{2, 0}, {0, 2}}), 0});
    fixtures.push_back({sub("zd:2", {{3, 0}}), 20});
    fixtures.push_back({sub("square-octagon", {{1, 1}}), 20});
    int checked = 0;
    for (const auto& f : fixtures) {
        const auto t = classify_type(f.q);
        const auto fam = build_cycle_family(f.q, t, f.radius);
        const auto e1 = count_avoiding(f.q, fam, 1, 16, opts).counts;
        digest(o, e1);
        for (int n = 1; n <= 16; ++n) o.require(e1[n] == 0, f.q.id() + " E_1 at n = " + std::to_string(n));
        for (int k = 1; k <= t.length; ++k) {
            const auto c = count_avoiding(f.q, fam, k, 16, opts).counts;
            digest(o, c);
            for (int m = 1; m <= 8; ++m) {
                for (int n = 1; n <= 8; ++n) {
                    o.require(c[m + n] <= c[m] * c[n], f.q.id() + " submultiplicativity");
                    ++checked;
                }
            }
        }
        std::vector<int> ks, ms;
        for (int k = 1; k <= t.length; ++k) ks.push_back(k);
        for (int m = 0; m <= 8; ++m) ms.push_back(m);
        ms.push_back(kWholeWalk);
        const auto p = event_profile(f.q, fam, ks, ms, 8, opts);
        for (int n = 0; n <= 8; ++n) {
            for (int k : ks) {
                for (std::size_t mi = 0; mi < ms.size(); ++mi) {
                    for (int r = 0; r <= 8; ++r) {
                        const auto here = p.count(n, k, ms[mi], r);
                        o.digest << here << ',';
                        o.require(here <= p.count(n, k, ms[mi], r + 1), f.q.id() + " monotone in r");
                        if (mi + 1 < ms.size()) o.require(p.count(n, k, ms[mi + 1], r) <= here, f.q.id() + " monotone in m");
                        ++checked;
                    }
                }
            }
        }
    }
    o.detail << (o.pass ? "" : " | ") << fixtures.size() << " quotients, " << checked << " grid checks";
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome(const CountOptions&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "ladder connective constant", ladder_constant},
        {2, "regular tree closed form and tree-with-end quotient", trees},
        {3, "oracle equivalence", oracle_equivalence},
        {4, "quotient soundness", quotient_soundness},
        {5, "walk-count bijection", walk_bijection},
        {6, "strict-inequality evidence", strictness},
        {7, "relator-quotient isomorphism", relator_isomorphism},
        {8, "certificate pipeline", certificate_pipeline},
        {9, "event-count properties", event_properties},
    };
    CountOptions single, parallel;
    single.workers = 1;
    parallel.workers = 8;

    bool all = true;
    std::vector<std::string> digests;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run(single);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        all = all && o.pass;
        digests.push_back(o.digest.str());
        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << c.title << " ("
                  << o.detail.str() << ")" << std::endl;
    }

    Outcome det;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string again;
        try {
            again = criteria[i].run(parallel).digest.str();
        } catch (const std::exception& e) {
            again = std::string("exception: ") + e.what();
        }
        det.require(!digests[i].empty() && again == digests[i], "criterion " + std::to_string(criteria[i].id));
    }
    all = all && det.pass;
    std::cout << "criterion 10: " << (det.pass ? "PASS" : "FAIL") << " - determinism across 1 and 8 workers ("
              << (det.pass ? "criteria 1-9 identical" : det.detail.str()) << ")" << std::endl;
    return all ? 0 : 1;
}
