#include "saw/events.hpp"

#include <algorithm>
#include <memory>
#include <set>

#include "saw/detail/dfs.hpp"
#include "saw/errors.hpp"

namespace saw {

std::vector<std::vector<VertexKey>> cycles_at(const QuotientGraph& q, int length, const VertexKey& root) {
    const auto& g = q.graph();
    const VertexKey start = q.representative(root);
    std::set<std::vector<VertexKey>> found;
    std::vector<VertexKey> path{start};
    std::vector<VertexKey> orbit_path{root};
    // SAWs of G of the given length from the representative ending in its orbit.
    auto dfs = [&](auto&& self, int depth) -> void {
        const VertexKey here = path.back();
        if (depth == length) {
            if (orbit_path.back() == root) {
                std::vector<VertexKey> members(orbit_path.begin(), orbit_path.end() - 1);
                std::sort(members.begin(), members.end());
                members.erase(std::unique(members.begin(), members.end()), members.end());
                found.insert(std::move(members));
            }
            return;
        }
        for (auto& t : g.neighbor_slots(here)) {
            if (std::find(path.begin(), path.end(), t) != path.end()) continue;
            path.push_back(t);
            orbit_path.push_back(q.orbit_of(t));
            self(self, depth + 1);
            path.pop_back();
            orbit_path.pop_back();
        }
    };
    dfs(dfs, 0);
    return {found.begin(), found.end()};
}

CycleFamily build_cycle_family(const QuotientGraph& q, const TypeReport& report, int radius) {
    CycleFamily fam;
    fam.length = report.length;
    fam.report = report;
    if (q.finite()) {
        for (const auto& o : q.orbits()) fam.cycles[o] = cycles_at(q, fam.length, o);
    } else {
        const LocalGraph lg = compile_ball(slot_function(q), q.base_orbit(), std::max(0, radius), 1u << 20);
        for (const auto& o : lg.keys) fam.cycles[o] = cycles_at(q, fam.length, o);
    }
    return fam;
}

int event_occurrences(const std::vector<VertexKey>& walk, const CycleFamily& family, int k, int m) {
    const int n = static_cast<int>(walk.size()) - 1;
    int occurrences = 0;
    for (int j = 0; j <= n; ++j) {
        const int lo = m == kWholeWalk ? 0 : std::max(0, j - m);
        const int hi = m == kWholeWalk ? n : std::min(n, j + m);
        auto it = family.cycles.find(walk[j]);
        if (it == family.cycles.end()) continue;
        bool occurs = false;
        for (const auto& cyc : it->second) {
            int visited = 0;
            for (const auto& x : cyc) {
                for (int i = lo; i <= hi; ++i) {
                    if (walk[i] == x) {
                        ++visited;
                        break;
                    }
                }
            }
            if (visited >= k) {
                occurs = true;
                break;
            }
        }
        occurrences += occurs;
    }
    return occurrences;
}

namespace {

// The family restricted to a compiled ball, in local indices.
struct LocalFamily {
    std::vector<int> root;
    std::vector<std::vector<int>> members;
    std::vector<std::vector<int>> containing;  // per vertex: instances with it as member
    std::vector<std::vector<int>> rooted;      // per vertex: instances rooted there
};

std::shared_ptr<const LocalFamily> localize(const LocalGraph& lg, const QuotientGraph& q,
                                            const CycleFamily& fam) {
    auto lf = std::make_shared<LocalFamily>();
    lf->containing.resize(lg.size());
    lf->rooted.resize(lg.size());
    for (std::size_t v = 0; v < lg.size(); ++v) {
        auto it = fam.cycles.find(lg.keys[v]);
        const auto cycles = it != fam.cycles.end() ? it->second : cycles_at(q, fam.length, lg.keys[v]);
        for (const auto& cyc : cycles) {
            const int id = static_cast<int>(lf->root.size());
            lf->root.push_back(static_cast<int>(v));
            std::vector<int> mem;
            for (const auto& x : cyc) {
                const int i = lg.find(x);
                if (i < 0) continue;
                mem.push_back(i);
                lf->containing[i].push_back(id);
            }
            lf->members.push_back(std::move(mem));
            lf->rooted[v].push_back(id);
        }
    }
    return lf;
}

void check_k(const CycleFamily& fam, int k) {
    if (k < 1 || k > fam.length) {
        throw ParameterError("event threshold k=" + std::to_string(k) + " must lie in [1, " +
                             std::to_string(fam.length) + "]");
    }
}

void check_m(int m) {
    if (m < 0 && m != kWholeWalk) throw ParameterError("window m must be non-negative");
}

struct AvoidPolicy {
    static constexpr bool kLeafShortcut = false;
    std::shared_ptr<const LocalFamily> lf;
    int k = 1;
    std::vector<std::uint8_t> on_walk;
    std::vector<int> hits;
    std::vector<std::uint64_t> counts;

    AvoidPolicy(std::shared_ptr<const LocalFamily> f, int k_, std::size_t vertices, int n)
        : lf(std::move(f)), k(k_), on_walk(vertices, 0), hits(lf->root.size(), 0), counts(n + 1, 0) {}

    bool push(int v, int) {
        on_walk[v] = 1;
        bool ok = true;
        for (int id : lf->containing[v]) {
            if (++hits[id] >= k && on_walk[lf->root[id]]) ok = false;
        }
        return ok;
    }
    void pop(int v, int) {
        for (int id : lf->containing[v]) --hits[id];
        on_walk[v] = 0;
    }
    void record(int depth) { ++counts[depth]; }
    void leaf_slots(int, std::uint64_t) {}
};

struct HistogramPolicy {
    static constexpr bool kLeafShortcut = false;
    std::shared_ptr<const LocalFamily> lf;
    const std::vector<int>* ks;
    const std::vector<int>* ms;
    std::vector<int> path;
    std::vector<int> pos;
    // hist[n][ki][mi][c]
    std::vector<std::vector<std::vector<std::vector<std::uint64_t>>>> hist;
    std::vector<int> best;

    HistogramPolicy(std::shared_ptr<const LocalFamily> f, const std::vector<int>& ks_, const std::vector<int>& ms_,
                    std::size_t vertices, int n)
        : lf(std::move(f)), ks(&ks_), ms(&ms_), path(n + 1, -1), pos(vertices, -1) {
        hist.resize(n + 1);
        for (int len = 0; len <= n; ++len) {
            hist[len].assign(ks_.size(), std::vector<std::vector<std::uint64_t>>(
                                             ms_.size(), std::vector<std::uint64_t>(len + 2, 0)));
        }
    }

    bool push(int v, int depth) {
        path[depth] = v;
        pos[v] = depth;
        return true;
    }
    void pop(int v, int depth) {
        pos[v] = -1;
        path[depth] = -1;
    }
    void leaf_slots(int, std::uint64_t) {}

    void record(int len) {
        for (std::size_t mi = 0; mi < ms->size(); ++mi) {
            const int m = (*ms)[mi];
            std::vector<int> occ(ks->size(), 0);
            for (int j = 0; j <= len; ++j) {
                const int lo = m == kWholeWalk ? 0 : std::max(0, j - m);
                const int hi = m == kWholeWalk ? len : std::min(len, j + m);
                int top = 0;
                for (int id : lf->rooted[path[j]]) {
                    int c = 0;
                    for (int x : lf->members[id]) {
                        const int p = pos[x];
                        c += (p >= lo && p <= hi);
                    }
                    top = std::max(top, c);
                }
                for (std::size_t ki = 0; ki < ks->size(); ++ki) occ[ki] += (top >= (*ks)[ki]);
            }
            for (std::size_t ki = 0; ki < ks->size(); ++ki) ++hist[len][ki][mi][occ[ki]];
        }
    }
};

LocalGraph quotient_ball(const QuotientGraph& q, int n, const CountOptions& opts) {
    LocalGraph lg = compile_ball(slot_function(q), q.base_orbit(), n, opts.max_ball_vertices);
    if (lg.radius < n) throw BudgetExceededError("quotient ball exceeds the vertex cap");
    return lg;
}

}  // namespace

WalkCounts count_avoiding(const QuotientGraph& q, const CycleFamily& family, int k, int n_max,
                          const CountOptions& opts) {
    check_k(family, k);
    if (n_max < 0) throw ParameterError("n_max must be non-negative");
    const LocalGraph lg = quotient_ball(q, n_max, opts);
    auto lf = localize(lg, q, family);
    detail::NodeBudget budget;
    budget.limit = opts.node_budget;
    auto parts = detail::partitioned_search<AvoidPolicy>(lg, n_max, opts.split_depth, opts.workers, budget, [&] {
        return AvoidPolicy(lf, k, lg.size(), n_max);
    });
    if (budget.exceeded.load()) throw BudgetExceededError("node budget exhausted during event counting");
    WalkCounts out;
    out.graph_id = q.id();
    out.start = q.base_orbit();
    out.directed = true;
    out.method = "enumeration";
    out.counts.assign(n_max + 1, 0);
    for (const auto& p : parts) {
        for (int i = 0; i <= n_max; ++i) out.counts[i] += p.counts[i];
    }
    return out;
}

EventProfile event_profile(const QuotientGraph& q, const CycleFamily& family, const std::vector<int>& ks,
                           const std::vector<int>& ms, int n_max, const CountOptions& opts) {
    for (int k : ks) check_k(family, k);
    for (int m : ms) check_m(m);
    if (n_max < 0) throw ParameterError("n_max must be non-negative");
    const LocalGraph lg = quotient_ball(q, n_max, opts);
    auto lf = localize(lg, q, family);
    detail::NodeBudget budget;
    budget.limit = opts.node_budget;
    auto parts = detail::partitioned_search<HistogramPolicy>(lg, n_max, opts.split_depth, opts.workers, budget, [&] {
        return HistogramPolicy(lf, ks, ms, lg.size(), n_max);
    });
    if (budget.exceeded.load()) throw BudgetExceededError("node budget exhausted during event counting");
    EventProfile prof;
    prof.ks = ks;
    prof.ms = ms;
    prof.n_max = n_max;
    prof.hist.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        prof.hist[n].assign(ks.size(), std::vector<std::vector<BigCount>>(ms.size(), std::vector<BigCount>(n + 2, 0)));
        for (const auto& p : parts) {
            for (std::size_t ki = 0; ki < ks.size(); ++ki) {
                for (std::size_t mi = 0; mi < ms.size(); ++mi) {
                    for (int c = 0; c <= n + 1; ++c) prof.hist[n][ki][mi][c] += p.hist[n][ki][mi][c];
                }
            }
        }
    }
    return prof;
}

BigCount EventProfile::count(int n, int k, int m, int r) const {
    if (n < 0 || n > n_max) throw ParameterError("n out of profile range");
    auto ki = std::find(ks.begin(), ks.end(), k);
    auto mi = std::find(ms.begin(), ms.end(), m);
    if (ki == ks.end() || mi == ms.end()) throw ParameterError("(k, m) not on the profile grid");
    if (r < 0) throw ParameterError("r must be non-negative");
    const auto& h = hist[n][ki - ks.begin()][mi - ms.begin()];
    BigCount total = 0;
    for (int c = 0; c <= std::min(r, n + 1); ++c) total += h[c];
    return total;
}

double EventProfile::lambda_upper(int k, int n) const {
    if (n < 1) throw ParameterError("lambda_upper needs n >= 1");
    return nth_root(count(n, k, kWholeWalk, 0), n);
}

BigCount count_with_events(const QuotientGraph& q, const CycleFamily& family, int n, int k, int m, int r,
                           const CountOptions& opts) {
    if (r < 0) throw ParameterError("r must be non-negative");
    return event_profile(q, family, {k}, {m}, n, opts).count(n, k, m, r);
}

double lambda_upper(const QuotientGraph& q, const CycleFamily& family, int k, int n, const CountOptions& opts) {
    if (n < 1) throw ParameterError("lambda_upper needs n >= 1");
    return nth_root(count_avoiding(q, family, k, n, opts).counts[n], n);
}

}  // namespace saw
