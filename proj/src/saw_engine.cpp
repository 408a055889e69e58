#include "saw/saw_engine.hpp"

#include <cmath>

#include "saw/detail/dfs.hpp"
#include "saw/errors.hpp"

namespace saw {

double nth_root(const BigCount& x, int n) {
    if (x <= 0) return 0.0;
    if (n <= 0) return 1.0;
    // log via the top 53 bits keeps huge counts finite
    const std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 1000) {
        const double xd = x.convert_to<double>();
        return n == 1 ? xd : std::pow(xd, 1.0 / n);
    }
    const std::size_t shift = bits - 64;
    BigCount top = x >> shift;
    const double lg = std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
    return std::exp(lg / n);
}

std::vector<double> WalkCounts::growth() const {
    std::vector<double> out;
    for (std::size_t n = 0; n < counts.size(); ++n) out.push_back(n == 0 ? 1.0 : nth_root(counts[n], static_cast<int>(n)));
    return out;
}

SlotFunction slot_function(const GraphHandle& g) {
    return [g](const VertexKey& v) { return g.neighbor_slots(v); };
}

SlotFunction slot_function(const QuotientGraph& q) {
    return [q](const VertexKey& v) { return q.out_slots(v); };
}

namespace {

struct CountPolicy {
    static constexpr bool kLeafShortcut = true;
    std::vector<std::uint64_t> counts;

    explicit CountPolicy(int n) : counts(n + 1, 0) {}
    bool push(int, int) { return true; }
    void pop(int, int) {}
    void record(int depth) { ++counts[depth]; }
    void leaf_slots(int depth, std::uint64_t free_slots) { counts[depth] += free_slots; }
};

// Enumerates on a compiled ball, retrying with shorter lengths when the node
// budget runs out.
WalkCounts enumerate(const SlotFunction& slots, const VertexKey& root, int n_max, const CountOptions& opts) {
    if (n_max < 0) throw ParameterError("n_max must be non-negative");
    if (opts.workers < 1) throw ParameterError("worker count must be at least 1");
    WalkCounts out;
    out.start = root;
    out.method = "enumeration";
    const LocalGraph lg = compile_ball(slots, root, n_max, opts.max_ball_vertices);
    int n = std::min(n_max, lg.radius);
    if (n < n_max) out.truncated = true;
    while (true) {
        detail::NodeBudget budget;
        budget.limit = opts.node_budget;
        auto parts = detail::partitioned_search<CountPolicy>(lg, n, opts.split_depth, opts.workers, budget,
                                                             [n] { return CountPolicy(n); });
        if (!budget.exceeded.load()) {
            out.counts.assign(n + 1, 0);
            for (const auto& p : parts) {
                for (int i = 0; i <= n; ++i) out.counts[i] += p.counts[i];
            }
            return out;
        }
        out.truncated = true;
        if (n == 0) {
            out.counts.assign(1, 1);
            return out;
        }
        --n;
    }
}

}  // namespace

WalkCounts count_saws(const GraphHandle& g, const VertexKey& v0, int n_max, const CountOptions& opts) {
    g.validate(v0);
    if (opts.strategy == CountOptions::Strategy::automatic && g.girth() == GraphHandle::kAcyclic &&
        g.is_simple()) {
        if (n_max < 0) throw ParameterError("n_max must be non-negative");
        // On a simple tree every non-backtracking walk is self-avoiding.
        WalkCounts out;
        out.graph_id = g.id();
        out.start = v0;
        out.method = "tree-formula";
        out.counts.push_back(1);
        BigCount c = g.degree();
        for (int n = 1; n <= n_max; ++n) {
            out.counts.push_back(c);
            c *= g.degree() - 1;
        }
        return out;
    }
    WalkCounts out = enumerate(slot_function(g), v0, n_max, opts);
    out.graph_id = g.id();
    return out;
}

WalkCounts count_directed_saws(const QuotientGraph& q, int n_max, const CountOptions& opts) {
    return count_directed_saws(q, q.base_orbit(), n_max, opts);
}

WalkCounts count_directed_saws(const QuotientGraph& q, const VertexKey& orbit, int n_max,
                               const CountOptions& opts) {
    q.representative(orbit);
    WalkCounts out = enumerate(slot_function(q), orbit, n_max, opts);
    out.graph_id = q.id();
    out.directed = true;
    return out;
}

std::vector<BigCount> count_walks(const SlotFunction& slots, const VertexKey& root, int n_max) {
    if (n_max < 0) throw ParameterError("n_max must be non-negative");
    const LocalGraph lg = compile_ball(slots, root, n_max, std::size_t{1} << 23);
    if (lg.radius < n_max) throw BudgetExceededError("ball too large for walk counting");
    // ways[v] = number of walks of the current length from the root to v
    std::vector<BigCount> ways(lg.size(), 0), next(lg.size());
    ways[0] = 1;
    std::vector<BigCount> out{1};
    for (int n = 1; n <= n_max; ++n) {
        std::fill(next.begin(), next.end(), BigCount(0));
        for (std::size_t v = 0; v < lg.size(); ++v) {
            if (ways[v] == 0) continue;
            for (auto t : lg.out(static_cast<int>(v))) next[t] += ways[v];
        }
        std::swap(ways, next);
        BigCount total = 0;
        for (auto& w : ways) total += w;
        out.push_back(total);
    }
    return out;
}

}  // namespace saw
