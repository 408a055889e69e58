#include "saw/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "saw/detail/dfs.hpp"
#include "saw/errors.hpp"

namespace saw {

double LowerBoundSequence::at(int n) const {
    if (n < 1 || n > n_max()) throw ParameterError("lower bound index " + std::to_string(n) + " out of range");
    return entries[n - 1].value;
}

namespace {

double parse_literal(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParameterError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v) || v < 0.0) throw ParameterError("invalid bound literal '" + s + "'");
    return v;
}

struct BridgePolicy {
    static constexpr bool kLeafShortcut = false;
    const std::vector<std::int64_t>* x1;
    std::vector<std::int64_t> running_max;
    std::vector<std::uint64_t> counts;
    int last = 0;

    BridgePolicy(const std::vector<std::int64_t>& x, int n) : x1(&x), running_max(n + 1, 0), counts(n + 1, 0) {}

    bool push(int v, int depth) {
        last = v;
        const std::int64_t x = (*x1)[v];
        running_max[depth] = depth == 0 ? x : std::max(running_max[depth - 1], x);
        return depth == 0 || x > 0;
    }
    void pop(int, int) {}
    void record(int depth) {
        if ((*x1)[last] == running_max[depth]) ++counts[depth];
    }
    void leaf_slots(int, std::uint64_t) {}
};

}  // namespace

Interval entry_interval(const LowerBoundEntry& e) {
    if (e.provenance == "bridge") return root_interval(BigCount(e.raw), e.source_n);
    if (e.provenance == "degree") {
        const double d = parse_literal(e.raw);
        return sqrt(Interval::point(d) - Interval::point(1.0));
    }
    if (e.provenance == "constant" || e.provenance == "exact") return Interval::point(parse_literal(e.raw));
    throw ParameterError("unknown lower-bound provenance '" + e.provenance + "'");
}

std::vector<BigCount> bridge_counts(int d, int n_max, const CountOptions& opts) {
    if (d < 1) throw ParameterError("bridge dimension must be at least 1");
    if (n_max < 0) throw ParameterError("n_max must be non-negative");
    const auto g = catalog("zd(" + std::to_string(d) + ")");
    const LocalGraph lg = compile_ball(slot_function(g), g.origin(), n_max, opts.max_ball_vertices);
    if (lg.radius < n_max) throw BudgetExceededError("ball too large for bridge enumeration");
    std::vector<std::int64_t> x1(lg.size());
    for (std::size_t v = 0; v < lg.size(); ++v) x1[v] = lg.keys[v].offset()[0];
    detail::NodeBudget budget;
    budget.limit = opts.node_budget;
    auto parts = detail::partitioned_search<BridgePolicy>(lg, n_max, opts.split_depth, opts.workers, budget,
                                                          [&] { return BridgePolicy(x1, n_max); });
    if (budget.exceeded.load()) throw BudgetExceededError("node budget exhausted during bridge enumeration");
    std::vector<BigCount> out(n_max + 1, 0);
    for (const auto& p : parts) {
        for (int i = 0; i <= n_max; ++i) out[i] += p.counts[i];
    }
    return out;
}

LowerBoundSequence bridge_bound(int d, int n_max, const CountOptions& opts) {
    const auto beta = bridge_counts(d, n_max, opts);
    LowerBoundSequence seq;
    seq.graph_id = "zd(" + std::to_string(d) + ")";
    for (int n = 1; n <= n_max; ++n) {
        LowerBoundEntry e;
        e.provenance = "bridge";
        e.raw = beta[n].str();
        e.source_n = n;
        e.value = entry_interval(e).lo;
        seq.entries.push_back(std::move(e));
    }
    return seq;
}

double degree_bound(int degree) {
    if (degree < 2) throw ParameterError("degree bound needs degree >= 2");
    return std::sqrt(static_cast<double>(degree - 1));
}

LowerBoundSequence degree_bound(const GraphHandle& g, int n_max) {
    if (!g.is_simple()) throw ParameterError("degree bound refused: " + g.id() + " is not a simple graph");
    degree_bound(g.degree());
    LowerBoundSequence seq;
    seq.graph_id = g.id();
    for (int n = 1; n <= n_max; ++n) {
        LowerBoundEntry e;
        e.provenance = "degree";
        e.raw = std::to_string(g.degree());
        e.source_n = n;
        e.value = entry_interval(e).lo;
        seq.entries.push_back(std::move(e));
    }
    return seq;
}

LowerBoundSequence constant_bound(const std::string& graph_id, const std::string& literal, int n_max,
                                  const std::string& provenance) {
    if (provenance != "constant" && provenance != "exact") throw ParameterError("bad provenance " + provenance);
    const double v = parse_literal(literal);
    LowerBoundSequence seq;
    seq.graph_id = graph_id;
    for (int n = 1; n <= n_max; ++n) seq.entries.push_back({v, provenance, literal, n});
    return seq;
}

LowerBoundSequence monotone_regularize(const LowerBoundSequence& seq) {
    LowerBoundSequence out = seq;
    for (std::size_t i = 1; i < out.entries.size(); ++i) {
        if (out.entries[i].value < out.entries[i - 1].value) out.entries[i] = out.entries[i - 1];
    }
    return out;
}

std::vector<double> monotone_regularize(const std::vector<double>& seq) {
    std::vector<double> out = seq;
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::max(out[i], out[i - 1]);
    return out;
}

}  // namespace saw
