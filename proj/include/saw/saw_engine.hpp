#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "saw/graph.hpp"
#include "saw/local_graph.hpp"
#include "saw/quotient.hpp"

namespace saw {

using BigCount = boost::multiprecision::cpp_int;

// x^{1/n} for an exact count; 0 for a zero count.
double nth_root(const BigCount& x, int n);

struct WalkCounts {
    std::string graph_id;
    VertexKey start;
    bool directed = false;
    std::vector<BigCount> counts;  // counts[n] for n = 0..N
    bool truncated = false;        // fewer lengths than requested
    std::string method;            // "enumeration" or "tree-formula"

    int n_max() const { return static_cast<int>(counts.size()) - 1; }
    // a_n = counts[n]^{1/n} for n >= 1; a_0 is reported as 1.
    std::vector<double> growth() const;
};

struct CountOptions {
    enum class Strategy { automatic, enumerate };

    int workers = 1;
    int split_depth = 2;
    std::uint64_t node_budget = ~std::uint64_t{0};
    std::size_t max_ball_vertices = std::size_t{1} << 23;
    Strategy strategy = Strategy::automatic;
};

SlotFunction slot_function(const GraphHandle& g);
SlotFunction slot_function(const QuotientGraph& q);

WalkCounts count_saws(const GraphHandle& g, const VertexKey& v0, int n_max, const CountOptions& opts = {});
WalkCounts count_directed_saws(const QuotientGraph& q, int n_max, const CountOptions& opts = {});
WalkCounts count_directed_saws(const QuotientGraph& q, const VertexKey& orbit, int n_max,
                               const CountOptions& opts = {});

// Number of n-step walks (not necessarily self-avoiding) for n = 0..n_max.
std::vector<BigCount> count_walks(const SlotFunction& slots, const VertexKey& root, int n_max);

}  // namespace saw
