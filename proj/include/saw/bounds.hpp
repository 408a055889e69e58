#pragma once

#include <string>
#include <vector>

#include "saw/graph.hpp"
#include "saw/interval.hpp"
#include "saw/saw_engine.hpp"

namespace saw {

// One lower bound b_n <= μ and where it comes from. `raw` holds the exact
// input the value is recomputed from: β_{source_n} for bridges, Δ for the
// degree bound, the literal for constants.
struct LowerBoundEntry {
    double value = 0.0;
    std::string provenance;  // "bridge", "degree", "constant" or "exact"
    std::string raw;
    int source_n = 0;
};

struct LowerBoundSequence {
    std::string graph_id;
    std::vector<LowerBoundEntry> entries;  // entries[n-1] is b_n

    int n_max() const { return static_cast<int>(entries.size()); }
    double at(int n) const;
};

// Interval enclosing the bound an entry certifies, recomputed from `raw`.
Interval entry_interval(const LowerBoundEntry& e);

// Exact n-step bridge counts on Z^d for n = 0..n_max (β_0 = 1).
std::vector<BigCount> bridge_counts(int d, int n_max, const CountOptions& opts = {});

LowerBoundSequence bridge_bound(int d, int n_max, const CountOptions& opts = {});

// √(Δ-1); the graph form refuses multigraphs.
double degree_bound(int degree);
LowerBoundSequence degree_bound(const GraphHandle& g, int n_max);

// b_n ≡ value. `provenance` is "constant" or "exact".
LowerBoundSequence constant_bound(const std::string& graph_id, const std::string& literal, int n_max,
                                  const std::string& provenance = "constant");

// Running maximum.
LowerBoundSequence monotone_regularize(const LowerBoundSequence& seq);
std::vector<double> monotone_regularize(const std::vector<double>& seq);

}  // namespace saw
