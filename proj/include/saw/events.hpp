#pragma once

#include <map>
#include <vector>

#include "saw/quotient.hpp"
#include "saw/saw_engine.hpp"

namespace saw {

// Window value meaning "the whole walk", i.e. E_k rather than E_k^m.
inline constexpr int kWholeWalk = -1;

// The family L(w̄): for each root orbit w̄, the vertex sets of the directed
// cycles of length ℓ̄ from w̄ whose lifts are SAWs of G joining two distinct
// vertices of one orbit. Vertex sets are sorted orbit keys, deduplicated per
// root.
struct CycleFamily {
    int length = 0;
    TypeReport report;
    std::map<VertexKey, std::vector<std::vector<VertexKey>>> cycles;
};

// Cycles rooted at one orbit, computed from scratch.
std::vector<std::vector<VertexKey>> cycles_at(const QuotientGraph& q, int length, const VertexKey& root);

// Materialises the family on every orbit (finite quotients) or on the orbits
// within `radius` of the base orbit (infinite ones).
CycleFamily build_cycle_family(const QuotientGraph& q, const TypeReport& report, int radius);

// Number of steps j of the walk at which E_k^m occurs (m = kWholeWalk: E_k).
// `walk` lists orbit keys; `cycles_of` maps a root to its cycles.
int event_occurrences(const std::vector<VertexKey>& walk, const CycleFamily& family, int k, int m);

// σ⃗_n(r, E_k^m) from the base orbit.
BigCount count_with_events(const QuotientGraph& q, const CycleFamily& family, int n, int k, int m, int r,
                           const CountOptions& opts = {});

// σ⃗_n(0, E_k) for n = 0..n_max by a pruned search; E_k only ever gains
// occurrences as a walk grows, so a violated prefix is cut.
WalkCounts count_avoiding(const QuotientGraph& q, const CycleFamily& family, int k, int n_max,
                          const CountOptions& opts = {});

// Histograms of occurrence counts over a (k, m) grid for n = 0..n_max.
class EventProfile {
public:
    std::vector<int> ks;
    std::vector<int> ms;
    int n_max = 0;
    // hist[n][ki][mi][c] = number of n-step directed SAWs with exactly c
    // occurrence steps
    std::vector<std::vector<std::vector<std::vector<BigCount>>>> hist;

    BigCount count(int n, int k, int m, int r) const;
    // σ⃗_n(0, E_k)^{1/n}; requires kWholeWalk among ms.
    double lambda_upper(int k, int n) const;
};

EventProfile event_profile(const QuotientGraph& q, const CycleFamily& family, const std::vector<int>& ks,
                           const std::vector<int>& ms, int n_max, const CountOptions& opts = {});

// σ⃗_n(0, E_k)^{1/n}.
double lambda_upper(const QuotientGraph& q, const CycleFamily& family, int k, int n,
                    const CountOptions& opts = {});

}  // namespace saw
