#pragma once

// Partitioned self-avoiding depth-first search over a LocalGraph.
//
// A Policy carries per-walk state and accumulates results:
//
//   bool push(int v, int depth);   // v appended at `depth`; false prunes it
//   void record(int depth);        // the admitted walk of length `depth`
//   void pop(int v, int depth);
//   void leaf_slots(int depth, std::uint64_t free_slots);  // optional
//   static constexpr bool kLeafShortcut;
//
// When kLeafShortcut is set, a node at depth n-1 reports the number of free
// out-slots via leaf_slots() instead of descending; this is exact for plain
// counting where every extension is admitted.
//
// Walks are split into tasks at a fixed prefix depth; each task runs on a
// private policy and visited set, and results come back indexed by task so
// the caller can reduce them in a fixed order.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "saw/errors.hpp"
#include "saw/local_graph.hpp"

namespace saw::detail {

struct NodeBudget {
    std::uint64_t limit = ~std::uint64_t{0};
    std::atomic<std::uint64_t> used{0};
    std::atomic<bool> exceeded{false};
};

template <class Policy>
class SawSearch {
public:
    SawSearch(const LocalGraph& g, int n, NodeBudget& budget)
        : g_(g), n_(n), budget_(budget), visited_(g.size(), 0) {}

    // Extends the walk whose last vertex is `v` at `depth` (already pushed,
    // recorded and marked).
    void descend(Policy& p, int v, int depth) {
        if (depth >= n_ || budget_.exceeded.load(std::memory_order_relaxed)) return;
        if constexpr (Policy::kLeafShortcut) {
            if (depth == n_ - 1) {
                std::uint64_t free_slots = 0;
                for (auto t : g_.out(v)) free_slots += (t >= 0 && !visited_[t]);
                p.leaf_slots(depth + 1, free_slots);
                tick();
                return;
            }
        }
        for (auto t : g_.out(v)) {
            if (t < 0 || visited_[t]) continue;
            if (!p.push(t, depth + 1)) {
                p.pop(t, depth + 1);
                continue;
            }
            p.record(depth + 1);
            tick();
            visited_[t] = 1;
            descend(p, t, depth + 1);
            visited_[t] = 0;
            p.pop(t, depth + 1);
        }
    }

    // Serial phase: walk to `split` and collect prefixes for the workers.
    void collect(Policy& p, int v, int depth, int split, std::vector<int>& path,
                 std::vector<std::vector<int>>& tasks) {
        if (depth == split) {
            tasks.push_back(path);
            return;
        }
        if (depth >= n_) return;
        for (auto t : g_.out(v)) {
            if (t < 0 || visited_[t]) continue;
            const bool admitted = p.push(t, depth + 1);
            if (admitted) {
                path.push_back(t);
                if (depth + 1 < split) p.record(depth + 1);
                visited_[t] = 1;
                collect(p, t, depth + 1, split, path, tasks);
                visited_[t] = 0;
                path.pop_back();
            }
            p.pop(t, depth + 1);
        }
    }

    // Worker phase: rebuild state along the prefix, then search below it.
    void run_task(Policy& p, const std::vector<int>& prefix) {
        const int last = static_cast<int>(prefix.size()) - 1;
        for (int i = 0; i <= last; ++i) {
            if (i > 0) p.push(prefix[i], i);
            visited_[prefix[i]] = 1;
        }
        if (last > 0) p.record(last);
        descend(p, prefix[last], last);
        for (int i = last; i >= 0; --i) {
            visited_[prefix[i]] = 0;
            if (i > 0) p.pop(prefix[i], i);
        }
    }

    void mark_root() { visited_[0] = 1; }
    void unmark_root() { visited_[0] = 0; }

private:
    void tick() {
        if (++local_ticks_ == 4096) {
            auto total = budget_.used.fetch_add(local_ticks_, std::memory_order_relaxed) + local_ticks_;
            local_ticks_ = 0;
            if (total > budget_.limit) budget_.exceeded.store(true, std::memory_order_relaxed);
        }
    }

    const LocalGraph& g_;
    int n_;
    NodeBudget& budget_;
    std::vector<std::uint8_t> visited_;
    std::uint64_t local_ticks_ = 0;
};

// Runs the partitioned search. `make` builds a fresh policy; the root policy
// handles the root and every node above the split depth. Returns the root
// policy followed by one policy per task, in task order.
template <class Policy, class Make>
std::vector<Policy> partitioned_search(const LocalGraph& g, int n, int split, int workers,
                                       NodeBudget& budget, Make make) {
    std::vector<Policy> results;
    results.push_back(make());
    Policy& root = results.front();
    std::vector<std::vector<int>> tasks;
    {
        SawSearch<Policy> s(g, n, budget);
        if (!root.push(0, 0)) {
            root.pop(0, 0);
            return results;
        }
        root.record(0);
        s.mark_root();
        split = std::max(0, std::min(split, n));
        if (split == 0) {
            s.descend(root, 0, 0);
        } else {
            std::vector<int> path{0};
            s.collect(root, 0, 0, split, path, tasks);
        }
        s.unmark_root();
        root.pop(0, 0);
    }
    if (tasks.empty()) return results;

    const std::size_t task_count = tasks.size();
    for (std::size_t i = 0; i < task_count; ++i) results.push_back(make());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        SawSearch<Policy> s(g, n, budget);
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= task_count) break;
            Policy& p = results[i + 1];
            p.push(tasks[i][0], 0);
            s.run_task(p, tasks[i]);
            p.pop(tasks[i][0], 0);
        }
    };
    const int w = std::max(1, std::min<int>(workers, static_cast<int>(task_count)));
    if (w == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(w);
        for (int i = 0; i < w; ++i) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    return results;
}

}  // namespace saw::detail
