#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "saw/vertex_key.hpp"

namespace saw {

// Out-slots of a vertex: one entry per (directed) edge, parallel copies
// repeated, loops included.
using SlotFunction = std::function<std::vector<VertexKey>(const VertexKey&)>;

// Integer-indexed snapshot of the radius-r ball around a root, in CSR form.
// Vertices at distance < radius carry their full out-slot list; vertices on
// the boundary sphere carry none. Index 0 is the root.
struct LocalGraph {
    std::vector<VertexKey> keys;
    std::vector<int> distance;
    std::vector<std::uint32_t> row;   // size keys.size() + 1
    std::vector<std::int32_t> slots;  // target index per slot
    std::unordered_map<VertexKey, int, VertexKeyHash> index;
    int radius = 0;
    bool truncated = false;  // vertex cap hit; radius reduced accordingly

    std::size_t size() const noexcept { return keys.size(); }
    std::span<const std::int32_t> out(int v) const noexcept {
        return {slots.data() + row[v], slots.data() + row[v + 1]};
    }
    int find(const VertexKey& k) const {
        auto it = index.find(k);
        return it == index.end() ? -1 : it->second;
    }
};

// Breadth-first compilation. If the vertex count would exceed max_vertices,
// the largest complete radius that fits is used and `truncated` is set.
LocalGraph compile_ball(const SlotFunction& slots_of, const VertexKey& root, int radius,
                        std::size_t max_vertices);

}  // namespace saw
