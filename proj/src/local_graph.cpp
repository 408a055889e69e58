#include "saw/local_graph.hpp"

namespace saw {

LocalGraph compile_ball(const SlotFunction& slots_of, const VertexKey& root, int radius,
                        std::size_t max_vertices) {
    LocalGraph g;
    g.keys.push_back(root);
    g.distance.push_back(0);
    g.index.emplace(root, 0);

    // Out-slot lists are gathered layer by layer; a layer is expanded only if
    // the next sphere fits under the cap.
    std::vector<std::vector<std::int32_t>> out_lists;
    std::size_t layer_begin = 0;
    int reached = 0;
    for (int d = 0; d < radius; ++d) {
        const std::size_t layer_end = g.keys.size();
        std::vector<std::vector<std::int32_t>> layer_lists;
        std::vector<VertexKey> added;
        std::unordered_map<VertexKey, int, VertexKeyHash> pending;
        bool overflow = false;
        for (std::size_t v = layer_begin; v < layer_end && !overflow; ++v) {
            std::vector<std::int32_t> list;
            for (auto& t : slots_of(g.keys[v])) {
                auto it = g.index.find(t);
                if (it != g.index.end()) {
                    list.push_back(it->second);
                    continue;
                }
                auto pit = pending.find(t);
                if (pit != pending.end()) {
                    list.push_back(pit->second);
                    continue;
                }
                const int id = static_cast<int>(layer_end + added.size());
                if (static_cast<std::size_t>(id) + 1 > max_vertices) {
                    overflow = true;
                    break;
                }
                pending.emplace(t, id);
                added.push_back(t);
                list.push_back(id);
            }
            layer_lists.push_back(std::move(list));
        }
        if (overflow) {
            g.truncated = true;
            break;
        }
        for (auto& k : added) {
            g.index.emplace(k, static_cast<int>(g.keys.size()));
            g.keys.push_back(std::move(k));
            g.distance.push_back(d + 1);
        }
        for (auto& l : layer_lists) out_lists.push_back(std::move(l));
        layer_begin = layer_end;
        reached = d + 1;
    }
    g.radius = reached;

    g.row.assign(g.keys.size() + 1, 0);
    for (std::size_t v = 0; v < g.keys.size(); ++v) {
        const std::size_t n = v < out_lists.size() ? out_lists[v].size() : 0;
        g.row[v + 1] = g.row[v] + static_cast<std::uint32_t>(n);
    }
    g.slots.reserve(g.row.back());
    for (auto& l : out_lists) g.slots.insert(g.slots.end(), l.begin(), l.end());
    return g;
}

}  // namespace saw
