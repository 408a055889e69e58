#include "saw/isomorphism.hpp"

#include <algorithm>
#include <unordered_map>

namespace saw {

namespace {

// Induced ball: BFS order, distances, multiplicity matrix.
struct Ball {
    std::vector<VertexKey> keys;
    std::vector<int> dist;
    std::vector<int> parent;
    std::vector<std::vector<int>> mult;  // mult[u][v]
    std::vector<int> degree;             // within the ball, with multiplicity
};

Ball grow(const GraphHandle& g, const VertexKey& root, int radius) {
    Ball b;
    std::unordered_map<VertexKey, int, VertexKeyHash> index;
    b.keys.push_back(root);
    b.dist.push_back(0);
    b.parent.push_back(-1);
    index.emplace(root, 0);
    for (std::size_t i = 0; i < b.keys.size(); ++i) {
        if (b.dist[i] == radius) continue;
        for (const auto& n : g.neighbors(b.keys[i])) {
            if (index.count(n.vertex)) continue;
            index.emplace(n.vertex, static_cast<int>(b.keys.size()));
            b.keys.push_back(n.vertex);
            b.dist.push_back(b.dist[i] + 1);
            b.parent.push_back(static_cast<int>(i));
        }
    }
    const std::size_t n = b.keys.size();
    b.mult.assign(n, std::vector<int>(n, 0));
    b.degree.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& nb : g.neighbors(b.keys[i])) {
            auto it = index.find(nb.vertex);
            if (it == index.end()) continue;
            b.mult[i][it->second] = nb.multiplicity;
            b.degree[i] += nb.multiplicity;
        }
    }
    return b;
}

class Matcher {
public:
    Matcher(const Ball& a, const Ball& b) : a_(a), b_(b), map_(a.keys.size(), -1), used_(b.keys.size(), 0) {}

    bool run() {
        if (a_.keys.size() != b_.keys.size()) return false;
        return extend(0);
    }
    const std::vector<int>& map() const { return map_; }

private:
    bool compatible(int u, int x) const {
        if (used_[x] || a_.dist[u] != b_.dist[x] || a_.degree[u] != b_.degree[x]) return false;
        if (a_.mult[u][u] != b_.mult[x][x]) return false;
        for (int w = 0; w < u; ++w) {
            if (a_.mult[u][w] != b_.mult[x][map_[w]]) return false;
        }
        return true;
    }

    bool extend(int u) {
        if (u == static_cast<int>(a_.keys.size())) return true;
        // Candidates: neighbours of the parent's image (or the root).
        std::vector<int> cands;
        if (u == 0) {
            cands.push_back(0);
        } else {
            const int px = map_[a_.parent[u]];
            for (int x = 0; x < static_cast<int>(b_.keys.size()); ++x) {
                if (b_.mult[px][x] > 0) cands.push_back(x);
            }
        }
        for (int x : cands) {
            if (!compatible(u, x)) continue;
            map_[u] = x;
            used_[x] = 1;
            if (extend(u + 1)) return true;
            used_[x] = 0;
            map_[u] = -1;
        }
        return false;
    }

    const Ball& a_;
    const Ball& b_;
    std::vector<int> map_;
    std::vector<std::uint8_t> used_;
};

}  // namespace

std::optional<std::map<VertexKey, VertexKey>> ball_isomorphism(const GraphHandle& a, const VertexKey& ra,
                                                               const GraphHandle& b, const VertexKey& rb,
                                                               int radius) {
    const Ball ba = grow(a, ra, radius);
    const Ball bb = grow(b, rb, radius);
    Matcher m(ba, bb);
    if (!m.run()) return std::nullopt;
    std::map<VertexKey, VertexKey> out;
    for (std::size_t i = 0; i < ba.keys.size(); ++i) out.emplace(ba.keys[i], bb.keys[m.map()[i]]);
    return out;
}

bool balls_isomorphic(const GraphHandle& a, const VertexKey& ra, const GraphHandle& b, const VertexKey& rb,
                      int radius) {
    return ball_isomorphism(a, ra, b, rb, radius).has_value();
}

}  // namespace saw
