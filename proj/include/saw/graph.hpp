#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "saw/vertex_key.hpp"

namespace saw {

// One entry of a neighbor list: a distinct adjacent vertex, the stable label
// of the entry (its position in the deterministic order) and the number of
// parallel edges joining the two vertices.
struct Neighbor {
    VertexKey vertex;
    int label = 0;
    int multiplicity = 1;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Edge template of a periodic lattice: (i, x) ~ (j, x + offset), repeated
// parallel_count times, for every translate x in Z^d.
struct LatticeEdge {
    int from_cell = 0;
    int to_cell = 0;
    std::vector<std::int64_t> offset;
    int parallel_count = 1;
};

struct PeriodicLatticeSpec {
    int dimension = 1;
    int cells = 1;
    std::vector<LatticeEdge> edges;

    // Structural checks: cell indices in range, offsets of the right
    // dimension, no loops, positive multiplicities, equal degree on every
    // cell, connectivity.
    void validate() const;
};

struct RewriteRule {
    std::vector<std::int64_t> lhs;
    std::vector<std::int64_t> rhs;
};

// Finite presentation <S | R> together with a rewriting system whose normal
// forms serve as vertex keys. Generators are referred to by index.
struct GroupPresentation {
    std::vector<std::string> generator_names;
    std::vector<int> inverse;  // inverse[i] is the index of s_i^{-1}
    std::vector<std::vector<std::int64_t>> relators;
    std::vector<RewriteRule> rules;

    void validate_structure() const;
    // Rewrites a word to normal form; throws if rewriting does not settle
    // within a generous step limit.
    std::vector<std::int64_t> reduce(std::vector<std::int64_t> word) const;
    std::vector<std::int64_t> invert(const std::vector<std::int64_t>& word) const;
    int generator_index(const std::string& name) const;
};

enum class SourceKind { lattice, presentation, tree_with_end, quotient, augmented };

std::string to_string(SourceKind kind);

// Backend interface. Implementations must return neighbor lists in a
// deterministic order and must be safe for concurrent const use.
class GraphImpl {
public:
    virtual ~GraphImpl() = default;
    virtual void validate(const VertexKey& v) const = 0;
    virtual std::vector<Neighbor> neighbors(const VertexKey& v) const = 0;
};

// Immutable, cheaply copyable graph handle.
class GraphHandle {
public:
    struct Info {
        std::string id;
        SourceKind kind = SourceKind::lattice;
        int degree = 0;
        bool simple = true;
        // Length of the shortest cycle when known structurally; nullopt when
        // unknown, a value of kAcyclic for trees.
        std::optional<int> girth;
        VertexKey origin;
        std::vector<VertexKey> cell_representatives;
        std::optional<PeriodicLatticeSpec> lattice;
        std::optional<GroupPresentation> presentation;
        std::vector<std::vector<std::int64_t>> extra_words;  // augmenting words
        int tree_branching = 0;                              // tree-with-end only
    };

    static constexpr int kAcyclic = 1 << 30;

    GraphHandle(std::shared_ptr<const GraphImpl> impl, Info info);

    const std::string& id() const noexcept { return info_.id; }
    SourceKind kind() const noexcept { return info_.kind; }
    int degree() const noexcept { return info_.degree; }
    bool is_simple() const noexcept { return info_.simple; }
    std::optional<int> girth() const noexcept { return info_.girth; }
    const VertexKey& origin() const noexcept { return info_.origin; }
    const std::vector<VertexKey>& cell_representatives() const noexcept {
        return info_.cell_representatives;
    }
    const Info& info() const noexcept { return info_; }
    const PeriodicLatticeSpec* lattice_spec() const noexcept {
        return info_.lattice ? &*info_.lattice : nullptr;
    }
    const GroupPresentation* presentation() const noexcept {
        return info_.presentation ? &*info_.presentation : nullptr;
    }

    // Same backend, replaced metadata.
    GraphHandle with_info(Info info) const { return GraphHandle(impl_, std::move(info)); }

    void validate(const VertexKey& v) const { impl_->validate(v); }
    std::vector<Neighbor> neighbors(const VertexKey& v) const;
    // Neighbors expanded by multiplicity: one entry per edge, in label order
    // with parallel copies adjacent.
    std::vector<VertexKey> neighbor_slots(const VertexKey& v) const;

private:
    std::shared_ptr<const GraphImpl> impl_;
    Info info_;
};

// Graph constructors.
GraphHandle lattice_graph(PeriodicLatticeSpec spec, std::string id = {});
GraphHandle cayley_graph(GroupPresentation presentation, std::string id = {},
                         int validation_radius = 8);
GraphHandle regular_tree(int degree);
GraphHandle tree_with_end(int degree);

// Catalog lookup. Accepted names: zd(d) / zd:d, ladder, square-octagon,
// tree(D) / tree:D, tree-with-end(D) / tree-with-end:D.
GraphHandle catalog(const std::string& name);
std::vector<std::string> catalog_names();

std::vector<Neighbor> neighbors(const GraphHandle& g, const VertexKey& v);

// All vertices within graph distance r of v, sorted by key.
std::vector<VertexKey> ball(const GraphHandle& g, const VertexKey& v, int r);
// Layer sizes |S_0|, |S_1|, ..., |S_r| of the ball around v.
std::vector<std::size_t> ball_layers(const GraphHandle& g, const VertexKey& v, int r);

// Adds the orbit of the chord {u, v} under the graph's translation (lattice)
// or left-multiplication (Cayley) symmetry group.
GraphHandle augment(const GraphHandle& g, const VertexKey& u, const VertexKey& v);

// Tree-with-end helpers. Vertices are words 0^j c_1 ... c_d: go up j
// generations from the origin, then down through children c_i in
// {1..D-1}. The level is d - j.
std::int64_t tree_level(const VertexKey& v);
VertexKey tree_level_representative(std::int64_t level);

}  // namespace saw
