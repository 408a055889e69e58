#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "saw/graph.hpp"

namespace saw {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Row-style Hermite normal form of the lattice spanned by `rows`: zero rows
// dropped, each pivot positive, entries above a pivot reduced into
// [0, pivot). Row operations are overflow-checked.
IntMatrix hermite_normal_form(const IntMatrix& rows);

// Canonical representative of x modulo the row lattice of an HNF basis.
std::vector<std::int64_t> reduce_modulo(const IntMatrix& hnf, std::vector<std::int64_t> x);

// A subgroup A0 of the automorphism group: either the translations by a
// sublattice of Z^d, or one of the named end-preserving actions on the tree
// with a distinguished end ("child-swap", or "child-swap:k" with the extra
// k-generation shift).
class SubgroupAction {
public:
    enum class Kind { sublattice, catalog };

    static SubgroupAction sublattice(IntMatrix rows);
    static SubgroupAction named(const std::string& name);

    Kind kind() const noexcept { return kind_; }
    const IntMatrix& rows() const noexcept { return rows_; }
    const IntMatrix& hnf() const noexcept { return hnf_; }
    int shift() const noexcept { return shift_; }
    std::string describe() const;

private:
    Kind kind_ = Kind::sublattice;
    IntMatrix rows_;
    IntMatrix hnf_;
    int shift_ = 0;
};

// Walk on G: a start vertex and the slot chosen at each step (index into
// GraphHandle::neighbor_slots of the current vertex).
struct GraphWalk {
    VertexKey start;
    std::vector<int> slots;

    friend bool operator==(const GraphWalk&, const GraphWalk&) = default;
};

// One step of a directed walk on the quotient: the target orbit and the
// 1-based label among the parallel directed edges to it.
struct DirectedStep {
    VertexKey target;
    int label = 1;

    friend bool operator==(const DirectedStep&, const DirectedStep&) = default;
};

struct DirectedWalk {
    VertexKey start;
    std::vector<DirectedStep> steps;

    friend bool operator==(const DirectedWalk&, const DirectedWalk&) = default;
};

// Lift table of a finite quotient: directed edge (from, to, label) of the
// quotient is realised by neighbor slot `slot` at any representative of
// `from`.
struct LiftTable {
    std::map<std::tuple<int, int, int>, int> slot_of;
};

// Directed quotient multigraph G/A0. Orbits are named by canonical keys
// (lattice-form VertexKeys). Finite quotients are fully materialised; the
// infinite ones answer orbit queries on demand.
class QuotientGraph {
public:
    QuotientGraph(GraphHandle g, SubgroupAction a);

    const GraphHandle& graph() const noexcept { return g_; }
    const SubgroupAction& action() const noexcept { return a_; }
    std::string id() const { return g_.id() + "/" + a_.describe(); }
    int degree() const noexcept { return g_.degree(); }

    bool finite() const noexcept { return finite_; }
    std::size_t orbit_count() const;
    const std::vector<VertexKey>& orbits() const;
    int orbit_index(const VertexKey& orbit) const;

    VertexKey orbit_of(const VertexKey& v) const;
    VertexKey representative(const VertexKey& orbit) const;
    VertexKey base_orbit() const { return orbit_of(g_.origin()); }
    // Orbits of the cell representatives; every orbit is a translate of one.
    std::vector<VertexKey> base_orbits() const;

    // Out-edges of an orbit in slot order (loops included).
    std::vector<VertexKey> out_slots(const VertexKey& orbit) const;
    // Distinct out-targets in first-slot order with multiplicities.
    std::vector<std::pair<VertexKey, int>> out_multiplicities(const VertexKey& orbit) const;
    int multiplicity(const VertexKey& from, const VertexKey& to) const;
    int loop_count(const VertexKey& orbit) const { return multiplicity(orbit, orbit); }

    const LiftTable& lift_table() const;
    void set_lift_table(LiftTable table);  // test hook for negative controls

    DirectedWalk project(const GraphWalk& walk) const;
    GraphWalk lift(const VertexKey& base, const DirectedWalk& dwalk) const;

private:
    void check_action() const;

    GraphHandle g_;
    SubgroupAction a_;
    bool finite_ = false;
    std::vector<VertexKey> orbits_;
    std::map<VertexKey, int> orbit_index_;
    std::optional<LiftTable> lift_table_;
};

QuotientGraph build_quotient(const GraphHandle& g, const SubgroupAction& a);

// True iff |∂v ∩ w̄| agrees with the lift table (finite quotients) or with the
// representative's counts (infinite ones) for every v in the radius ball.
bool check_representative_independence(const GraphHandle& g, const SubgroupAction& a,
                                       const QuotientGraph& q, int radius);

struct TypeReport {
    int type = 0;                     // 1, 2 or 3
    int length = 0;                   // shortest same-orbit distance
    std::vector<VertexKey> witness;   // shortest SAW v0 .. w with w in orbit(v0)
    std::vector<int> witness_slots;
};

TypeReport classify_type(const QuotientGraph& q);
TypeReport classify_type(const QuotientGraph& q, const VertexKey& start, int max_radius = 64);

bool check_symmetry(const QuotientGraph& q);

// Undirected graph derived from the quotient: the simple graph on orbits, or
// (symmetric actions only) the multigraph retaining parallel edges and loops.
GraphHandle derive_undirected(const QuotientGraph& q, bool keep_multiplicity);

std::vector<VertexKey> walk_vertices(const GraphHandle& g, const GraphWalk& walk);
std::vector<VertexKey> walk_vertices(const QuotientGraph& q, const DirectedWalk& walk);

// Verifies that every sublattice generator maps edges to edges with the same
// multiplicity on the radius ball around each cell representative.
bool action_preserves_edges(const GraphHandle& g, const SubgroupAction& a, int radius = 2);

}  // namespace saw
