#include "saw/quotient.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <regex>
#include <unordered_map>
#include <unordered_set>

#include "saw/errors.hpp"

namespace saw {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// row_a -= factor * row_b
void row_axpy(std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, std::int64_t factor) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = checked_sub(a[i], checked_mul(factor, b[i]));
}

bool is_zero(const std::vector<std::int64_t>& v) {
    return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

}  // namespace

IntMatrix hermite_normal_form(const IntMatrix& input) {
    IntMatrix m;
    std::size_t d = 0;
    for (const auto& r : input) {
        if (m.empty()) d = r.size();
        if (r.size() != d) throw InvalidActionError("sublattice rows have unequal lengths");
        m.push_back(r);
    }
    std::size_t pivot_row = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t col = 0; col < d && pivot_row < m.size(); ++col) {
        // Euclid on column `col` over rows pivot_row..end.
        while (true) {
            std::size_t best = m.size();
            for (std::size_t r = pivot_row; r < m.size(); ++r) {
                if (m[r][col] == 0) continue;
                if (best == m.size() || std::llabs(m[r][col]) < std::llabs(m[best][col])) best = r;
            }
            if (best == m.size()) break;
            std::swap(m[pivot_row], m[best]);
            bool others = false;
            for (std::size_t r = pivot_row + 1; r < m.size(); ++r) {
                if (m[r][col] == 0) continue;
                row_axpy(m[r], m[pivot_row], floor_div(m[r][col], m[pivot_row][col]));
                if (m[r][col] != 0) others = true;
            }
            if (!others) break;
        }
        if (m[pivot_row][col] == 0) continue;
        if (m[pivot_row][col] < 0) {
            for (auto& x : m[pivot_row]) x = checked_sub(0, x);
        }
        for (std::size_t r = 0; r < pivot_row; ++r) {
            row_axpy(m[r], m[pivot_row], floor_div(m[r][col], m[pivot_row][col]));
        }
        pivot_cols.push_back(col);
        ++pivot_row;
    }
    m.resize(pivot_row);
    return m;
}

std::vector<std::int64_t> reduce_modulo(const IntMatrix& hnf, std::vector<std::int64_t> x) {
    for (const auto& row : hnf) {
        std::size_t p = 0;
        while (row[p] == 0) ++p;
        row_axpy(x, row, floor_div(x[p], row[p]));
    }
    return x;
}

// ---------------------------------------------------------------------------

SubgroupAction SubgroupAction::sublattice(IntMatrix rows) {
    if (rows.empty() || std::all_of(rows.begin(), rows.end(), is_zero)) {
        throw InvalidActionError("sublattice action is trivial; at least one nonzero generator is required");
    }
    SubgroupAction a;
    a.kind_ = Kind::sublattice;
    a.hnf_ = hermite_normal_form(rows);
    a.rows_ = std::move(rows);
    return a;
}

SubgroupAction SubgroupAction::named(const std::string& name) {
    static const std::regex re(R"(^child-swap(?::(\d{1,6}))?$)");
    std::smatch m;
    if (!std::regex_match(name, m, re)) throw InvalidActionError("unknown catalog action '" + name + "'");
    SubgroupAction a;
    a.kind_ = Kind::catalog;
    a.shift_ = m[1].matched ? std::stoi(m[1].str()) : 0;
    return a;
}

std::string SubgroupAction::describe() const {
    if (kind_ == Kind::catalog) {
        return shift_ == 0 ? "child-swap" : "child-swap:" + std::to_string(shift_);
    }
    std::string s = "<";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) s += ";";
        for (std::size_t j = 0; j < rows_[i].size(); ++j) {
            if (j) s += " ";
            s += std::to_string(rows_[i][j]);
        }
    }
    return s + ">";
}

// ---------------------------------------------------------------------------

QuotientGraph::QuotientGraph(GraphHandle g, SubgroupAction a) : g_(std::move(g)), a_(std::move(a)) {
    check_action();
    constexpr std::size_t kMaxOrbits = 1u << 20;
    if (a_.kind() == SubgroupAction::Kind::sublattice) {
        const auto& spec = *g_.lattice_spec();
        const auto d = static_cast<std::size_t>(spec.dimension);
        finite_ = a_.hnf().size() == d;
        if (finite_) {
            std::vector<std::int64_t> extent(d);
            std::size_t per_cell = 1;
            for (std::size_t i = 0; i < d; ++i) {
                extent[i] = a_.hnf()[i][i];
                if (per_cell > kMaxOrbits / static_cast<std::size_t>(extent[i])) {
                    throw InvalidActionError("quotient has too many orbits to materialise");
                }
                per_cell *= static_cast<std::size_t>(extent[i]);
            }
            if (per_cell * static_cast<std::size_t>(spec.cells) > kMaxOrbits) {
                throw InvalidActionError("quotient has too many orbits to materialise");
            }
            for (int c = 0; c < spec.cells; ++c) {
                std::vector<std::int64_t> x(d, 0);
                while (true) {
                    orbits_.push_back(VertexKey::lattice(c, x));
                    std::size_t i = d;
                    while (i > 0) {
                        --i;
                        if (++x[i] < extent[i]) break;
                        x[i] = 0;
                        if (i == 0) goto done_cell;
                    }
                    if (d == 0) break;
                }
            done_cell:;
            }
        }
    } else {
        finite_ = a_.shift() > 0;
        if (finite_) {
            for (int h = 0; h < a_.shift(); ++h) orbits_.push_back(VertexKey::lattice(0, {h}));
        }
    }
    if (finite_) {
        for (std::size_t i = 0; i < orbits_.size(); ++i) orbit_index_.emplace(orbits_[i], static_cast<int>(i));
        LiftTable table;
        for (std::size_t i = 0; i < orbits_.size(); ++i) {
            auto slots = g_.neighbor_slots(representative(orbits_[i]));
            std::map<int, int> seen;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                const int to = orbit_index(orbit_of(slots[s]));
                const int label = ++seen[to];
                table.slot_of[{static_cast<int>(i), to, label}] = static_cast<int>(s);
            }
        }
        lift_table_ = std::move(table);
    }
}

void QuotientGraph::check_action() const {
    if (a_.kind() == SubgroupAction::Kind::sublattice) {
        const auto* spec = g_.lattice_spec();
        if (!spec) throw InvalidActionError("sublattice actions require a periodic lattice graph");
        for (const auto& r : a_.rows()) {
            if (static_cast<int>(r.size()) != spec->dimension) {
                throw InvalidActionError("sublattice row dimension does not match the lattice");
            }
        }
        if (!action_preserves_edges(g_, a_, 2)) {
            throw InvalidActionError("action does not preserve the edge set");
        }
    } else {
        if (g_.kind() != SourceKind::tree_with_end) {
            throw InvalidActionError("catalog action '" + a_.describe() + "' applies to tree-with-end graphs only");
        }
    }
}

std::size_t QuotientGraph::orbit_count() const {
    if (!finite_) throw InfiniteQuotientError("quotient " + id() + " has infinitely many orbits");
    return orbits_.size();
}

const std::vector<VertexKey>& QuotientGraph::orbits() const {
    if (!finite_) throw InfiniteQuotientError("quotient " + id() + " has infinitely many orbits");
    return orbits_;
}

int QuotientGraph::orbit_index(const VertexKey& orbit) const {
    auto it = orbit_index_.find(orbit);
    if (it == orbit_index_.end()) throw InvalidVertexError("unknown orbit " + orbit.to_string());
    return it->second;
}

VertexKey QuotientGraph::orbit_of(const VertexKey& v) const {
    g_.validate(v);
    if (a_.kind() == SubgroupAction::Kind::sublattice) {
        return VertexKey::lattice(v.cell(), reduce_modulo(a_.hnf(), v.offset()));
    }
    std::int64_t level = tree_level(v);
    if (a_.shift() > 0) {
        level %= a_.shift();
        if (level < 0) level += a_.shift();
    }
    return VertexKey::lattice(0, {level});
}

VertexKey QuotientGraph::representative(const VertexKey& orbit) const {
    if (!orbit.is_lattice()) throw InvalidVertexError("orbit keys are lattice-form keys");
    if (a_.kind() == SubgroupAction::Kind::sublattice) {
        g_.validate(orbit);
        if (reduce_modulo(a_.hnf(), orbit.offset()) != orbit.offset()) {
            throw InvalidVertexError(orbit.to_string() + " is not a canonical orbit key");
        }
        return orbit;
    }
    if (orbit.cell() != 0 || orbit.dimension() != 1 ||
        (a_.shift() > 0 && (orbit.offset()[0] < 0 || orbit.offset()[0] >= a_.shift()))) {
        throw InvalidVertexError(orbit.to_string() + " is not a canonical orbit key");
    }
    return tree_level_representative(orbit.offset()[0]);
}

std::vector<VertexKey> QuotientGraph::base_orbits() const {
    std::vector<VertexKey> out;
    for (const auto& r : g_.cell_representatives()) out.push_back(orbit_of(r));
    return out;
}

std::vector<VertexKey> QuotientGraph::out_slots(const VertexKey& orbit) const {
    std::vector<VertexKey> out;
    for (auto& t : g_.neighbor_slots(representative(orbit))) out.push_back(orbit_of(t));
    return out;
}

std::vector<std::pair<VertexKey, int>> QuotientGraph::out_multiplicities(const VertexKey& orbit) const {
    std::vector<std::pair<VertexKey, int>> out;
    for (auto& t : out_slots(orbit)) {
        auto it = std::find_if(out.begin(), out.end(), [&](auto& p) { return p.first == t; });
        if (it == out.end()) {
            out.emplace_back(t, 1);
        } else {
            ++it->second;
        }
    }
    return out;
}

int QuotientGraph::multiplicity(const VertexKey& from, const VertexKey& to) const {
    int m = 0;
    for (auto& t : out_slots(from)) m += (t == to);
    return m;
}

const LiftTable& QuotientGraph::lift_table() const {
    if (!lift_table_) throw InfiniteQuotientError("lift tables exist for finite quotients only");
    return *lift_table_;
}

void QuotientGraph::set_lift_table(LiftTable table) { lift_table_ = std::move(table); }

DirectedWalk QuotientGraph::project(const GraphWalk& walk) const {
    DirectedWalk out;
    out.start = orbit_of(walk.start);
    VertexKey x = walk.start;
    for (int s : walk.slots) {
        auto slots = g_.neighbor_slots(x);
        if (s < 0 || static_cast<std::size_t>(s) >= slots.size()) {
            throw InvalidLabelError("slot " + std::to_string(s) + " out of range at " + x.to_string());
        }
        const VertexKey target = orbit_of(slots[s]);
        int label = 0;
        for (int i = 0; i <= s; ++i) label += (orbit_of(slots[i]) == target);
        out.steps.push_back({target, label});
        x = slots[s];
    }
    return out;
}

GraphWalk QuotientGraph::lift(const VertexKey& base, const DirectedWalk& dwalk) const {
    if (orbit_of(base) != dwalk.start) {
        throw InvalidVertexError("base vertex " + base.to_string() + " is not in orbit " + dwalk.start.to_string());
    }
    GraphWalk out;
    out.start = base;
    VertexKey x = base;
    VertexKey cur = dwalk.start;
    for (const auto& step : dwalk.steps) {
        auto slots = g_.neighbor_slots(x);
        int chosen = -1;
        if (finite_) {
            auto it = lift_table_->slot_of.find({orbit_index(cur), orbit_index(step.target), step.label});
            if (it == lift_table_->slot_of.end()) {
                throw InvalidLabelError("no directed edge " + cur.to_string() + " -> " + step.target.to_string() +
                                        " with label " + std::to_string(step.label));
            }
            chosen = it->second;
        } else {
            int seen = 0;
            for (std::size_t i = 0; i < slots.size(); ++i) {
                if (orbit_of(slots[i]) == step.target && ++seen == step.label) {
                    chosen = static_cast<int>(i);
                    break;
                }
            }
            if (chosen < 0) {
                throw InvalidLabelError("no directed edge " + cur.to_string() + " -> " + step.target.to_string() +
                                        " with label " + std::to_string(step.label));
            }
        }
        out.slots.push_back(chosen);
        x = slots.at(chosen);
        cur = step.target;
    }
    return out;
}

QuotientGraph build_quotient(const GraphHandle& g, const SubgroupAction& a) { return QuotientGraph(g, a); }

// ---------------------------------------------------------------------------

bool action_preserves_edges(const GraphHandle& g, const SubgroupAction& a, int radius) {
    if (a.kind() != SubgroupAction::Kind::sublattice) return true;
    for (const auto& rep : g.cell_representatives()) {
        for (const auto& v : ball(g, rep, radius)) {
            auto nv = g.neighbors(v);
            for (const auto& t : a.rows()) {
                auto tv = VertexKey::lattice(v.cell(), add_offsets(v.offset(), t));
                auto ntv = g.neighbors(tv);
                if (nv.size() != ntv.size()) return false;
                for (std::size_t i = 0; i < nv.size(); ++i) {
                    auto moved = VertexKey::lattice(nv[i].vertex.cell(), add_offsets(nv[i].vertex.offset(), t));
                    if (moved != ntv[i].vertex || nv[i].multiplicity != ntv[i].multiplicity) return false;
                }
            }
        }
    }
    return true;
}

bool check_representative_independence(const GraphHandle& g, const SubgroupAction& a,
                                       const QuotientGraph& q, int radius) {
    (void)a;
    for (const auto& rep : g.cell_representatives()) {
        for (const auto& v : ball(g, rep, radius)) {
            const auto orbit = q.orbit_of(v);
            const auto slots = g.neighbor_slots(v);
            // Observed |∂v ∩ w̄| at this representative.
            std::map<VertexKey, int> observed;
            for (auto& t : slots) ++observed[q.orbit_of(t)];
            if (q.finite()) {
                const int from = q.orbit_index(orbit);
                std::map<int, int> tabled;
                for (const auto& [key, slot] : q.lift_table().slot_of) {
                    if (std::get<0>(key) != from) continue;
                    const int to = std::get<1>(key);
                    if (slot < 0 || static_cast<std::size_t>(slot) >= slots.size()) return false;
                    if (q.orbit_index(q.orbit_of(slots[slot])) != to) return false;
                    ++tabled[to];
                }
                if (tabled.size() != observed.size()) return false;
                for (auto& [w, count] : observed) {
                    auto it = tabled.find(q.orbit_index(w));
                    if (it == tabled.end() || it->second != count) return false;
                }
            } else {
                std::map<VertexKey, int> reference;
                for (auto& [w, m] : q.out_multiplicities(orbit)) reference[w] = m;
                if (reference != observed) return false;
            }
        }
    }
    return true;
}

TypeReport classify_type(const QuotientGraph& q) { return classify_type(q, q.graph().origin()); }

TypeReport classify_type(const QuotientGraph& q, const VertexKey& start, int max_radius) {
    const auto& g = q.graph();
    const auto target = q.orbit_of(start);
    struct Parent {
        VertexKey prev;
        int slot;
    };
    std::unordered_map<VertexKey, Parent, VertexKeyHash> parent;
    parent.emplace(start, Parent{start, -1});
    std::vector<VertexKey> frontier{start};
    for (int d = 1; d <= max_radius && !frontier.empty(); ++d) {
        std::vector<VertexKey> next;
        for (const auto& x : frontier) {
            auto slots = g.neighbor_slots(x);
            for (std::size_t s = 0; s < slots.size(); ++s) {
                const auto& y = slots[s];
                if (parent.count(y)) continue;
                parent.emplace(y, Parent{x, static_cast<int>(s)});
                if (q.orbit_of(y) == target) {
                    TypeReport rep;
                    rep.length = d;
                    rep.type = d >= 3 ? 3 : d;
                    VertexKey cur = y;
                    while (!(cur == start)) {
                        rep.witness.push_back(cur);
                        auto& p = parent.at(cur);
                        rep.witness_slots.push_back(p.slot);
                        cur = p.prev;
                    }
                    rep.witness.push_back(start);
                    std::reverse(rep.witness.begin(), rep.witness.end());
                    std::reverse(rep.witness_slots.begin(), rep.witness_slots.end());
                    return rep;
                }
                next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    throw InvalidActionError("no orbit mate found within radius " + std::to_string(max_radius) +
                             "; the action looks trivial");
}

bool check_symmetry(const QuotientGraph& q) {
    const std::vector<VertexKey> sources = q.finite() ? q.orbits() : q.base_orbits();
    for (const auto& v : sources) {
        for (const auto& [w, m] : q.out_multiplicities(v)) {
            if (q.multiplicity(w, v) != m) return false;
        }
    }
    return true;
}

namespace {

class QuotientUndirectedImpl final : public GraphImpl {
public:
    QuotientUndirectedImpl(QuotientGraph q, bool keep) : q_(std::move(q)), keep_(keep) {}

    void validate(const VertexKey& v) const override { q_.representative(v); }

    std::vector<Neighbor> neighbors(const VertexKey& v) const override {
        auto mult = q_.out_multiplicities(v);
        std::sort(mult.begin(), mult.end());
        std::vector<Neighbor> out;
        for (auto& [w, m] : mult) {
            if (!keep_ && w == v) continue;
            out.push_back({w, static_cast<int>(out.size()), keep_ ? m : 1});
        }
        return out;
    }

private:
    QuotientGraph q_;
    bool keep_;
};

}  // namespace

GraphHandle derive_undirected(const QuotientGraph& q, bool keep_multiplicity) {
    if (keep_multiplicity && !check_symmetry(q)) {
        throw SymmetryRequiredError("multigraph form needs a symmetric action; " + q.id() + " is not symmetric");
    }
    auto impl = std::make_shared<QuotientUndirectedImpl>(q, keep_multiplicity);
    GraphHandle::Info info;
    info.id = (keep_multiplicity ? "multigraph(" : "simple(") + q.id() + ")";
    info.kind = SourceKind::quotient;
    info.origin = q.base_orbit();
    info.cell_representatives = q.base_orbits();
    auto nb = impl->neighbors(info.origin);
    info.simple = true;
    for (auto& n : nb) {
        info.degree += n.multiplicity;
        if (n.multiplicity > 1 || n.vertex == info.origin) info.simple = false;
    }
    return GraphHandle(std::move(impl), std::move(info));
}

std::vector<VertexKey> walk_vertices(const GraphHandle& g, const GraphWalk& walk) {
    std::vector<VertexKey> out{walk.start};
    for (int s : walk.slots) {
        auto slots = g.neighbor_slots(out.back());
        if (s < 0 || static_cast<std::size_t>(s) >= slots.size()) throw InvalidLabelError("slot out of range");
        out.push_back(slots[s]);
    }
    return out;
}

std::vector<VertexKey> walk_vertices(const QuotientGraph& q, const DirectedWalk& walk) {
    std::vector<VertexKey> out{walk.start};
    for (const auto& s : walk.steps) {
        if (q.multiplicity(out.back(), s.target) < s.label || s.label < 1) {
            throw InvalidLabelError("label out of range");
        }
        out.push_back(s.target);
    }
    return out;
}

}  // namespace saw
