#include "saw/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <regex>
#include <unordered_map>
#include <unordered_set>

#include "saw/errors.hpp"

namespace saw {

std::string to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::lattice: return "lattice";
        case SourceKind::presentation: return "presentation";
        case SourceKind::tree_with_end: return "tree-with-end";
        case SourceKind::quotient: return "quotient";
        case SourceKind::augmented: return "augmented";
    }
    return "unknown";
}

GraphHandle::GraphHandle(std::shared_ptr<const GraphImpl> impl, Info info)
    : impl_(std::move(impl)), info_(std::move(info)) {}

std::vector<Neighbor> GraphHandle::neighbors(const VertexKey& v) const {
    impl_->validate(v);
    return impl_->neighbors(v);
}

std::vector<VertexKey> GraphHandle::neighbor_slots(const VertexKey& v) const {
    std::vector<VertexKey> out;
    for (auto& n : neighbors(v)) {
        for (int i = 0; i < n.multiplicity; ++i) out.push_back(n.vertex);
    }
    return out;
}

std::vector<Neighbor> neighbors(const GraphHandle& g, const VertexKey& v) {
    return g.neighbors(v);
}

namespace {

// ---------------------------------------------------------------------------
// Periodic lattices

struct LatticeStep {
    int to_cell;
    std::vector<std::int64_t> delta;
    int multiplicity;
};

std::vector<std::vector<LatticeStep>> lattice_steps(const PeriodicLatticeSpec& spec) {
    std::vector<std::map<std::pair<int, std::vector<std::int64_t>>, int>> merged(spec.cells);
    for (const auto& e : spec.edges) {
        std::vector<std::int64_t> neg(e.offset.size());
        for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = checked_sub(0, e.offset[i]);
        merged[e.from_cell][{e.to_cell, e.offset}] += e.parallel_count;
        merged[e.to_cell][{e.from_cell, neg}] += e.parallel_count;
    }
    std::vector<std::vector<LatticeStep>> steps(spec.cells);
    for (int c = 0; c < spec.cells; ++c) {
        for (auto& [key, mult] : merged[c]) steps[c].push_back({key.first, key.second, mult});
    }
    return steps;
}

class LatticeImpl final : public GraphImpl {
public:
    explicit LatticeImpl(const PeriodicLatticeSpec& spec)
        : dimension_(spec.dimension), cells_(spec.cells), steps_(lattice_steps(spec)) {}

    void validate(const VertexKey& v) const override {
        if (!v.is_lattice() || v.cell() >= cells_ ||
            static_cast<int>(v.dimension()) != dimension_) {
            throw InvalidVertexError("vertex " + v.to_string() + " is not a vertex of this lattice");
        }
    }

    std::vector<Neighbor> neighbors(const VertexKey& v) const override {
        const auto& steps = steps_[v.cell()];
        std::vector<Neighbor> out;
        out.reserve(steps.size());
        int label = 0;
        for (const auto& s : steps) {
            out.push_back({VertexKey::lattice(s.to_cell, add_offsets(v.offset(), s.delta)), label++,
                           s.multiplicity});
        }
        return out;
    }

    const std::vector<std::vector<LatticeStep>>& steps() const { return steps_; }

private:
    int dimension_;
    int cells_;
    std::vector<std::vector<LatticeStep>> steps_;
};

// ---------------------------------------------------------------------------
// Cayley graphs of presentations with a rewriting system

class WordImpl final : public GraphImpl {
public:
    WordImpl(GroupPresentation p, std::vector<std::vector<std::int64_t>> extra)
        : p_(std::move(p)), extra_(std::move(extra)) {}

    void validate(const VertexKey& v) const override {
        if (!v.is_word()) throw InvalidVertexError("vertex " + v.to_string() + " is not a word");
        for (auto l : v.letters()) {
            if (l < 0 || l >= static_cast<std::int64_t>(p_.generator_names.size())) {
                throw InvalidVertexError("vertex " + v.to_string() + " has an unknown letter");
            }
        }
        if (p_.reduce(v.letters()) != v.letters()) {
            throw InvalidVertexError("vertex " + v.to_string() + " is not in normal form");
        }
    }

    std::vector<Neighbor> neighbors(const VertexKey& v) const override {
        std::vector<Neighbor> out;
        auto push = [&](std::vector<std::int64_t> w) {
            auto key = VertexKey::word(p_.reduce(std::move(w)));
            if (key == v) throw LoopError("generator acts trivially at " + v.to_string());
            for (auto& n : out) {
                if (n.vertex == key) {
                    ++n.multiplicity;
                    return;
                }
            }
            out.push_back({std::move(key), static_cast<int>(out.size()), 1});
        };
        const auto n_gen = static_cast<std::int64_t>(p_.generator_names.size());
        for (std::int64_t i = 0; i < n_gen; ++i) {
            auto w = v.letters();
            w.push_back(i);
            push(std::move(w));
        }
        for (const auto& e : extra_) {
            auto w = v.letters();
            w.insert(w.end(), e.begin(), e.end());
            push(std::move(w));
        }
        return out;
    }

private:
    GroupPresentation p_;
    std::vector<std::vector<std::int64_t>> extra_;
};

// ---------------------------------------------------------------------------
// Regular tree with a distinguished end

class TreeWithEndImpl final : public GraphImpl {
public:
    explicit TreeWithEndImpl(int degree) : degree_(degree) {}

    void validate(const VertexKey& v) const override {
        if (!v.is_word()) throw InvalidVertexError("vertex " + v.to_string() + " is not a word");
        const auto& w = v.letters();
        std::size_t j = 0;
        while (j < w.size() && w[j] == 0) ++j;
        for (std::size_t i = j; i < w.size(); ++i) {
            if (w[i] < 1 || w[i] >= degree_) {
                throw InvalidVertexError("vertex " + v.to_string() + " is not a tree-with-end vertex");
            }
        }
        if (j > 0 && j < w.size() && w[j] == 1) {
            throw InvalidVertexError("vertex " + v.to_string() + " is not in canonical form");
        }
    }

    std::vector<Neighbor> neighbors(const VertexKey& v) const override {
        const auto& w = v.letters();
        std::size_t j = 0;
        while (j < w.size() && w[j] == 0) ++j;
        const bool on_ray = j == w.size();
        std::vector<Neighbor> out;
        // Parent first.
        {
            auto p = w;
            if (on_ray) {
                p.insert(p.begin(), 0);
            } else {
                p.pop_back();
            }
            out.push_back({VertexKey::word(std::move(p)), 0, 1});
        }
        for (int c = 1; c < degree_; ++c) {
            auto child = w;
            if (on_ray && j > 0 && c == 1) {
                child.pop_back();
            } else {
                child.push_back(c);
            }
            out.push_back({VertexKey::word(std::move(child)), c, 1});
        }
        return out;
    }

private:
    int degree_;
};

}  // namespace

// ---------------------------------------------------------------------------

void PeriodicLatticeSpec::validate() const {
    if (dimension < 1) throw GraphSpecError("lattice dimension must be at least 1");
    if (cells < 1) throw GraphSpecError("lattice needs at least one cell");
    if (edges.empty()) throw GraphSpecError("lattice has no edges");
    for (const auto& e : edges) {
        if (e.from_cell < 0 || e.from_cell >= cells || e.to_cell < 0 || e.to_cell >= cells) {
            throw GraphSpecError("edge cell index out of range");
        }
        if (static_cast<int>(e.offset.size()) != dimension) {
            throw GraphSpecError("edge offset has wrong dimension");
        }
        if (e.parallel_count < 1) throw GraphSpecError("parallel_count must be positive");
        if (e.from_cell == e.to_cell &&
            std::all_of(e.offset.begin(), e.offset.end(), [](auto x) { return x == 0; })) {
            throw LoopError("edge template joins a vertex to itself");
        }
    }
    auto steps = lattice_steps(*this);
    int degree = -1;
    for (int c = 0; c < cells; ++c) {
        int d = 0;
        for (auto& s : steps[c]) d += s.multiplicity;
        if (degree < 0) degree = d;
        if (d != degree) {
            throw GraphSpecError("cells have unequal degrees; the lattice is not vertex-transitive");
        }
    }
    // Connectivity: every cell at offset 0 and every unit translate of cell 0
    // must be reachable from the origin; translations then connect the rest.
    std::unordered_set<VertexKey, VertexKeyHash> targets;
    for (int c = 0; c < cells; ++c) targets.insert(VertexKey::lattice(c, std::vector<std::int64_t>(dimension, 0)));
    for (int i = 0; i < dimension; ++i) {
        std::vector<std::int64_t> e(dimension, 0);
        e[i] = 1;
        targets.insert(VertexKey::lattice(0, e));
    }
    LatticeImpl impl(*this);
    std::unordered_set<VertexKey, VertexKeyHash> seen;
    std::deque<VertexKey> queue;
    auto origin = VertexKey::lattice(0, std::vector<std::int64_t>(dimension, 0));
    seen.insert(origin);
    queue.push_back(origin);
    std::size_t found = targets.count(origin);
    constexpr std::size_t kLimit = 200000;
    while (!queue.empty() && found < targets.size() && seen.size() < kLimit) {
        auto v = queue.front();
        queue.pop_front();
        for (auto& n : impl.neighbors(v)) {
            if (seen.insert(n.vertex).second) {
                if (targets.count(n.vertex)) ++found;
                queue.push_back(n.vertex);
            }
        }
    }
    if (found < targets.size()) throw GraphSpecError("lattice is not connected");
}

void GroupPresentation::validate_structure() const {
    const auto n = generator_names.size();
    if (n == 0) throw GraphSpecError("presentation has no generators");
    if (inverse.size() != n) throw GraphSpecError("inverse table size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (inverse[i] < 0 || static_cast<std::size_t>(inverse[i]) >= n ||
            inverse[inverse[i]] != static_cast<int>(i)) {
            throw GraphSpecError("generator set is not closed under inversion");
        }
    }
    auto check_word = [n](const std::vector<std::int64_t>& w) {
        for (auto l : w) {
            if (l < 0 || static_cast<std::size_t>(l) >= n) throw GraphSpecError("unknown letter in word");
        }
    };
    for (auto& r : relators) check_word(r);
    for (auto& r : rules) {
        check_word(r.lhs);
        check_word(r.rhs);
        if (r.lhs.empty()) throw GraphSpecError("rewrite rule with empty left side");
        if (r.rhs.size() > r.lhs.size()) throw GraphSpecError("rewrite rule increases word length");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (reduce({static_cast<std::int64_t>(i)}).empty()) {
            throw GraphSpecError("generator " + generator_names[i] + " reduces to the identity");
        }
    }
}

std::vector<std::int64_t> GroupPresentation::reduce(std::vector<std::int64_t> word) const {
    const std::size_t limit = 10000 + 1000 * word.size() * word.size();
    for (std::size_t step = 0;; ++step) {
        if (step > limit) throw GraphSpecError("rewriting system does not terminate on this word");
        bool changed = false;
        for (std::size_t pos = 0; pos < word.size() && !changed; ++pos) {
            for (const auto& rule : rules) {
                if (pos + rule.lhs.size() > word.size()) continue;
                if (!std::equal(rule.lhs.begin(), rule.lhs.end(), word.begin() + pos)) continue;
                std::vector<std::int64_t> next(word.begin(), word.begin() + pos);
                next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
                next.insert(next.end(), word.begin() + pos + rule.lhs.size(), word.end());
                word = std::move(next);
                changed = true;
                break;
            }
        }
        if (!changed) return word;
    }
}

std::vector<std::int64_t> GroupPresentation::invert(const std::vector<std::int64_t>& word) const {
    std::vector<std::int64_t> out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(inverse.at(*it));
    return out;
}

int GroupPresentation::generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < generator_names.size(); ++i) {
        if (generator_names[i] == name) return static_cast<int>(i);
    }
    throw GraphSpecError("unknown generator '" + name + "'");
}

// ---------------------------------------------------------------------------

GraphHandle lattice_graph(PeriodicLatticeSpec spec, std::string id) {
    spec.validate();
    auto impl = std::make_shared<LatticeImpl>(spec);
    GraphHandle::Info info;
    info.id = id.empty() ? "lattice" : std::move(id);
    info.kind = SourceKind::lattice;
    info.simple = true;
    int degree = 0;
    for (auto& s : impl->steps()[0]) degree += s.multiplicity;
    for (auto& cell : impl->steps()) {
        for (auto& s : cell) {
            if (s.multiplicity > 1) info.simple = false;
        }
    }
    info.degree = degree;
    info.origin = VertexKey::lattice(0, std::vector<std::int64_t>(spec.dimension, 0));
    for (int c = 0; c < spec.cells; ++c) {
        info.cell_representatives.push_back(
            VertexKey::lattice(c, std::vector<std::int64_t>(spec.dimension, 0)));
    }
    info.lattice = std::move(spec);
    return GraphHandle(std::move(impl), std::move(info));
}

namespace {

GraphHandle make_word_graph(GroupPresentation p, std::vector<std::vector<std::int64_t>> extra,
                            std::string id, SourceKind kind, int validation_radius) {
    p.validate_structure();
    auto impl = std::make_shared<WordImpl>(p, extra);
    GraphHandle::Info info;
    info.id = std::move(id);
    info.kind = kind;
    info.origin = VertexKey::word({});
    info.cell_representatives = {info.origin};

    auto origin_nb = impl->neighbors(info.origin);
    int degree = 0;
    info.simple = true;
    for (auto& n : origin_nb) {
        degree += n.multiplicity;
        if (n.multiplicity > 1) info.simple = false;
    }
    info.degree = degree;

    // Empirical consistency: normal forms must make the generator action
    // invertible and every relator must trace a closed walk.
    std::unordered_set<VertexKey, VertexKeyHash> seen{info.origin};
    std::vector<VertexKey> frontier{info.origin};
    for (int r = 0; r <= validation_radius && !frontier.empty(); ++r) {
        std::vector<VertexKey> next;
        for (const auto& x : frontier) {
            for (std::size_t i = 0; i < p.generator_names.size(); ++i) {
                auto w = x.letters();
                w.push_back(static_cast<std::int64_t>(i));
                auto y = p.reduce(std::move(w));
                auto back = y;
                back.push_back(p.inverse[i]);
                if (p.reduce(std::move(back)) != x.letters()) {
                    throw GraphSpecError("rewriting system is inconsistent at " + x.to_string());
                }
                if (r < validation_radius) {
                    auto key = VertexKey::word(std::move(y));
                    if (seen.insert(key).second) next.push_back(std::move(key));
                }
            }
            for (const auto& rel : p.relators) {
                auto w = x.letters();
                w.insert(w.end(), rel.begin(), rel.end());
                if (p.reduce(std::move(w)) != x.letters()) {
                    throw GraphSpecError("relator does not close at " + x.to_string());
                }
            }
            auto nb = impl->neighbors(x);
            int d = 0;
            for (auto& n : nb) d += n.multiplicity;
            if (d != degree) throw GraphSpecError("degree differs at " + x.to_string());
        }
        frontier = std::move(next);
    }
    info.presentation = std::move(p);
    info.extra_words = std::move(extra);
    return GraphHandle(std::move(impl), std::move(info));
}

}  // namespace

GraphHandle cayley_graph(GroupPresentation presentation, std::string id, int validation_radius) {
    return make_word_graph(std::move(presentation), {}, id.empty() ? "cayley" : std::move(id),
                           SourceKind::presentation, validation_radius);
}

GraphHandle regular_tree(int degree) {
    if (degree < 2) throw CatalogError("tree degree must be at least 2");
    // Free product of `degree` copies of Z/2: every generator is an involution.
    GroupPresentation p;
    for (int i = 0; i < degree; ++i) {
        p.generator_names.push_back("s" + std::to_string(i + 1));
        p.inverse.push_back(i);
        p.relators.push_back({i, i});
        p.rules.push_back({{i, i}, {}});
    }
    auto g = make_word_graph(std::move(p), {}, "tree(" + std::to_string(degree) + ")",
                             SourceKind::presentation, 4);
    auto info = g.info();
    info.girth = GraphHandle::kAcyclic;
    return g.with_info(std::move(info));
}

GraphHandle tree_with_end(int degree) {
    if (degree < 2) throw CatalogError("tree degree must be at least 2");
    GraphHandle::Info info;
    info.id = "tree-with-end(" + std::to_string(degree) + ")";
    info.kind = SourceKind::tree_with_end;
    info.degree = degree;
    info.simple = true;
    info.girth = GraphHandle::kAcyclic;
    info.origin = VertexKey::word({});
    info.cell_representatives = {info.origin};
    info.tree_branching = degree - 1;
    return GraphHandle(std::make_shared<TreeWithEndImpl>(degree), std::move(info));
}

namespace {

GraphHandle zd(int d) {
    if (d < 1) throw CatalogError("zd dimension must be at least 1");
    PeriodicLatticeSpec spec;
    spec.dimension = d;
    spec.cells = 1;
    for (int i = 0; i < d; ++i) {
        std::vector<std::int64_t> e(d, 0);
        e[i] = 1;
        spec.edges.push_back({0, 0, e, 1});
    }
    auto g = lattice_graph(std::move(spec), "zd(" + std::to_string(d) + ")");
    auto info = g.info();
    info.girth = d == 1 ? GraphHandle::kAcyclic : 4;
    return g.with_info(std::move(info));
}

GraphHandle ladder() {
    PeriodicLatticeSpec spec;
    spec.dimension = 1;
    spec.cells = 2;
    spec.edges = {{0, 0, {1}, 1}, {1, 1, {1}, 1}, {0, 1, {0}, 1}};
    auto g = lattice_graph(std::move(spec), "ladder");
    auto info = g.info();
    info.girth = 4;
    return g.with_info(std::move(info));
}

GraphHandle square_octagon() {
    // Four cells per fundamental domain: the left, bottom, right and top
    // corners of one small square. Square sides alternate s1/s2, the
    // connecting edges between neighbouring squares are s3.
    PeriodicLatticeSpec spec;
    spec.dimension = 2;
    spec.cells = 4;
    spec.edges = {
        {0, 1, {0, 0}, 1}, {1, 2, {0, 0}, 1}, {2, 3, {0, 0}, 1}, {3, 0, {0, 0}, 1},
        {2, 0, {1, 0}, 1}, {3, 1, {0, 1}, 1},
    };
    auto g = lattice_graph(std::move(spec), "square-octagon");
    auto info = g.info();
    info.girth = 4;
    return g.with_info(std::move(info));
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"zd(d)", "ladder", "square-octagon", "tree(D)", "tree-with-end(D)"};
}

GraphHandle catalog(const std::string& name) {
    static const std::regex param(R"(^([a-z\-]+)(?:\((\d+)\)|:(\d+))$)");
    if (name == "ladder") return ladder();
    if (name == "square-octagon") return square_octagon();
    std::smatch m;
    if (std::regex_match(name, m, param)) {
        const std::string base = m[1];
        const std::string num = m[2].matched ? m[2].str() : m[3].str();
        if (num.size() > 4) throw CatalogError("catalog parameter too large in '" + name + "'");
        const int k = std::stoi(num);
        if (base == "zd") return zd(k);
        if (base == "tree") return regular_tree(k);
        if (base == "tree-with-end") return tree_with_end(k);
    }
    throw CatalogError("unknown catalog graph '" + name + "'");
}

std::vector<std::size_t> ball_layers(const GraphHandle& g, const VertexKey& v, int r) {
    if (r < 0) throw ParameterError("ball radius must be non-negative");
    g.validate(v);
    std::unordered_set<VertexKey, VertexKeyHash> seen{v};
    std::vector<VertexKey> frontier{v};
    std::vector<std::size_t> layers{1};
    for (int d = 0; d < r; ++d) {
        std::vector<VertexKey> next;
        for (const auto& x : frontier) {
            for (auto& n : g.neighbors(x)) {
                if (seen.insert(n.vertex).second) next.push_back(n.vertex);
            }
        }
        layers.push_back(next.size());
        frontier = std::move(next);
    }
    return layers;
}

std::vector<VertexKey> ball(const GraphHandle& g, const VertexKey& v, int r) {
    if (r < 0) throw ParameterError("ball radius must be non-negative");
    g.validate(v);
    std::unordered_set<VertexKey, VertexKeyHash> seen{v};
    std::vector<VertexKey> frontier{v};
    for (int d = 0; d < r; ++d) {
        std::vector<VertexKey> next;
        for (const auto& x : frontier) {
            for (auto& n : g.neighbors(x)) {
                if (seen.insert(n.vertex).second) next.push_back(n.vertex);
            }
        }
        frontier = std::move(next);
    }
    std::vector<VertexKey> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

GraphHandle augment(const GraphHandle& g, const VertexKey& u, const VertexKey& v) {
    g.validate(u);
    g.validate(v);
    if (u == v) throw LoopError("chord endpoints coincide; loops are not allowed");
    const std::string id = g.id() + "+chord(" + u.to_string() + "," + v.to_string() + ")";
    if (const auto* spec = g.lattice_spec()) {
        PeriodicLatticeSpec aug = *spec;
        aug.edges.push_back({u.cell(), v.cell(), sub_offsets(v.offset(), u.offset()), 1});
        try {
            aug.validate();
        } catch (const GraphSpecError& e) {
            throw ParameterError(std::string("augmentation rejected: ") + e.what());
        }
        auto h = lattice_graph(std::move(aug), id);
        auto info = h.info();
        info.kind = SourceKind::augmented;
        return h.with_info(std::move(info));
    }
    if (const auto* p = g.presentation()) {
        auto w = p->reduce([&] {
            auto x = p->invert(u.letters());
            x.insert(x.end(), v.letters().begin(), v.letters().end());
            return x;
        }());
        auto extra = g.info().extra_words;
        extra.push_back(w);
        auto ww = w;
        ww.insert(ww.end(), w.begin(), w.end());
        if (!p->reduce(ww).empty()) extra.push_back(p->reduce(p->invert(w)));
        return make_word_graph(*p, std::move(extra), id, SourceKind::augmented, 4);
    }
    throw NotImplementedError("augmentation is supported for lattices and Cayley graphs only");
}

std::int64_t tree_level(const VertexKey& v) {
    std::int64_t ups = 0, downs = 0;
    for (auto l : v.letters()) (l == 0 ? ups : downs) += 1;
    return downs - ups;
}

VertexKey tree_level_representative(std::int64_t level) {
    if (level <= 0) return VertexKey::word(std::vector<std::int64_t>(static_cast<std::size_t>(-level), 0));
    return VertexKey::word(std::vector<std::int64_t>(static_cast<std::size_t>(level), 1));
}

}  // namespace saw
