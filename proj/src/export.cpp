#include "saw/export.hpp"

#include <cstdio>
#include <sstream>

namespace saw {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_csv(const WalkCounts& w) {
    std::ostringstream out;
    out << "n,sigma_n,a_n\n";
    const auto a = w.growth();
    for (int n = 1; n <= w.n_max(); ++n) out << n << ',' << w.counts[n] << ',' << format_double(a[n]) << '\n';
    return out.str();
}

nlohmann::json to_json(const WalkCounts& w) {
    nlohmann::json j;
    j["graph"] = w.graph_id;
    j["start"] = w.start.to_string();
    j["directed"] = w.directed;
    j["truncated"] = w.truncated;
    j["method"] = w.method;
    j["n_max"] = std::to_string(w.n_max());
    auto counts = nlohmann::json::array();
    auto roots = nlohmann::json::array();
    const auto a = w.growth();
    for (int n = 0; n <= w.n_max(); ++n) {
        counts.push_back(w.counts[n].str());
        roots.push_back(a[n]);
    }
    j["sigma"] = counts;
    j["a"] = roots;
    return j;
}

std::string to_csv(const LowerBoundSequence& b) {
    std::ostringstream out;
    out << "n,beta_n,b_n,provenance\n";
    for (int n = 1; n <= b.n_max(); ++n) {
        const auto& e = b.entries[n - 1];
        out << n << ',' << (e.provenance == "bridge" && e.source_n == n ? e.raw : "") << ','
            << format_double(e.value) << ',' << e.provenance << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const LowerBoundSequence& b) {
    nlohmann::json j;
    j["graph"] = b.graph_id;
    auto entries = nlohmann::json::array();
    for (int n = 1; n <= b.n_max(); ++n) {
        const auto& e = b.entries[n - 1];
        entries.push_back({{"n", std::to_string(n)},
                           {"b", e.value},
                           {"provenance", e.provenance},
                           {"raw", e.raw},
                           {"source_n", std::to_string(e.source_n)}});
    }
    j["entries"] = entries;
    return j;
}

nlohmann::json to_json(const TypeReport& t) {
    nlohmann::json j;
    j["type"] = std::to_string(t.type);
    j["ell"] = std::to_string(t.length);
    auto w = nlohmann::json::array();
    for (const auto& v : t.witness) w.push_back(v.to_string());
    j["witness"] = w;
    return j;
}

nlohmann::json quotient_json(const QuotientGraph& q, const TypeReport& t, bool independent) {
    nlohmann::json j;
    j["quotient"] = q.id();
    j["graph"] = q.graph().id();
    j["action"] = q.action().describe();
    j["degree"] = std::to_string(q.degree());
    j["finite"] = q.finite();
    j["symmetric"] = check_symmetry(q);
    j["representative_independent"] = independent;
    j["type"] = to_json(t);
    if (q.finite()) {
        const auto& orbits = q.orbits();
        j["orbit_count"] = std::to_string(orbits.size());
        auto names = nlohmann::json::array();
        auto matrix = nlohmann::json::array();
        auto loops = nlohmann::json::array();
        for (const auto& o : orbits) {
            names.push_back(o.to_string());
            std::vector<int> row(orbits.size(), 0);
            for (const auto& [w, m] : q.out_multiplicities(o)) row[q.orbit_index(w)] = m;
            matrix.push_back(row);
            loops.push_back(q.loop_count(o));
        }
        j["orbits"] = names;
        j["multiplicity"] = matrix;
        j["loops"] = loops;
    } else {
        j["orbit_count"] = nullptr;
        auto base = nlohmann::json::array();
        for (const auto& o : q.base_orbits()) {
            nlohmann::json e;
            e["orbit"] = o.to_string();
            auto outs = nlohmann::json::array();
            for (const auto& [w, m] : q.out_multiplicities(o)) outs.push_back({{"to", w.to_string()}, {"multiplicity", m}});
            e["out"] = outs;
            e["loops"] = q.loop_count(o);
            base.push_back(e);
        }
        j["base_orbits"] = base;
    }
    return j;
}

namespace {

std::string m_name(int m) { return m == kWholeWalk ? "whole" : std::to_string(m); }

}  // namespace

std::string to_csv(const EventProfile& p) {
    std::ostringstream out;
    out << "n,k,m,r,count\n";
    for (int n = 0; n <= p.n_max; ++n) {
        for (int k : p.ks) {
            for (int m : p.ms) {
                for (int r = 0; r <= n + 1; ++r) {
                    out << n << ',' << k << ',' << m_name(m) << ',' << r << ',' << p.count(n, k, m, r) << '\n';
                }
            }
        }
    }
    return out.str();
}

nlohmann::json to_json(const EventProfile& p) {
    nlohmann::json j;
    j["n_max"] = std::to_string(p.n_max);
    auto ks = nlohmann::json::array();
    for (int k : p.ks) ks.push_back(std::to_string(k));
    auto ms = nlohmann::json::array();
    for (int m : p.ms) ms.push_back(m_name(m));
    j["k"] = ks;
    j["m"] = ms;
    // counts[n][k][m][r] = σ⃗_n(r, E_k^m)
    auto rows = nlohmann::json::array();
    for (int n = 0; n <= p.n_max; ++n) {
        for (int k : p.ks) {
            for (int m : p.ms) {
                auto by_r = nlohmann::json::array();
                for (int r = 0; r <= n + 1; ++r) by_r.push_back(p.count(n, k, m, r).str());
                rows.push_back({{"n", std::to_string(n)}, {"k", std::to_string(k)}, {"m", m_name(m)}, {"by_r", by_r}});
            }
        }
    }
    j["counts"] = rows;
    if (std::find(p.ms.begin(), p.ms.end(), kWholeWalk) != p.ms.end()) {
        auto lam = nlohmann::json::object();
        for (int k : p.ks) {
            auto v = nlohmann::json::array();
            for (int n = 1; n <= p.n_max; ++n) v.push_back(p.lambda_upper(k, n));
            lam[std::to_string(k)] = v;
        }
        j["lambda_upper"] = lam;
    }
    return j;
}

}  // namespace saw
