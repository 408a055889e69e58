#include "saw/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <unistd.h>

#include "saw/bounds.hpp"
#include "saw/certificate.hpp"
#include "saw/errors.hpp"
#include "saw/events.hpp"
#include "saw/export.hpp"
#include "saw/graph_spec.hpp"
#include "saw/quotient.hpp"
#include "saw/saw_engine.hpp"

namespace saw::cli {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

struct Config {
    std::string graph;
    std::string graph_file;
    std::string sublattice;
    std::string action;
    std::string start;
    int n = -1;
    int workers = 1;
    std::string format = "json";
    std::string output;
    bool deterministic = false;
    std::string strategy = "automatic";
    std::uint64_t node_budget = 0;
    std::string report = "all";
    int radius = 4;
    std::vector<int> ks;
    std::vector<std::string> ms;
    std::string kind;
    std::string value;
    int budget = 20;
    std::string mu_exact;
    std::string mu_lower;
    std::string bound;
    std::string certificate;
    std::string to;
    bool certify = false;
};

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"catalog", "List the built-in graphs"},
    {"count", "Count n-step self-avoiding walks (directed ones on a quotient)"},
    {"quotient", "Build a quotient graph and report orbits, multiplicities and type"},
    {"type", "Report the type and the shortest orbit-mate distance of a quotient"},
    {"events", "Count directed SAWs by occurrences of the cycle events E_k^m"},
    {"bounds", "Emit a lower-bound sequence b_n for the connective constant"},
    {"ratio", "Search for a certificate that the quotient's growth rate is strictly smaller"},
    {"verify", "Replay a ratio certificate from its raw counts"},
    {"augment", "Add the orbit of a chord to a graph and count SAWs on the result"},
    {"docs", "Print the help of every subcommand as markdown"},
};

void add_output(CLI::App* sub, Config& c, const std::vector<std::string>& formats) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    sub->add_option("--output", c.output, "Write the result to this file (atomically) instead of stdout");
    sub->add_flag("--deterministic", c.deterministic, "Omit the timestamp field");
}

void add_workers(CLI::App* sub, Config& c) {
    sub->add_option("--workers", c.workers, "Worker threads (falls back to SAW_WORKERS)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_graph(CLI::App* sub, Config& c) {
    auto* g = sub->add_option("--graph", c.graph, "Catalog name (zd:d, ladder, square-octagon, tree:D, tree-with-end:D) or spec file");
    auto* f = sub->add_option("--graph-file", c.graph_file, "Graph spec file")->check(CLI::ExistingFile);
    g->excludes(f);
}

void add_action(CLI::App* sub, Config& c) {
    auto* s = sub->add_option("--sublattice", c.sublattice, "Sublattice generators, rows separated by ';' (e.g. \"2 0; 0 2\")");
    auto* a = sub->add_option("--action", c.action, "Named action: child-swap or child-swap:k");
    s->excludes(a);
}

void build(CLI::App& app, Config& c) {
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, desc] : kSubcommands) subs[name] = app.add_subcommand(name, desc);

    add_output(subs["catalog"], c, {"json", "text"});

    auto* count = subs["count"];
    add_graph(count, c);
    add_action(count, c);
    count->add_option("--n", c.n, "Maximal walk length")->required()->check(CLI::NonNegativeNumber);
    count->add_option("--start", c.start, "Start vertex key (default: the graph origin)");
    count->add_option("--strategy", c.strategy, "automatic uses closed forms when they apply")
        ->check(CLI::IsMember({"automatic", "enumerate"}))
        ->capture_default_str();
    count->add_option("--node-budget", c.node_budget, "Stop after this many search nodes (0: unlimited)");
    add_workers(count, c);
    add_output(count, c, {"json", "csv"});

    for (const char* name : {"quotient", "type"}) {
        auto* q = subs[name];
        add_graph(q, c);
        add_action(q, c);
        if (std::string(name) == "quotient") {
            q->add_option("--report", c.report, "all or type")
                ->check(CLI::IsMember({"all", "type"}))
                ->capture_default_str();
        }
        q->add_option("--radius", c.radius, "Ball radius of the representative-independence check")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        add_output(q, c, {"json", "text"});
    }

    auto* ev = subs["events"];
    add_graph(ev, c);
    add_action(ev, c);
    ev->add_option("--n", c.n, "Maximal walk length")->required()->check(CLI::NonNegativeNumber);
    ev->add_option("--k", c.ks, "Thresholds k (default: the cycle length)")->delimiter(',');
    ev->add_option("--m", c.ms, "Windows m, or 'whole' for E_k (default: whole)")->delimiter(',');
    add_workers(ev, c);
    add_output(ev, c, {"json", "csv"});

    auto* bd = subs["bounds"];
    add_graph(bd, c);
    bd->add_option("--n", c.n, "Number of terms")->required()->check(CLI::NonNegativeNumber);
    bd->add_option("--kind", c.kind, "bridge (Z^d only), degree or constant (default: bridge on Z^d, else degree)")
        ->check(CLI::IsMember({"bridge", "degree", "constant"}));
    bd->add_option("--value", c.value, "Value of a constant sequence");
    add_workers(bd, c);
    add_output(bd, c, {"json", "csv"});

    auto* ratio = subs["ratio"];
    add_graph(ratio, c);
    add_action(ratio, c);
    ratio->add_option("--budget", c.budget, "Largest walk length to compute")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    auto* me = ratio->add_option("--mu-exact", c.mu_exact, "Known connective constant; sets b_n to it");
    auto* ml = ratio->add_option("--mu-lower", c.mu_lower, "Known lower bound on the connective constant");
    auto* mb = ratio->add_option("--bound", c.bound, "Computed lower bounds: bridge (Z^d) or degree")
                   ->check(CLI::IsMember({"bridge", "degree"}));
    me->excludes(ml)->excludes(mb);
    ml->excludes(mb);
    add_workers(ratio, c);
    add_output(ratio, c, {"json"});

    auto* vf = subs["verify"];
    vf->add_option("--certificate,certificate", c.certificate, "Certificate JSON file")->required()->check(CLI::ExistingFile);
    add_output(vf, c, {"json"});

    auto* au = subs["augment"];
    add_graph(au, c);
    au->add_option("--start", c.start, "First chord endpoint (default: the origin)");
    au->add_option("--to", c.to, "Second chord endpoint")->required();
    au->add_option("--n", c.n, "Also count SAWs up to this length")->check(CLI::NonNegativeNumber);
    au->add_flag("--certify", c.certify, "Certify strict growth (not implemented)");
    add_workers(au, c);
    add_output(au, c, {"json", "csv"});
}

GraphHandle graph_of(const Config& c) {
    if (!c.graph_file.empty()) return load_graph_spec(c.graph_file);
    if (c.graph.empty()) throw UsageError("one of --graph or --graph-file is required");
    return resolve_graph(c.graph);
}

std::optional<SubgroupAction> action_of(const Config& c) {
    if (!c.sublattice.empty()) return SubgroupAction::sublattice(parse_rows(c.sublattice));
    if (!c.action.empty()) return SubgroupAction::named(c.action);
    return std::nullopt;
}

QuotientGraph quotient_of(const Config& c) {
    auto a = action_of(c);
    if (!a) throw UsageError("one of --sublattice or --action is required");
    return build_quotient(graph_of(c), *a);
}

CountOptions counting(const Config& c) {
    CountOptions o;
    o.workers = c.workers;
    if (c.node_budget > 0) o.node_budget = c.node_budget;
    o.strategy = c.strategy == "enumerate" ? CountOptions::Strategy::enumerate : CountOptions::Strategy::automatic;
    return o;
}

// Z^d as catalogued; bridges are defined there only.
std::optional<int> zd_dimension(const GraphHandle& g) {
    const std::string& id = g.id();
    if (id.rfind("zd(", 0) != 0 || id.back() != ')') return std::nullopt;
    return std::stoi(id.substr(3, id.size() - 4));
}

LowerBoundSequence bounds_of(const GraphHandle& g, const std::string& kind, const std::string& value, int n,
                             const CountOptions& opts) {
    if (kind == "bridge") {
        const auto d = zd_dimension(g);
        if (!d) throw UsageError("bridge bounds are available on zd:d only");
        return bridge_bound(*d, n, opts);
    }
    if (kind == "degree") return degree_bound(g, n);
    if (value.empty()) throw UsageError("--kind constant needs --value");
    return constant_bound(g.id(), value, n);
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string dump(nlohmann::json j, const Config& c) {
    if (!c.deterministic && !j.contains("created")) j["created"] = timestamp();
    return j.dump(2) + "\n";
}

void emit(const std::string& text, const Config& c, std::ostream& out) {
    if (c.output.empty()) {
        out << text;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(c.output);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw UsageError("cannot write '" + tmp.string() + "'");
        f << text;
        f.flush();
        if (!f) throw UsageError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw UsageError("cannot move output into place at '" + target.string() + "'");
    }
}

int cmd_catalog(const Config& c, std::ostream& out) {
    if (c.format == "text") {
        std::string s;
        for (const auto& n : catalog_names()) s += n + "\n";
        emit(s, c, out);
    } else {
        emit(dump({{"graphs", catalog_names()}}, c), c, out);
    }
    return kOk;
}

int cmd_count(const Config& c, std::ostream& out) {
    const auto opts = counting(c);
    WalkCounts w;
    if (auto a = action_of(c)) {
        const auto q = build_quotient(graph_of(c), *a);
        const VertexKey orbit = c.start.empty() ? q.base_orbit() : q.orbit_of(VertexKey::parse(c.start));
        w = count_directed_saws(q, orbit, c.n, opts);
    } else {
        const auto g = graph_of(c);
        const VertexKey v0 = c.start.empty() ? g.origin() : VertexKey::parse(c.start);
        w = count_saws(g, v0, c.n, opts);
    }
    emit(c.format == "csv" ? to_csv(w) : dump(to_json(w), c), c, out);
    return kOk;
}

int cmd_quotient(const Config& c, const std::string& report, std::ostream& out) {
    auto a = action_of(c);
    if (!a) throw UsageError("one of --sublattice or --action is required");
    const auto g = graph_of(c);
    const auto q = build_quotient(g, *a);
    const auto t = classify_type(q);
    if (report == "type") {
        if (c.format == "text") {
            emit("quotient " + q.id() + "\ntype " + std::to_string(t.type) + "\nell " + std::to_string(t.length) + "\n",
                 c, out);
        } else {
            auto j = to_json(t);
            j["quotient"] = q.id();
            emit(dump(j, c), c, out);
        }
        return kOk;
    }
    const bool independent = check_representative_independence(g, *a, q, c.radius);
    const auto j = quotient_json(q, t, independent);
    if (c.format == "text") {
        std::ostringstream s;
        s << "quotient " << q.id() << "\nfinite " << (q.finite() ? "yes" : "no") << "\nsymmetric "
          << (j["symmetric"].get<bool>() ? "yes" : "no") << "\nrepresentative-independent "
          << (independent ? "yes" : "no") << "\ntype " << t.type << "\nell " << t.length << '\n';
        if (q.finite()) {
            s << "orbits";
            for (const auto& o : q.orbits()) s << ' ' << o.to_string();
            s << "\nmultiplicity\n";
            for (const auto& row : j["multiplicity"]) {
                for (std::size_t i = 0; i < row.size(); ++i) s << (i ? " " : "  ") << row[i].get<int>();
                s << '\n';
            }
            s << "loops";
            for (const auto& l : j["loops"]) s << ' ' << l.get<int>();
            s << '\n';
        }
        emit(s.str(), c, out);
    } else {
        emit(dump(j, c), c, out);
    }
    return kOk;
}

int cmd_events(const Config& c, std::ostream& out) {
    const auto q = quotient_of(c);
    const auto t = classify_type(q);
    const auto family = build_cycle_family(q, t, c.n + t.length);
    std::vector<int> ks = c.ks.empty() ? std::vector<int>{t.length} : c.ks;
    std::vector<int> ms;
    for (const auto& m : c.ms) {
        if (m == "whole") {
            ms.push_back(kWholeWalk);
            continue;
        }
        try {
            std::size_t used = 0;
            const int v = std::stoi(m, &used);
            if (used != m.size() || v < 0) throw std::invalid_argument(m);
            ms.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("--m expects non-negative integers or 'whole', got '" + m + "'");
        }
    }
    if (ms.empty()) ms.push_back(kWholeWalk);
    const auto p = event_profile(q, family, ks, ms, c.n, counting(c));
    if (c.format == "csv") {
        emit(to_csv(p), c, out);
    } else {
        auto j = to_json(p);
        j["quotient"] = q.id();
        j["ell"] = std::to_string(t.length);
        emit(dump(j, c), c, out);
    }
    return kOk;
}

int cmd_bounds(const Config& c, std::ostream& out) {
    const auto g = graph_of(c);
    std::string kind = c.kind;
    if (kind.empty()) kind = zd_dimension(g) ? "bridge" : "degree";
    const auto b = bounds_of(g, kind, c.value, c.n, counting(c));
    emit(c.format == "csv" ? to_csv(b) : dump(to_json(b), c), c, out);
    return kOk;
}

int cmd_ratio(const Config& c, std::ostream& out) {
    auto a = action_of(c);
    if (!a) throw UsageError("one of --sublattice or --action is required");
    const auto g = graph_of(c);
    const auto q = build_quotient(g, *a);
    const auto t = classify_type(q);
    const auto family = build_cycle_family(q, t, c.budget + t.length);
    LowerBoundSequence b;
    if (!c.mu_exact.empty()) {
        b = constant_bound(g.id(), c.mu_exact, c.budget, "exact");
    } else if (!c.mu_lower.empty()) {
        b = constant_bound(g.id(), c.mu_lower, c.budget, "constant");
    } else {
        b = bounds_of(g, c.bound.empty() ? "degree" : c.bound, "", c.budget, counting(c));
    }
    CertifyOptions opts;
    opts.budget = c.budget;
    opts.counting = counting(c);
    const auto cert = certify_ratio(g, q, family, b, opts);
    auto j = to_json(cert, c.deterministic);
    emit(j.dump(2) + "\n", c, out);
    return cert.status == "certified" ? kOk : kInconclusive;
}

int cmd_verify(const Config& c, std::ostream& out) {
    std::ifstream in(c.certificate);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("certificate is not valid JSON: ") + e.what());
    }
    const auto cert = certificate_from_json(j);
    const auto rep = verify_certificate(cert);
    nlohmann::json r;
    r["certificate"] = c.certificate;
    r["certified"] = rep.certified;
    auto checks = nlohmann::json::array();
    for (const auto& x : rep.checks) {
        checks.push_back({{"name", x.name}, {"relation", x.relation}, {"lhs", x.lhs}, {"rhs", x.rhs}, {"holds", x.holds}});
    }
    r["checks"] = checks;
    r["failures"] = rep.failures;
    emit(dump(r, c), c, out);
    return rep.certified ? kOk : kComputation;
}

int cmd_augment(const Config& c, std::ostream& out) {
    if (c.certify) {
        throw NotImplementedError("certified strict growth under augmentation is not implemented");
    }
    const auto g = graph_of(c);
    const VertexKey u = c.start.empty() ? g.origin() : VertexKey::parse(c.start);
    const auto h = augment(g, u, VertexKey::parse(c.to));
    if (c.n < 0) {
        nlohmann::json j;
        j["graph"] = h.id();
        j["degree"] = std::to_string(h.degree());
        j["simple"] = h.is_simple();
        emit(dump(j, c), c, out);
        return kOk;
    }
    const auto w = count_saws(h, h.origin(), c.n, counting(c));
    emit(c.format == "csv" ? to_csv(w) : dump(to_json(w), c), c, out);
    return kOk;
}

int workers_from_env() {
    const char* env = std::getenv("SAW_WORKERS");
    if (env == nullptr || *env == '\0') return 1;
    const std::string text(env);
    try {
        std::size_t used = 0;
        const int w = std::stoi(text, &used);
        if (used == text.size() && w >= 1) return w;
    } catch (const std::exception&) {
    }
    throw UsageError("SAW_WORKERS must be a positive integer, got '" + text + "'");
}

int dispatch(CLI::App& app, Config& c, std::ostream& out) {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (sub->get_option_no_throw("--workers") != nullptr && sub->count("--workers") == 0) c.workers = workers_from_env();
    if (name == "catalog") return cmd_catalog(c, out);
    if (name == "count") return cmd_count(c, out);
    if (name == "quotient") return cmd_quotient(c, c.report, out);
    if (name == "type") return cmd_quotient(c, "type", out);
    if (name == "events") return cmd_events(c, out);
    if (name == "bounds") return cmd_bounds(c, out);
    if (name == "ratio") return cmd_ratio(c, out);
    if (name == "verify") return cmd_verify(c, out);
    if (name == "augment") return cmd_augment(c, out);
    if (name == "docs") {
        emit(docs_markdown(), c, out);
        return kOk;
    }
    throw UsageError("unknown subcommand '" + name + "'");
}

}  // namespace

std::vector<std::vector<std::int64_t>> parse_rows(const std::string& text) {
    std::vector<std::vector<std::int64_t>> rows;
    std::stringstream all(text);
    std::string row;
    while (std::getline(all, row, ';')) {
        for (char& ch : row) {
            if (ch == ',') ch = ' ';
        }
        std::istringstream in(row);
        std::vector<std::int64_t> r;
        std::string tok;
        while (in >> tok) {
            try {
                std::size_t used = 0;
                r.push_back(std::stoll(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw UsageError("bad sublattice entry '" + tok + "'");
            }
        }
        if (r.empty()) throw UsageError("empty sublattice row in '" + text + "'");
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw UsageError("empty sublattice");
    return rows;
}

std::vector<std::string> subcommand_names() {
    std::vector<std::string> out;
    for (const auto& [name, desc] : kSubcommands) out.push_back(name);
    return out;
}

std::string subcommand_help(const std::string& name) {
    std::ostringstream out, err;
    run({name, "--help"}, out, err);
    return out.str();
}

std::string docs_markdown() {
    std::string s = "# saw command reference\n\n";
    s += "Exit codes: 0 success, 2 usage or input error, 3 inconclusive certificate, 4 computation error.\n";
    for (const auto& name : subcommand_names()) {
        s += "\n## saw " + name + "\n\n```\n" + subcommand_help(name) + "```\n";
    }
    return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Exact self-avoiding walk counts, quotients and ratio certificates", "saw"};
    build(app, c);
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }
    try {
        return dispatch(app, c, out);
    } catch (const UsageError& e) {
        err << "saw: " << e.what() << '\n';
        return kUsage;
    } catch (const NoContractionError& e) {
        err << "saw: " << e.what() << '\n';
        return kComputation;
    } catch (const OverflowError& e) {
        err << "saw: " << e.what() << '\n';
        return kComputation;
    } catch (const BudgetExceededError& e) {
        err << "saw: " << e.what() << '\n';
        return kComputation;
    } catch (const NotImplementedError& e) {
        err << "saw: not implemented: " << e.what() << '\n';
        return kComputation;
    } catch (const Error& e) {
        // Remaining library errors all reject the input.
        err << "saw: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "saw: internal error: " << e.what() << '\n';
        return kComputation;
    }
}

}  // namespace saw::cli
