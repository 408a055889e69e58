#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "saw/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result saw_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = saw::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("saw-cli-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("count as CSV") {
    const auto r = saw_run({"count", "--graph", "ladder", "--n", "10", "--format", "csv"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,sigma_n,a_n");
    std::getline(in, line);
    CHECK(line.rfind("1,3,", 0) == 0);
    int rows = 1;
    std::string last;
    while (std::getline(in, line)) {
        ++rows;
        last = line;
    }
    CHECK(rows == 10);
    CHECK(last.rfind("10,430,", 0) == 0);
}

TEST_CASE("count as JSON keeps integers as strings") {
    const auto r = saw_run({"count", "--graph", "zd:2", "--n", "5", "--deterministic"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["sigma"][5] == "284");
    CHECK(j["n_max"] == "5");
    const auto d = saw_run({"count", "--graph", "zd:2", "--sublattice", "2 0; 0 2", "--n", "4", "--deterministic"});
    REQUIRE(d.code == 0);
    CHECK(nlohmann::json::parse(d.out)["sigma"][3] == "16");
}

TEST_CASE("quotient type report") {
    const auto r = saw_run({"quotient", "--graph", "zd:1", "--sublattice", "3", "--report", "type", "--format", "text"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("type 3\n") != std::string::npos);
    CHECK(r.out.find("ell 3\n") != std::string::npos);
    const auto j = saw_run({"type", "--graph", "zd:1", "--sublattice", "2", "--deterministic"});
    CHECK(nlohmann::json::parse(j.out)["type"] == "2");
    const auto all = saw_run({"quotient", "--graph", "zd:2", "--sublattice", "2,0;0,2", "--deterministic"});
    REQUIRE(all.code == 0);
    const auto q = nlohmann::json::parse(all.out);
    CHECK(q["orbit_count"] == "4");
    CHECK(q["symmetric"] == true);
    CHECK(q["multiplicity"][0] == nlohmann::json::array({0, 2, 2, 0}));
}

TEST_CASE("ratio and verify") {
    const auto path = scratch("z3.json");
    const auto r = saw_run({"ratio", "--graph", "zd:1", "--sublattice", "3", "--mu-exact", "1", "--budget", "20",
                            "--deterministic", "--output", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const auto j = nlohmann::json::parse(slurp(path));
    CHECK(j["status"] == "certified");
    CHECK(j["parameters"]["R_final"].get<double>() < 1.0);
    const auto v = saw_run({"verify", "--certificate", path.string()});
    CHECK(v.code == 0);
    CHECK(nlohmann::json::parse(v.out)["certified"] == true);

    auto bad = j;
    bad["counts"]["sigma_event"][2] = "9";
    const auto bad_path = scratch("bad.json");
    std::ofstream(bad_path) << bad.dump();
    CHECK(saw_run({"verify", bad_path.string()}).code == 4);

    std::ofstream(scratch("junk.json")) << "{not json";
    CHECK(saw_run({"verify", scratch("junk.json").string()}).code == 2);
}

TEST_CASE("exit codes") {
    CHECK(saw_run({}).code == 2);
    CHECK(saw_run({"frobnicate"}).code == 2);
    CHECK(saw_run({"count", "--graph", "ladder"}).code == 2);
    CHECK(saw_run({"count", "--graph", "nowhere", "--n", "3"}).code == 2);
    CHECK(saw_run({"count", "--n", "3"}).code == 2);
    CHECK(saw_run({"count", "--graph", "ladder", "--n", "-1"}).code == 2);
    CHECK(saw_run({"quotient", "--graph", "zd:1", "--sublattice", "0"}).code == 2);
    CHECK(saw_run({"quotient", "--graph", "zd:1", "--sublattice", "a"}).code == 2);
    CHECK(saw_run({"quotient", "--graph", "zd:1"}).code == 2);
    CHECK(saw_run({"ratio", "--graph", "zd:1", "--sublattice", "3", "--mu-exact", "1", "--budget", "0"}).code == 3);
    CHECK(saw_run({"augment", "--graph", "zd:2", "--to", "L0:1,1", "--certify"}).code == 4);
    CHECK(saw_run({"ratio", "--graph", "zd:1", "--sublattice", "3", "--mu-exact", "1", "--mu-lower", "1"}).code == 2);
    const auto e = saw_run({"count", "--graph", "nowhere", "--n", "3"});
    CHECK(e.out.empty());
    CHECK_FALSE(e.err.empty());
}

TEST_CASE("augment counts the triangular lattice") {
    const auto r = saw_run({"augment", "--graph", "zd:2", "--to", "L0:1,1", "--n", "3", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("1,6,") != std::string::npos);
    CHECK(r.out.find("3,138,") != std::string::npos);
}

TEST_CASE("bounds and events") {
    const auto b = saw_run({"bounds", "--graph", "zd:2", "--n", "4", "--format", "csv"});
    REQUIRE(b.code == 0);
    CHECK(b.out.find("n,beta_n,b_n,provenance\n") == 0);
    CHECK(b.out.find("\n2,3,") != std::string::npos);
    CHECK(saw_run({"bounds", "--graph", "ladder", "--n", "4", "--kind", "bridge"}).code == 2);
    CHECK(saw_run({"bounds", "--graph", "ladder", "--n", "4"}).code == 0);

    const auto e = saw_run({"events", "--graph", "zd:1", "--sublattice", "3", "--n", "3", "--k", "1,3", "--m", "0,whole",
                            "--format", "csv"});
    REQUIRE(e.code == 0);
    CHECK(e.out.find("2,3,whole,0,0\n") != std::string::npos);
    CHECK(e.out.find("1,3,whole,0,2\n") != std::string::npos);
    CHECK(saw_run({"events", "--graph", "zd:1", "--sublattice", "3", "--n", "3", "--k", "4"}).code == 2);
}

TEST_CASE("graph spec files") {
    const auto path = scratch("tri.spec");
    std::ofstream(path) << "kind: lattice\ndimension: 2\ncells: 1\nedges:\n  0 0 1 0 1\n  0 0 0 1 1\n  0 0 1 1 1\n";
    const auto a = saw_run({"count", "--graph-file", path.string(), "--n", "2", "--format", "csv"});
    REQUIRE(a.code == 0);
    CHECK(a.out.find("2,30,") != std::string::npos);
    const auto b = saw_run({"count", "--graph", path.string(), "--n", "2", "--format", "csv"});
    CHECK(a.out == b.out);
    std::ofstream(scratch("broken.spec")) << "kind: lattice\ndimension: 2\n";
    CHECK(saw_run({"count", "--graph-file", scratch("broken.spec").string(), "--n", "2"}).code == 2);
}

TEST_CASE("identical invocations give identical files") {
    const auto p1 = scratch("one.json"), p2 = scratch("two.json");
    for (const auto& p : {p1, p2}) {
        REQUIRE(saw_run({"ratio", "--graph", "zd:1", "--sublattice", "4", "--mu-exact", "1", "--deterministic",
                         "--output", p.string()})
                    .code == 0);
    }
    CHECK(slurp(p1) == slurp(p2));
    const auto stamped = saw_run({"count", "--graph", "ladder", "--n", "3"});
    CHECK(nlohmann::json::parse(stamped.out).contains("created"));
    CHECK_FALSE(std::filesystem::exists(p1.string() + ".tmp." + std::to_string(::getpid())));
}

TEST_CASE("worker count from the environment") {
    ::setenv("SAW_WORKERS", "4", 1);
    const auto a = saw_run({"count", "--graph", "zd:2", "--n", "9", "--format", "csv"});
    ::setenv("SAW_WORKERS", "0", 1);
    CHECK(saw_run({"count", "--graph", "zd:2", "--n", "3"}).code == 2);
    ::unsetenv("SAW_WORKERS");
    const auto b = saw_run({"count", "--graph", "zd:2", "--n", "9", "--format", "csv", "--workers", "1"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("help and docs") {
    const auto docs = saw_run({"docs"});
    REQUIRE(docs.code == 0);
    for (const auto& name : saw::cli::subcommand_names()) {
        const auto h = saw_run({name, "--help"});
        CHECK(h.code == 0);
        CHECK(h.out.find("saw " + name) != std::string::npos);
        CHECK(h.out == saw::cli::subcommand_help(name));
        CHECK(docs.out.find("```\n" + h.out + "```\n") != std::string::npos);
    }
    CHECK(saw_run({"--help"}).code == 0);
}

TEST_CASE("sublattice row parsing") {
    using Rows = std::vector<std::vector<std::int64_t>>;
    CHECK(saw::cli::parse_rows("3") == Rows{{3}});
    CHECK(saw::cli::parse_rows("2 0; 0 2") == Rows{{2, 0}, {0, 2}});
    CHECK(saw::cli::parse_rows("1,-1") == Rows{{1, -1}});
    CHECK_THROWS(saw::cli::parse_rows("1;;2"));
    CHECK_THROWS(saw::cli::parse_rows("1.5"));
}
