#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "saw/bounds.hpp"
#include "saw/certificate.hpp"
#include "saw/errors.hpp"
#include "saw/events.hpp"
#include "saw/quotient.hpp"

using namespace saw;

namespace {

RatioCertificate run_cycle(int k, const std::string& b, int budget) {
    const auto g = catalog("zd:1");
    const auto q = build_quotient(g, SubgroupAction::sublattice({{k}}));
    const auto f = build_cycle_family(q, classify_type(q), 0);
    CertifyOptions opts;
    opts.budget = budget;
    return certify_ratio(g, q, f, constant_bound(g.id(), b, budget), opts);
}

}  // namespace

TEST_CASE("contraction limit agrees with the bisection oracle") {
    for (auto [eps, m] : {std::pair{0.5, 2}, std::pair{0.5, 3}, std::pair{1.0 / 3, 4}, std::pair{0.25, 9}}) {
        const double z0 = contraction_limit(eps, m);
        CHECK(z0 == doctest::Approx(oracle::zeta0(eps, m)).epsilon(1e-9));
        CHECK(log_g(eps, m, 0.5 * z0) == doctest::Approx(oracle::log_g(eps, m, 0.5 * z0)).epsilon(1e-12));
        CHECK(log_g(eps, m, 0.5 * z0) < 0.0);
        CHECK(log_g(eps, m, std::min(1.0, 1.5 * z0)) > 0.0);
    }
    CHECK_THROWS_AS(contraction_limit(0.0, 2), NoContractionError);
    CHECK_THROWS_AS(contraction_limit(0.5, 0), ParameterError);
}

TEST_CASE("R part") {
    const auto r = compute_R(0.5, 2);
    CHECK(r.zeta > 0.0);
    CHECK(r.t < 1.0);
    CHECK(r.t >= r.g);
    CHECK(r.R == doctest::Approx(std::pow(r.t, 0.5)).epsilon(1e-12));
    CHECK(r.a == doctest::Approx(r.zeta / 4));
}

TEST_CASE("S part optimum is eta = 1/(Z+1)") {
    const std::vector<BigCount> sigma{1, 2, 2, 0, 0};
    const auto s = compute_S(2, 2, 3, 0.1, sigma, 1.0);
    // Z = 2*ell*mu^(2 ell)*sum = 6*4
    CHECK(s.Z == doctest::Approx(24.0));
    CHECK(s.eta == doctest::Approx(1.0 / (s.Z + 1.0)).epsilon(1e-12));
    CHECK(s.kappa == doctest::Approx(0.1 / (6.0 * 128.0)));
    CHECK(s.f < 1.0);
    CHECK(s.S < 1.0);
    CHECK(s.S == doctest::Approx(std::pow(s.f, s.kappa)).epsilon(1e-12));
    CHECK_THROWS_AS(compute_S(3, 2, 3, 0.1, sigma, 1.0), ParameterError);
}

TEST_CASE("cycle quotient is certified and replays") {
    const auto c = run_cycle(3, "1", 20);
    REQUIRE(c.status == "certified");
    CHECK(c.r == 2);
    CHECK(c.R_final < 1.0);
    CHECK(c.R_final > 0.0);
    CHECK(c.rpart.R < 1.0);
    CHECK(c.spart.S < 1.0);
    const auto rep = verify_certificate(c);
    CHECK(rep.certified);
    CHECK(rep.failures.empty());

    const auto j = to_json(c);
    const auto back = certificate_from_json(nlohmann::json::parse(j.dump()));
    CHECK(verify_certificate(back).certified);
    CHECK(to_json(back).dump() == j.dump());
    CHECK_FALSE(j.contains("created"));
    CHECK(to_json(c, false).contains("created"));
}

TEST_CASE("weaker lower bounds still certify") {
    for (const char* b : {"0.95", "0.9"}) {
        const auto c = run_cycle(3, b, 20);
        CHECK(c.status == "certified");
        CHECK(verify_certificate(c).certified);
    }
    for (int k : {4, 5}) CHECK(run_cycle(k, "1", 20).status == "certified");
}

TEST_CASE("certificates are deterministic") {
    CHECK(to_json(run_cycle(3, "1", 20)).dump() == to_json(run_cycle(3, "1", 20)).dump());
}

TEST_CASE("inconclusive runs") {
    const auto c0 = run_cycle(3, "1", 0);
    CHECK(c0.status == "inconclusive-budget");
    CHECK_FALSE(verify_certificate(c0).certified);
    CHECK(run_cycle(3, "1", 1).status == "inconclusive-budget");
}

TEST_CASE("tampering is detected") {
    const auto c = run_cycle(3, "1", 20);
    REQUIRE(c.status == "certified");

    auto counts = to_json(c);
    counts["counts"]["sigma_event"][2] = "5";
    CHECK_FALSE(verify_certificate(certificate_from_json(counts)).certified);

    auto bound = c;
    bound.inputs.b.entries[c.s - 1].value = 5.0;
    bound.inputs.b.entries[c.s - 1].raw = "5";
    CHECK_FALSE(verify_certificate(bound).certified);

    auto ratio = c;
    ratio.R_final = 0.5;
    CHECK_FALSE(verify_certificate(ratio).certified);

    auto verdict = c;
    verdict.checks.pop_back();
    CHECK_FALSE(verify_certificate(verdict).certified);

    CHECK_THROWS_AS(certificate_from_json(nlohmann::json{{"format", "other"}}), ParameterError);
}
