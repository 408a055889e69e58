#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "saw/bounds.hpp"
#include "saw/events.hpp"
#include "saw/saw_engine.hpp"

namespace saw {

// Raw data the certificate is derived from and replayed against.
struct CertificateInputs {
    std::string graph_id;
    std::string quotient_id;
    int degree = 0;
    int ell = 0;
    std::vector<BigCount> sigma;           // σ_n on G, n = 0..N
    std::vector<BigCount> sigma_directed;  // σ⃗_n
    std::vector<BigCount> sigma_event;     // σ⃗_n(0, E_ℓ̄)
    LowerBoundSequence b;                  // b_1..b_N, non-decreasing
    int budget = 0;
};

struct EpsilonM {
    int r = 0;
    int s = 0;
    int m = 0;
    double epsilon = 0.0;
};

// Earliest r, s >= r and m per the search order; nullopt when a search
// runs past the budget (m additionally needs 2m <= budget for S).
std::optional<EpsilonM> find_epsilon_m(const CertificateInputs& in);

struct RPart {
    double zeta = 0.0;
    double g = 0.0;  // the limit expression at zeta
    double t = 0.0;
    double a = 0.0;
    double R = 0.0;
};

struct SPart {
    double kappa = 0.0;
    double Z = 0.0;
    double eta = 0.0;
    double f = 0.0;
    double S = 0.0;
};

// ln of g(ζ) = ζ^{-ζ}(1-ζ)^{-(1-ζ)} ((1+ε)/(1-ε))^{ζm} (1-ε)^m.
double log_g(double eps, int m, double zeta);
Interval log_g(const Interval& eps, int m, const Interval& zeta);

// The root ζ_0 of g = 1 on (0, 1); g < 1 exactly on (0, ζ_0). Throws
// NoContractionError when g >= 1 near 0 (e.g. ε too small).
double contraction_limit(double eps, int m);

RPart compute_R(double eps, int m, double zeta);
// Default ζ: the midpoint of (0, ζ_0).
RPart compute_R(double eps, int m);

// κ, Z, η* and S for density a. mu_upper is a certified upper bound on μ.
SPart compute_S(int m, int degree, int ell, double a, const std::vector<BigCount>& sigma_directed,
                double mu_upper);

struct InequalityRecord {
    std::string name;
    std::string relation;  // "<", "<=", ">="
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

struct RatioCertificate {
    std::string status;  // "certified" or "inconclusive-budget"
    std::string reason;
    CertificateInputs inputs;
    int r = 0, s = 0, m = 0;
    double epsilon = 0.0;
    int n0 = 0;
    double mu_upper = 0.0;
    RPart rpart;
    SPart spart;
    double R_final = 1.0;
    std::vector<InequalityRecord> checks;
};

struct CertifyOptions {
    int budget = 20;
    CountOptions counting;
};

// Gathers counts on (g, q) up to the budget and runs the search.
RatioCertificate certify_ratio(const GraphHandle& g, const QuotientGraph& q, const CycleFamily& family,
                               const LowerBoundSequence& b, const CertifyOptions& opts = {});
// Runs the search on precomputed inputs.
RatioCertificate certify_ratio(const CertificateInputs& in);

struct VerifyReport {
    bool certified = false;
    std::vector<InequalityRecord> checks;
    std::vector<std::string> failures;
};

// Recomputes every inequality from the raw counts with outward rounding.
VerifyReport verify_certificate(const RatioCertificate& c);

nlohmann::json to_json(const RatioCertificate& c, bool deterministic = true);
RatioCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace saw
