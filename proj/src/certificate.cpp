#include "saw/certificate.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include <boost/math/tools/toms748_solve.hpp>

#include "saw/errors.hpp"

namespace saw {

namespace {

Interval ipow(Interval x, int k) {
    Interval r = Interval::point(1.0);
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
}

Interval neg(const Interval& x) { return {-x.hi, -x.lo}; }

Interval point(double x) { return Interval::point(x); }

// b_n as an interval recomputed from its raw entry.
Interval b_at(const LowerBoundSequence& b, int n) {
    if (n < 1 || n > b.n_max()) throw ParameterError("lower bound b_" + std::to_string(n) + " missing");
    return entry_interval(b.entries[n - 1]);
}

Interval epsilon_of(int r) { return point(1.0) / point(static_cast<double>(r)); }

// ln f(η) = η ln Z + η ln η + (1-η) ln(1-η)
double log_f(double Z, double eta) {
    if (eta <= 0.0) return 0.0;
    return eta * std::log(Z) + eta * std::log(eta) + (1.0 - eta) * std::log1p(-eta);
}

Interval log_f(const Interval& Z, const Interval& eta) {
    const Interval one_minus = point(1.0) - eta;
    return eta * log(Z) + xlogx(eta) + one_minus * log1p(neg(eta));
}

template <class F>
double solve_root(F f, double lo, double hi) {
    std::uintmax_t iters = 300;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return r.first;
}

struct Checker {
    std::vector<InequalityRecord> out;

    void less(const std::string& name, const Interval& l, const Interval& r) {
        out.push_back({name, "<", l.hi, r.lo, l.hi < r.lo});
    }
    void less_equal(const std::string& name, const Interval& l, const Interval& r) {
        out.push_back({name, "<=", l.hi, r.lo, l.hi <= r.lo});
    }
    void greater_equal(const std::string& name, const Interval& l, const Interval& r) {
        out.push_back({name, ">=", l.lo, r.hi, l.lo >= r.hi});
    }
};

// Every inequality of the chain, recomputed from the inputs and the stored
// parameters.
std::vector<InequalityRecord> replay(const RatioCertificate& c) {
    const auto& in = c.inputs;
    Checker ck;
    const int N = in.budget;
    auto count_ok = [&](const std::vector<BigCount>& v, int n) { return n >= 0 && n < static_cast<int>(v.size()); };
    const bool shape = c.r >= 2 && c.s >= c.r && c.m >= 1 && 2 * c.m <= N && c.n0 >= 1 && c.n0 <= N &&
                       count_ok(in.sigma, N) && count_ok(in.sigma_directed, N) && count_ok(in.sigma_event, N) &&
                       in.b.n_max() >= N && in.ell >= 1 && in.degree >= 1;
    ck.out.push_back({"indices", "ok", static_cast<double>(c.m), static_cast<double>(N), shape});
    if (!shape) return ck.out;

    const Interval eps = epsilon_of(c.r);
    ck.out.push_back({"epsilon=1/r", "==", c.epsilon, 1.0 / c.r, c.epsilon == 1.0 / c.r});

    const Interval one = point(1.0);
    // μ <= a_n for every n, so no valid b_n exceeds a_n0.
    Interval bmax = b_at(in.b, 1);
    for (int n = 2; n <= N; ++n) bmax = Interval{std::fmax(bmax.lo, b_at(in.b, n).lo), std::fmax(bmax.hi, b_at(in.b, n).hi)};
    ck.less_equal("b<=a_n0", bmax, root_interval(in.sigma[c.n0], c.n0));
    ck.less("r", root_interval(in.sigma_event[c.r], c.r), b_at(in.b, c.r) * (one - eps));
    const Interval bs = b_at(in.b, c.s);
    const Interval half_eps = eps * point(0.5);
    ck.greater_equal("s", bs * (one + eps), root_interval(in.sigma[c.s], c.s) * (one + half_eps));
    ck.less("m-event", root_interval(in.sigma_event[c.m], c.m), bs * (one - eps));
    ck.less_equal("m-growth", root_interval(in.sigma_directed[c.m], c.m), bs * (one + eps));

    const auto& R = c.rpart;
    ck.less("zeta>0", point(0.0), point(R.zeta));
    ck.less("zeta<1", point(R.zeta), one);
    const Interval lg = log_g(eps, c.m, point(R.zeta));
    ck.less("g<t", exp(lg), point(R.t));
    ck.less("t<1", point(R.t), one);
    ck.greater_equal("R>=t^(1/m)", point(R.R), exp(log(point(R.t)) / point(static_cast<double>(c.m))));
    ck.less("R<1", point(R.R), one);
    ck.less("a>0", point(0.0), point(R.a));
    ck.less("a<zeta/m", point(R.a), point(R.zeta) / point(static_cast<double>(c.m)));

    const auto& S = c.spart;
    const Interval denom =
        point(2.0 * c.m + 2.0) * from_integer(boost::multiprecision::pow(BigCount(in.degree), 2 * in.ell + 1));
    ck.less("kappa>0", point(0.0), point(S.kappa));
    ck.less_equal("kappa<=a/((2m+2)D^(2l+1))", point(S.kappa), point(R.a) / denom);
    const Interval mu = root_interval(in.sigma[c.n0], c.n0);
    ck.greater_equal("mu_upper>=a_n0", point(c.mu_upper), mu);
    BigCount sum = 0;
    for (int i = 1; i <= 2 * c.m; ++i) sum += in.sigma_directed[i];
    const Interval zlow = point(2.0 * in.ell) * ipow(point(c.mu_upper), 2 * in.ell) * from_integer(sum);
    ck.greater_equal("Z>=2l*mu^(2l)*sum", point(S.Z), zlow);
    ck.less("eta>0", point(0.0), point(S.eta));
    ck.less("eta<1", point(S.eta), one);
    const Interval lf = log_f(point(S.Z), point(S.eta));
    ck.less("f(eta)<1", lf, point(0.0));
    ck.greater_equal("S>=f^kappa", point(S.S), exp(point(S.kappa) * lf));
    ck.less("S<1", point(S.S), one);
    ck.greater_equal("R_final>=max(R,S)", point(c.R_final), point(std::fmax(R.R, S.S)));
    ck.less("R_final<1", point(c.R_final), one);
    return ck.out;
}

bool all_hold(const std::vector<InequalityRecord>& v) {
    for (const auto& r : v) {
        if (!r.holds) return false;
    }
    return !v.empty();
}

}  // namespace

// ---------------------------------------------------------------------------

double log_g(double eps, int m, double zeta) {
    const double ent = (zeta <= 0.0 ? 0.0 : -zeta * std::log(zeta)) - (1.0 - zeta) * std::log1p(-zeta);
    return ent + zeta * m * (std::log1p(eps) - std::log1p(-eps)) + m * std::log1p(-eps);
}

Interval log_g(const Interval& eps, int m, const Interval& zeta) {
    const Interval one = point(1.0);
    const Interval M = point(static_cast<double>(m));
    const Interval ent = neg(xlogx(zeta)) - (one - zeta) * log1p(neg(zeta));
    return ent + zeta * M * (log1p(eps) - log1p(neg(eps))) + M * log1p(neg(eps));
}

double contraction_limit(double eps, int m) {
    if (!(eps > 0.0 && eps < 1.0)) throw NoContractionError("epsilon must lie in (0, 1)");
    if (m < 1) throw ParameterError("m must be at least 1");
    const double at0 = log_g(eps, m, 0.0);
    if (!(at0 < 0.0)) throw NoContractionError("g(0+) >= 1: no contraction for this epsilon");
    // ln g is concave with its maximum at 1/(1+e^{-c}), where it is positive.
    const double c = m * (std::log1p(eps) - std::log1p(-eps));
    const double peak = 1.0 / (1.0 + std::exp(-c));
    if (!(log_g(eps, m, peak) > 0.0)) throw NoContractionError("g stays below 1; degenerate parameters");
    return solve_root([&](double z) { return log_g(eps, m, z); }, 0.0, peak);
}

RPart compute_R(double eps, int m, double zeta) {
    const double z0 = contraction_limit(eps, m);
    if (!(zeta > 0.0 && zeta < z0)) throw NoContractionError("zeta outside (0, zeta_0)");
    RPart p;
    p.zeta = zeta;
    const Interval lg = log_g(point(eps), m, point(zeta));
    p.g = std::exp(log_g(eps, m, zeta));
    p.t = exp(lg).hi * (1.0 + 1e-9);
    if (!(p.t < 1.0)) throw NoContractionError("g(zeta) too close to 1 for the slack");
    p.a = zeta / (2.0 * m);
    p.R = exp(log(point(p.t)) / point(static_cast<double>(m))).hi;
    return p;
}

RPart compute_R(double eps, int m) { return compute_R(eps, m, 0.5 * contraction_limit(eps, m)); }

SPart compute_S(int m, int degree, int ell, double a, const std::vector<BigCount>& sigma_directed,
                double mu_upper) {
    if (m < 1 || degree < 1 || ell < 1) throw ParameterError("compute_S needs m, degree, ell >= 1");
    if (!(a > 0.0)) throw ParameterError("density a must be positive");
    if (static_cast<int>(sigma_directed.size()) <= 2 * m) {
        throw ParameterError("compute_S needs directed counts up to 2m = " + std::to_string(2 * m));
    }
    SPart p;
    const Interval denom =
        point(2.0 * m + 2.0) * from_integer(boost::multiprecision::pow(BigCount(degree), 2 * ell + 1));
    p.kappa = (point(a) / denom).lo;
    BigCount sum = 0;
    for (int i = 1; i <= 2 * m; ++i) sum += sigma_directed[i];
    const Interval z = point(2.0 * ell) * ipow(point(mu_upper), 2 * ell) * from_integer(sum);
    // Z only has to dominate; at least 1 keeps ln Z >= 0.
    p.Z = std::fmax(1.0, z.hi);
    // f is minimised where ln Z + ln η - ln(1-η) = 0; solved in u = ln η.
    const double Z = p.Z;
    auto deriv = [Z](double u) {
        const double eta = std::exp(u);
        return std::log(Z) + u - std::log1p(-eta);
    };
    const double u = solve_root(deriv, -745.0, std::log(0.75));
    p.eta = std::exp(u);
    const Interval lf = log_f(point(p.Z), point(p.eta));
    if (!(lf.hi < 0.0)) throw NoContractionError("f(eta) >= 1");
    p.f = std::exp(log_f(p.Z, p.eta));
    p.S = exp(point(p.kappa) * lf).hi;
    if (!(p.S < 1.0)) throw NoContractionError("S rounds to 1");
    return p;
}

std::optional<EpsilonM> find_epsilon_m(const CertificateInputs& in) {
    const int N = in.budget;
    if (N < 1) return std::nullopt;
    const Interval one = point(1.0);
    EpsilonM out;
    for (int r = 2; r <= N && out.r == 0; ++r) {
        if (root_interval(in.sigma_event[r], r).certainly_less(b_at(in.b, r) * (one - epsilon_of(r)))) out.r = r;
    }
    if (out.r == 0) return std::nullopt;
    const Interval eps = epsilon_of(out.r);
    out.epsilon = 1.0 / out.r;
    for (int s = out.r; s <= N && out.s == 0; ++s) {
        const Interval lhs = b_at(in.b, s) * (one + eps);
        const Interval rhs = root_interval(in.sigma[s], s) * (one + eps * point(0.5));
        if (lhs.lo >= rhs.hi) out.s = s;
    }
    if (out.s == 0) return std::nullopt;
    const Interval bs = b_at(in.b, out.s);
    for (int m = 1; 2 * m <= N && out.m == 0; ++m) {
        if (root_interval(in.sigma_event[m], m).certainly_less(bs * (one - eps)) &&
            root_interval(in.sigma_directed[m], m).certainly_less_equal(bs * (one + eps))) {
            out.m = m;
        }
    }
    if (out.m == 0) return std::nullopt;
    return out;
}

RatioCertificate certify_ratio(const CertificateInputs& in) {
    RatioCertificate c;
    c.inputs = in;
    c.status = "inconclusive-budget";
    const int N = in.budget;
    if (N < 1) {
        c.reason = "budget below 1";
        return c;
    }
    for (const auto* v : {&in.sigma, &in.sigma_directed, &in.sigma_event}) {
        if (static_cast<int>(v->size()) <= N) throw ParameterError("counts shorter than the budget");
    }
    if (in.b.n_max() < N) throw ParameterError("lower bounds shorter than the budget");

    const auto found = find_epsilon_m(in);
    if (!found) {
        c.reason = "no admissible (r, s, m) within budget " + std::to_string(N);
        return c;
    }
    c.r = found->r;
    c.s = found->s;
    c.m = found->m;
    c.epsilon = found->epsilon;
    c.n0 = N;
    c.mu_upper = root_interval(in.sigma[N], N).hi;

    try {
        // S depends on ζ only through κ = κ₁·ζ/(2m); R grows with ζ, S shrinks,
        // so ζ is placed where ln R = ln S, kept clear of g = 1.
        const SPart unit = compute_S(c.m, in.degree, in.ell, 1.0, in.sigma_directed, c.mu_upper);
        const double lf = std::log(unit.f);
        const double slope = -lf * unit.kappa / (2.0 * c.m);
        const double z0 = contraction_limit(c.epsilon, c.m);
        auto balance = [&](double z) { return log_g(c.epsilon, c.m, z) / c.m + slope * z; };
        double zeta = solve_root(balance, 0.0, z0);
        const double margin = -1e-7;
        if (log_g(c.epsilon, c.m, zeta) > margin) {
            zeta = solve_root([&](double z) { return log_g(c.epsilon, c.m, z) - margin; }, 0.0, z0);
        }
        c.rpart = compute_R(c.epsilon, c.m, zeta);
        c.spart = compute_S(c.m, in.degree, in.ell, c.rpart.a, in.sigma_directed, c.mu_upper);
    } catch (const NoContractionError& e) {
        c.reason = std::string("no contraction: ") + e.what();
        return c;
    }
    c.R_final = std::fmax(c.rpart.R, c.spart.S);
    c.checks = replay(c);
    if (all_hold(c.checks)) {
        c.status = "certified";
    } else {
        c.reason = "an inequality failed under outward rounding";
    }
    return c;
}

RatioCertificate certify_ratio(const GraphHandle& g, const QuotientGraph& q, const CycleFamily& family,
                               const LowerBoundSequence& b, const CertifyOptions& opts) {
    if (q.graph().id() != g.id()) throw ParameterError("quotient does not belong to the graph");
    CertificateInputs in;
    in.graph_id = g.id();
    in.quotient_id = q.id();
    in.degree = g.degree();
    in.ell = family.length;
    in.budget = std::max(0, opts.budget);
    const int N = in.budget;
    auto sigma = count_saws(g, g.origin(), N, opts.counting);
    auto dir = count_directed_saws(q, N, opts.counting);
    if (sigma.truncated || dir.truncated) throw BudgetExceededError("counts truncated below the budget");
    in.sigma = sigma.counts;
    in.sigma_directed = dir.counts;
    in.sigma_event = count_avoiding(q, family, family.length, N, opts.counting).counts;
    in.b = monotone_regularize(b);
    if (in.b.n_max() < N) throw ParameterError("lower bound sequence shorter than the budget");
    in.b.entries.resize(N);
    return certify_ratio(in);
}

VerifyReport verify_certificate(const RatioCertificate& c) {
    VerifyReport rep;
    if (c.status != "certified") {
        rep.failures.push_back("status is " + c.status);
        return rep;
    }
    rep.checks = replay(c);
    for (const auto& r : rep.checks) {
        if (!r.holds) rep.failures.push_back(r.name);
    }
    // Stored verdicts must agree with the replay.
    if (c.checks.size() != rep.checks.size()) {
        rep.failures.push_back("stored check list differs from replay");
    } else {
        for (std::size_t i = 0; i < c.checks.size(); ++i) {
            if (c.checks[i].name != rep.checks[i].name || c.checks[i].holds != rep.checks[i].holds) {
                rep.failures.push_back("stored verdict differs: " + rep.checks[i].name);
            }
        }
    }
    rep.certified = rep.failures.empty() && all_hold(rep.checks);
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json counts_json(const std::vector<BigCount>& v) {
    auto j = nlohmann::json::array();
    for (const auto& c : v) j.push_back(c.str());
    return j;
}

std::vector<BigCount> counts_from(const nlohmann::json& j) {
    std::vector<BigCount> out;
    for (const auto& x : j) out.emplace_back(x.get<std::string>());
    return out;
}

int int_from(const nlohmann::json& j) { return std::stoi(j.get<std::string>()); }

std::string istr(int x) { return std::to_string(x); }

}  // namespace

nlohmann::json to_json(const RatioCertificate& c, bool deterministic) {
    using nlohmann::json;
    const auto& in = c.inputs;
    json j;
    j["format"] = "saw-ratio-certificate/1";
    j["status"] = c.status;
    j["reason"] = c.reason;
    j["graph"] = in.graph_id;
    j["quotient"] = in.quotient_id;
    j["degree"] = istr(in.degree);
    j["ell"] = istr(in.ell);
    j["budget"] = istr(in.budget);
    j["counts"] = {{"sigma", counts_json(in.sigma)},
                   {"sigma_directed", counts_json(in.sigma_directed)},
                   {"sigma_event", counts_json(in.sigma_event)}};
    json lb = json::array();
    for (std::size_t i = 0; i < in.b.entries.size(); ++i) {
        const auto& e = in.b.entries[i];
        lb.push_back({{"n", istr(static_cast<int>(i) + 1)},
                      {"value", e.value},
                      {"provenance", e.provenance},
                      {"raw", e.raw},
                      {"source_n", istr(e.source_n)}});
    }
    j["lower_bounds"] = {{"graph", in.b.graph_id}, {"entries", lb}};
    json p;
    p["r"] = istr(c.r);
    if (c.r > 0) {
        p["epsilon"] = {{"numerator", "1"}, {"denominator", istr(c.r)}, {"value", c.epsilon}};
    } else {
        p["epsilon"] = nullptr;
    }
    p["s"] = istr(c.s);
    p["m"] = istr(c.m);
    p["n0"] = istr(c.n0);
    p["mu_upper"] = c.mu_upper;
    p["zeta"] = c.rpart.zeta;
    p["g"] = c.rpart.g;
    p["t"] = c.rpart.t;
    p["a"] = c.rpart.a;
    p["R"] = c.rpart.R;
    p["kappa"] = c.spart.kappa;
    p["Z"] = c.spart.Z;
    p["eta"] = c.spart.eta;
    p["f"] = c.spart.f;
    p["S"] = c.spart.S;
    p["R_final"] = c.R_final;
    j["parameters"] = p;
    json checks = json::array();
    for (const auto& r : c.checks) {
        checks.push_back({{"name", r.name}, {"relation", r.relation}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
    }
    j["checks"] = checks;
    if (!deterministic) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["created"] = buf;
    }
    return j;
}

RatioCertificate certificate_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "saw-ratio-certificate/1") {
            throw ParameterError("unsupported certificate format");
        }
        RatioCertificate c;
        c.status = j.at("status").get<std::string>();
        c.reason = j.value("reason", "");
        auto& in = c.inputs;
        in.graph_id = j.at("graph").get<std::string>();
        in.quotient_id = j.at("quotient").get<std::string>();
        in.degree = int_from(j.at("degree"));
        in.ell = int_from(j.at("ell"));
        in.budget = int_from(j.at("budget"));
        in.sigma = counts_from(j.at("counts").at("sigma"));
        in.sigma_directed = counts_from(j.at("counts").at("sigma_directed"));
        in.sigma_event = counts_from(j.at("counts").at("sigma_event"));
        in.b.graph_id = j.at("lower_bounds").at("graph").get<std::string>();
        for (const auto& e : j.at("lower_bounds").at("entries")) {
            in.b.entries.push_back({e.at("value").get<double>(), e.at("provenance").get<std::string>(),
                                    e.at("raw").get<std::string>(), int_from(e.at("source_n"))});
        }
        const auto& p = j.at("parameters");
        c.r = int_from(p.at("r"));
        c.epsilon = p.at("epsilon").is_null() ? 0.0 : p.at("epsilon").at("value").get<double>();
        c.s = int_from(p.at("s"));
        c.m = int_from(p.at("m"));
        c.n0 = int_from(p.at("n0"));
        c.mu_upper = p.at("mu_upper").get<double>();
        c.rpart = {p.at("zeta").get<double>(), p.at("g").get<double>(), p.at("t").get<double>(),
                   p.at("a").get<double>(), p.at("R").get<double>()};
        c.spart = {p.at("kappa").get<double>(), p.at("Z").get<double>(), p.at("eta").get<double>(),
                   p.at("f").get<double>(), p.at("S").get<double>()};
        c.R_final = p.at("R_final").get<double>();
        for (const auto& r : j.at("checks")) {
            c.checks.push_back({r.at("name").get<std::string>(), r.at("relation").get<std::string>(),
                                r.at("lhs").get<double>(), r.at("rhs").get<double>(), r.at("holds").get<bool>()});
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("malformed certificate: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ParameterError("malformed certificate: bad integer field");
    }
}

}  // namespace saw
