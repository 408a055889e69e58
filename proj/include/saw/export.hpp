#pragma once

#include <string>

#include <json.hpp>

#include "saw/bounds.hpp"
#include "saw/events.hpp"
#include "saw/quotient.hpp"
#include "saw/saw_engine.hpp"

namespace saw {

// Doubles as text with 17 significant digits.
std::string format_double(double x);

// Columns n, sigma_n, a_n for n >= 1.
std::string to_csv(const WalkCounts& w);
nlohmann::json to_json(const WalkCounts& w);

// Columns n, beta_n, b_n, provenance.
std::string to_csv(const LowerBoundSequence& b);
nlohmann::json to_json(const LowerBoundSequence& b);

nlohmann::json to_json(const TypeReport& t);

// Orbits, multiplicity matrix, loop vector and type report. Infinite
// quotients list their base orbits with out-multiplicities instead.
nlohmann::json quotient_json(const QuotientGraph& q, const TypeReport& t, bool independent);

// Columns n, k, m, r, count; m = "whole" for E_k.
std::string to_csv(const EventProfile& p);
nlohmann::json to_json(const EventProfile& p);

}  // namespace saw
