#pragma once

#include <string>

#include <json.hpp>

#include "forge/equations.hpp"
#include "forge/growth.hpp"
#include "forge/solutions.hpp"

// JSON wire format. Every top-level payload carries "schema": "fermat-forge/1".
// Complex numbers are [re, im] pairs (a bare number is accepted on input),
// polynomials are {n, terms: [{exps, re, im}]} with exponents in the canonical
// graded-lex order, so serialization is deterministic.

namespace forge::io {

using algebra::Cx;
using algebra::CxVec;
using algebra::MPoly;
using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "fermat-forge/1";

ordered_json cx_to_json(Cx v);
Cx cx_from_json(const ordered_json& j, const std::string& what);

ordered_json cxvec_to_json(const CxVec& v);
CxVec cxvec_from_json(const ordered_json& j, const std::string& what);

ordered_json poly_to_json(const MPoly& p);
MPoly poly_from_json(const ordered_json& j, const std::string& what);

ordered_json ep_to_json(const expfun::ExpPoly& f);
expfun::ExpPoly ep_from_json(const ordered_json& j, const std::string& what);

ordered_json equation_to_json(const equations::EquationSpec& eq);
equations::EquationSpec equation_from_json(const ordered_json& j, const std::string& what);

ordered_json bundle_to_json(const solutions::SolutionBundle& b);
ordered_json constructed_to_json(const solutions::Constructed& c);
ordered_json report_to_json(const equations::VerificationReport& r);
ordered_json verdict_to_json(const equations::Verdict& v);
ordered_json order_to_json(const growth::OrderEstimate& e);

// Parses text, checks the schema tag, and maps parse failures to
// MalformedInput with the byte position in the message.
ordered_json parse_payload(const std::string& text);

solutions::Branch branch_from_json(const ordered_json& j, const std::string& what);

// Dispatches {"theorem": tag, "params": {...}, "branch": {...}} to the
// matching constructor.
solutions::Constructed construct_from_json(const ordered_json& payload);

}  // namespace forge::io
