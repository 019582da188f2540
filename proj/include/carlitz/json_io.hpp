#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "carlitz/laurent.hpp"
#include "carlitz/motive.hpp"
#include "carlitz/relations.hpp"
#include "carlitz/special.hpp"
#include "carlitz/tate.hpp"

namespace carlitz {

using Json = nlohmann::ordered_json;

/// {q, p, m, w_def, val, prec, sector, coeffs: [[w-exponent, coefficient], ...]}
Json series_json(const LaurentSeries& s);

/// {tdeg, coeffs: [series, ...], tail_bound: [[r, nu(r)], ...] | null};
/// the tail bound is sampled at tdeg+1 .. tdeg+32.
Json tate_json(const TateElem& t);

/// {n, unique, fitted_to, verified_to, h: {deg_t, deg_theta, matrix}} with
/// matrix[r][k] = coefficient of theta^k t^r as an integer.
Json atpoly_json(const ATPoly& a);

/// {kind, D, N, targets, kernel | null, confirmations}
Json certificate_json(const RelationCertificate& c);

/// {status, window: [[0, tdeg], wprec], entries: [[i, j, status], ...], det}
Json motive_report_json(const VerificationReport& r);

/// {name, status, detail, checked_to}
Json check_json(const CheckOutcome& o);

/// {match, checked_to, lhs, rhs}
Json chang_json(const ChangReport& r);

/// Sum of c * th^(a/(q-1)) terms, highest theta-exponent first, capped at
/// max_terms, with an explicit O(...) tail marker.
std::string series_text(const LaurentSeries& s, std::size_t max_terms = 24);

/// One line per t-degree: "t^r: <series>".
std::string tate_text(const TateElem& t, std::size_t max_terms = 12);

} // namespace carlitz
