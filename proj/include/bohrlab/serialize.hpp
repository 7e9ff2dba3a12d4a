#pragma once

// JSON forms of polynomials, series and norm estimates, and CSV cell
// formatting shared by the command-line front end.

#include <string>

#include "json.hpp"

#include "bohrlab/optimize.hpp"
#include "bohrlab/polynomial.hpp"

namespace bohrlab {

using Json = nlohmann::ordered_json;

/// {"n", "m", "terms": [{"alpha": [...], "re", "im"}]}, terms in map order.
Json to_json(const HomPoly& poly);
HomPoly poly_from_json(const Json& j);

/// {"n", "a0": {"re", "im"}, "parts": [poly, ...]}.
Json to_json(const TruncatedSeries& f);
TruncatedSeries series_from_json(const Json& j);

Json to_json(const NormEstimate& est);
Json to_json(const CVector& z);

/// %.17g with '.' as decimal separator.
std::string format_double(double v);
/// Renders a scalar JSON value as one CSV cell, quoting when needed.
std::string csv_cell(const Json& v);

}  // namespace bohrlab
