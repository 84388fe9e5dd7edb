#pragma once

#include <map>
#include <string>
#include <utility>

#include "ffgal/ff.hpp"

namespace ffgal::detail {

// Sparse bivariate polynomial keyed by (exponent of first variable, exponent of second variable).
using Terms = std::map<std::pair<int, int>, Coords>;

// Parses sums/products/powers of integers, "[a0,..]" element literals and the variables v1, v2.
// Pass v2 = 0 for a univariate grammar.
Terms parse_terms(const FieldPtr& f, const std::string& text, char v1, char v2);

}  // namespace ffgal::detail
