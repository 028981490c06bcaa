#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "elicit/contracts.hpp"
#include "elicit/rational.hpp"
#include "elicit/simplex.hpp"

namespace elicit::cli {

/// Parses `{"n": 2, "reports": [["2/5","3/5"], ...]}`. Rows are 1-based in
/// diagnostics. Throws InputError.
ReportProfile parse_profile_json(std::string_view text, std::string_view source);
ReportProfile read_profile_file(const std::string& path);

/// Inline form: rows split by ';', fields by ','. "0.4,0.6;0.5,0.5".
ReportProfile parse_profile_inline(std::string_view text);

/// "1,3" -> {0, 2}.
Coalition parse_coalition(std::string_view text, std::size_t experts);

/// Index in 1..count, returned 0-based.
std::size_t parse_index(std::string_view text, std::size_t count, std::string_view what);

ContractSpec make_contract(const std::string& kind, const std::string& alpha, bool permissive);

/// Alpha token for verify: a rational, "thr", or "thr+k" / "thr-k" where thr is
/// the large-regime threshold for (m, n).
Rational resolve_alpha_token(std::string_view token, std::size_t experts, std::size_t outcomes);

/// "2..5" or "3".
std::pair<std::size_t, std::size_t> parse_range(std::string_view text, std::string_view what);

std::vector<std::string> split(std::string_view text, char sep);

}  // namespace elicit::cli
