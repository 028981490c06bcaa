#include "cli/input.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "elicit/errors.hpp"

namespace elicit::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw InputError(std::string(what) + ": '" + t + "' is not a non-negative integer");
  }
  return value;
}

ReportProfile build_profile(const std::vector<std::vector<Rational>>& rows, std::size_t n) {
  if (rows.empty()) throw InputError("no reports given");
  if (n < 2) throw InputError("n must be at least 2, got " + std::to_string(n));
  std::vector<Distribution> reports;
  reports.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string row = "row " + std::to_string(r + 1);
    if (rows[r].size() != n) {
      throw InputError(row + " has " + std::to_string(rows[r].size()) + " fields, expected " +
                       std::to_string(n));
    }
    Rational sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(rows[r][j]) < 0) {
        throw InputError(row + " field " + std::to_string(j + 1) + " is negative (" +
                         to_fraction_string(rows[r][j]) + ")");
      }
      sum += rows[r][j];
    }
    if (sum != 1) throw InputError(row + " sums to " + to_fraction_string(sum));
    reports.emplace_back(rows[r]);
  }
  return ReportProfile(std::move(reports));
}

Rational parse_field(std::string_view text, std::size_t row, std::size_t field) {
  try {
    return parse_rational(trim(text));
  } catch (const InputError& e) {
    throw InputError("row " + std::to_string(row + 1) + " field " + std::to_string(field + 1) +
                     ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

ReportProfile parse_profile_json(std::string_view text, std::string_view source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string(source) + ": malformed JSON at byte " + std::to_string(e.byte));
  }
  if (!doc.is_object() || !doc.contains("reports") || !doc["reports"].is_array()) {
    throw InputError(std::string(source) + ": expected an object with a \"reports\" array");
  }
  const auto& reports = doc["reports"];
  std::size_t n = 0;
  if (doc.contains("n")) {
    if (!doc["n"].is_number_unsigned()) throw InputError("field \"n\" must be a positive integer");
    n = doc["n"].get<std::size_t>();
  } else if (!reports.empty() && reports[0].is_array()) {
    n = reports[0].size();
  }
  std::vector<std::vector<Rational>> rows;
  for (std::size_t r = 0; r < reports.size(); ++r) {
    if (!reports[r].is_array()) {
      throw InputError("row " + std::to_string(r + 1) + " is not an array");
    }
    std::vector<Rational> row;
    for (std::size_t j = 0; j < reports[r].size(); ++j) {
      const auto& cell = reports[r][j];
      if (cell.is_string()) {
        row.push_back(parse_field(cell.get<std::string>(), r, j));
      } else if (cell.is_number_integer()) {
        row.emplace_back(cell.get<long>());
      } else {
        // floats would already have lost exactness in the JSON parser
        throw InputError("row " + std::to_string(r + 1) + " field " + std::to_string(j + 1) +
                         ": give fractional probabilities as strings, e.g. \"2/5\" or \"0.4\"");
      }
    }
    rows.push_back(std::move(row));
  }
  return build_profile(rows, n);
}

ReportProfile read_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_profile_json(buffer.str(), path);
}

ReportProfile parse_profile_inline(std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  const auto lines = split(text, ';');
  for (std::size_t r = 0; r < lines.size(); ++r) {
    std::vector<Rational> row;
    const auto fields = split(lines[r], ',');
    for (std::size_t j = 0; j < fields.size(); ++j) row.push_back(parse_field(fields[j], r, j));
    rows.push_back(std::move(row));
  }
  return build_profile(rows, rows.front().size());
}

std::size_t parse_index(std::string_view text, std::size_t count, std::string_view what) {
  const std::size_t value = parse_count(text, what);
  if (value < 1 || value > count) {
    throw InputError(std::string(what) + " " + std::to_string(value) + " is outside 1.." +
                     std::to_string(count));
  }
  return value - 1;
}

Coalition parse_coalition(std::string_view text, std::size_t experts) {
  std::vector<std::size_t> members;
  for (const auto& field : split(text, ',')) members.push_back(parse_index(field, experts, "expert"));
  return Coalition(std::move(members), experts);
}

ContractSpec make_contract(const std::string& kind, const std::string& alpha, bool permissive) {
  if (kind == "independent-quadratic") return IndependentContract{RuleKind::quadratic};
  if (kind == "independent-log") return IndependentContract{RuleKind::logarithmic};
  if (kind == "zero-sum-pair") return ZeroSumPairContract{};
  if (kind == "nr" || kind == "leave-one-out") {
    if (alpha.empty()) throw ConfigurationError("--contract " + kind + " needs --alpha");
    return LeaveOneOutContract{parse_rational(alpha), permissive};
  }
  throw ConfigurationError("unknown contract '" + kind + "'");
}

Rational resolve_alpha_token(std::string_view token, std::size_t experts, std::size_t outcomes) {
  const std::string t = trim(token);
  if (t.rfind("thr", 0) != 0) return parse_rational(t);
  const Rational threshold = validate_alpha(0, experts, outcomes).large_threshold;
  const std::string rest = t.substr(3);
  if (rest.empty()) return threshold;
  if (rest[0] != '+' && rest[0] != '-') throw ConfigurationError("bad alpha token '" + t + "'");
  const Rational offset = parse_rational(rest.substr(1));
  return rest[0] == '+' ? Rational(threshold + offset) : Rational(threshold - offset);
}

std::pair<std::size_t, std::size_t> parse_range(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  const auto dots = t.find("..");
  std::pair<std::size_t, std::size_t> range;
  if (dots == std::string::npos) {
    range.first = range.second = parse_count(t, what);
  } else {
    range.first = parse_count(std::string_view(t).substr(0, dots), what);
    range.second = parse_count(std::string_view(t).substr(dots + 2), what);
  }
  if (range.first > range.second) {
    throw ConfigurationError(std::string(what) + " range " + t + " is empty");
  }
  return range;
}

}  // namespace elicit::cli
