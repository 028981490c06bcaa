#include "cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "elicit/errors.hpp"
#include "elicit/sweeps.hpp"

namespace elicit::cli {

namespace {

std::string float_text(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

void emit_table(const Document& doc, std::ostream& out) {
  for (const auto& note : doc.notes) out << note << '\n';
  if (doc.header.empty()) return;
  if (!doc.notes.empty()) out << '\n';
  std::vector<std::size_t> width(doc.header.size(), 0);
  auto measure = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  };
  measure(doc.header);
  for (const auto& row : doc.rows) measure(row);
  auto print = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << line << '\n';
  };
  print(doc.header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  print(rule);
  for (const auto& row : doc.rows) print(row);
}

void emit_csv(const Document& doc, std::ostream& out) {
  auto print = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << csv_escape(row[c]);
    }
    out << "\r\n";
  };
  print(doc.header);
  for (const auto& row : doc.rows) print(row);
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "table") return Format::table;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw ConfigurationError("unknown format '" + name + "'");
}

void emit(const Document& doc, Format format, std::ostream& out) {
  switch (format) {
    case Format::table:
      emit_table(doc, out);
      break;
    case Format::csv:
      emit_csv(doc, out);
      break;
    case Format::json: {
      Json top;
      top["command"] = doc.command;
      top["config"] = doc.config;
      top["results"] = doc.results;
      top["certificates"] = doc.certificates;
      out << top.dump(2) << '\n';
      break;
    }
  }
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string cell(const Rational& value) {
  const std::string dec = to_decimal_string(value);
  const std::string frac = to_fraction_string(value);
  return dec == frac ? dec : dec + " (" + frac + ")";
}

std::string cell(const ExtendedReal& value) {
  return value.is_exact() ? cell(*value.exact) : float_text(value.approx);
}

std::string decimal(const ExtendedReal& value) {
  return value.is_exact() ? to_decimal_string(*value.exact) : float_text(value.approx);
}

std::string fraction(const ExtendedReal& value) {
  return value.is_exact() ? to_fraction_string(*value.exact) : std::string();
}

Json value_json(const Rational& value) {
  Json j;
  j["fraction"] = to_fraction_string(value);
  j["decimal"] = to_decimal_string(value);
  return j;
}

Json value_json(const ExtendedReal& value) {
  if (value.is_exact()) return value_json(*value.exact);
  Json j;
  j["fraction"] = nullptr;
  j["decimal"] = float_text(value.approx);
  return j;
}

Json value_json(const QuadraticSurd& value) {
  Json j;
  j["exact"] = value.to_string();
  j["decimal"] = float_text(value.to_double());
  return j;
}

Json profile_json(const ReportProfile& profile) {
  Json rows = Json::array();
  for (const auto& report : profile.reports()) {
    Json row = Json::array();
    for (const auto& w : report.weights()) row.push_back(to_fraction_string(w));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json coalition_json(const Coalition& coalition) {
  Json members = Json::array();
  for (auto i : coalition.members()) members.push_back(i + 1);
  return members;
}

std::string coalition_text(const Coalition& coalition) {
  std::string out = "{";
  for (std::size_t k = 0; k < coalition.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(coalition.members()[k] + 1);
  }
  return out + "}";
}

std::string profile_text(const ReportProfile& profile) { return format_profile(profile); }

Json certificate_json(const ArbitrageCertificate& certificate) {
  Json j;
  j["kind"] = to_string(certificate.kind);
  j["exactness"] = to_string(certificate.exactness);
  j["coalition"] = coalition_json(certificate.coalition);
  j["baseline"] = profile_json(certificate.baseline);
  j["deviation"] = profile_json(certificate.deviation);
  auto list = [](const std::vector<ExtendedReal>& values, bool fractions_only) {
    Json a = Json::array();
    for (const auto& v : values) {
      if (fractions_only && v.is_exact()) {
        a.push_back(to_fraction_string(*v.exact));
      } else if (fractions_only) {
        a.push_back(decimal(v));
      } else {
        a.push_back(value_json(v));
      }
    }
    return a;
  };
  j["deltas"] = list(certificate.deltas, true);
  j["baseline_totals"] = list(certificate.baseline_totals, false);
  j["deviation_totals"] = list(certificate.deviation_totals, false);
  if (!certificate.expected_gains.empty()) {
    j["expected_gains"] = list(certificate.expected_gains, true);
  }
  return j;
}

std::vector<std::string> certificate_lines(const ArbitrageCertificate& certificate) {
  std::vector<std::string> lines;
  lines.push_back(to_string(certificate.kind) + " certificate (" +
                  to_string(certificate.exactness) + ") for coalition " +
                  coalition_text(certificate.coalition));
  lines.push_back("  baseline:  " + profile_text(certificate.baseline));
  lines.push_back("  deviation: " + profile_text(certificate.deviation));
  for (std::size_t j = 0; j < certificate.deltas.size(); ++j) {
    lines.push_back("  outcome " + std::to_string(j + 1) + ": coalition total " +
                    cell(certificate.baseline_totals[j]) + " -> " +
                    cell(certificate.deviation_totals[j]) + ", delta " +
                    cell(certificate.deltas[j]));
  }
  for (std::size_t k = 0; k < certificate.expected_gains.size(); ++k) {
    lines.push_back("  expert " + std::to_string(certificate.coalition.members()[k] + 1) +
                    " expected gain " + cell(certificate.expected_gains[k]));
  }
  return lines;
}

}  // namespace elicit::cli
