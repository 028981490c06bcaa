#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "elicit/arbitrage.hpp"
#include "elicit/scoring.hpp"
#include "elicit/simplex.hpp"
#include "elicit/surd.hpp"

namespace elicit::cli {

using Json = nlohmann::ordered_json;

enum class Format { table, json, csv };

Format parse_format(const std::string& name);

/// One command's output. Commands fill this once; `emit` renders it in the
/// requested format so the three formats can never disagree.
struct Document {
  std::string command;
  Json config = Json::object();
  Json results = Json::array();
  Json certificates = Json::array();

  std::vector<std::string> notes;  // table format only, printed above the rows
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void emit(const Document& doc, Format format, std::ostream& out);

// Value rendering. Decimals always travel with their exact fraction.
std::string cell(const Rational& value);           // "1.76 (44/25)"
std::string cell(const ExtendedReal& value);
Json value_json(const Rational& value);            // {"fraction": .., "decimal": ..}
Json value_json(const ExtendedReal& value);
Json value_json(const QuadraticSurd& value);
std::string decimal(const ExtendedReal& value);
std::string fraction(const ExtendedReal& value);   // "" for float values

Json profile_json(const ReportProfile& profile);
Json coalition_json(const Coalition& coalition);   // 1-based
std::string coalition_text(const Coalition& coalition);
std::string profile_text(const ReportProfile& profile);
Json certificate_json(const ArbitrageCertificate& certificate);
/// Human lines describing a certificate.
std::vector<std::string> certificate_lines(const ArbitrageCertificate& certificate);

std::string csv_escape(const std::string& field);

}  // namespace elicit::cli
