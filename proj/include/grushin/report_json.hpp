#pragma once

#include "grushin/engine.hpp"
#include "grushin/lemmas.hpp"
#include "grushin/params.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace grushin {

// Non-finite doubles become null (JSON has no inf/nan).
nlohmann::json to_json(const AdmissibilityReport& r);
nlohmann::json to_json(const TermReport& t);
nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const ScalingReport& r);
nlohmann::json to_json(const SearchReport& r);
nlohmann::json to_json(const InequalitySpec& s);
nlohmann::json to_json(const GrushinSpace& s);

// RFC 4180 table: header plus rows, '.' decimals, CRLF line ends
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

CsvTable csv_admissibility(const AdmissibilityReport& r);
CsvTable csv_inequality(const InequalityReport& r);
CsvTable csv_scaling(const ScalingReport& r);
CsvTable csv_search(const SearchReport& r);

}  // namespace grushin
