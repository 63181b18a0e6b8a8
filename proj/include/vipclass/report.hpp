#pragma once

// JSON and CSV renderings of analyses, family records and summary tables.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vipclass/chevalley_weil.hpp"
#include "vipclass/classification.hpp"
#include "vipclass/cover_decomposition.hpp"

namespace vipclass {

/// Genera, invariants and per-m map analyses of one datum; with
/// `eigensheaves` also the (character, r^1..r^n, h^0) table per m.
nlohmann::json analysis_report(const AlgebraicDatum& D, const std::vector<int>& m_range, bool eigensheaves = false);

nlohmann::json character_report(const CharacterMultiset& c);

nlohmann::json record_json(const FamilyRecord& r);
nlohmann::json table_json(const std::vector<TableRow>& rows);

/// Header row of table_csv.
std::string table_csv_header();
/// Columns: G, k1..k3, T1..T3, h30, h20, h10, h11, h21, then bpf, bir, nbir, ?
/// for m = 1 and m = 2, then the number of families.
void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows);

/// One line per family: shape, genera, Hodge numbers and m-statuses.
void write_records_csv(std::ostream& out, const std::vector<FamilyRecord>& records);

/// Quotes a CSV field only when it contains a comma.
std::string csv_field(const std::string& s);

}  // namespace vipclass
