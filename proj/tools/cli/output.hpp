// output.hpp: tabular results and their CSV / JSON serialization.

#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace randbath::cli {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // Trailing report lines; written as "# ..." after the CSV rows.
    std::vector<std::string> notes;
    // Structured counterpart of the notes for JSON output.
    nlohmann::json report = nlohmann::json::object();
};

// 17 significant digits, enough to round-trip any double.
std::string format_number(double value);

void write_csv(std::ostream& out, const Table& table);

// {"columns": [...], "rows": [[...], ...], "report": {...}} merged into `meta`.
nlohmann::json table_json(const Table& table, nlohmann::json meta);

}  // namespace randbath::cli
