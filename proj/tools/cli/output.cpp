// output.cpp

#include "output.hpp"

#include <cmath>
#include <cstdio>

namespace randbath::cli {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (const auto* d = std::get_if<double>(&row[i])) {
                out << format_number(*d);
            } else {
                out << std::get<std::string>(row[i]);
            }
        }
        out << '\n';
    }
    for (const auto& note : table.notes) out << "# " << note << '\n';
}

nlohmann::json table_json(const Table& table, nlohmann::json meta) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& cell : row) {
            if (const auto* d = std::get_if<double>(&cell)) {
                if (std::isfinite(*d)) {
                    r.push_back(*d);
                } else {
                    r.push_back(format_number(*d));
                }
            } else {
                r.push_back(std::get<std::string>(cell));
            }
        }
        rows.push_back(std::move(r));
    }
    meta["columns"] = table.columns;
    meta["rows"] = std::move(rows);
    meta["report"] = table.report;
    return meta;
}

}  // namespace randbath::cli
