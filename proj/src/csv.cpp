#include "splitdde/csv.hpp"

#include "splitdde/config.hpp"
#include "splitdde/types.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace splitdde {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (!std::isnan(row[i])) out << format_double(row[i]);
        }
        out << '\n';
    }
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    throw ConfigError("csv has no column '" + name + "'");
}

CsvTable read_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty csv");
    table.header = split_fields(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const std::string& field : split_fields(line)) {
            row.push_back(field.empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(field));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace splitdde
