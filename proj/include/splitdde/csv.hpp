#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace splitdde {

/// Writes a header row and numeric rows: comma separated, '\n' line ends,
/// 17 significant digits, NaN written as an empty field.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Reads back what write_csv produced (empty fields become NaN).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] int column(const std::string& name) const;
};

[[nodiscard]] CsvTable read_csv(const std::string& text);

}  // namespace splitdde
