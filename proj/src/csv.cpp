#include "mmlink/csv.hpp"

#include <cstdio>
#include <fstream>

#include "mmlink/errors.hpp"

namespace mmlink {

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header.size())
        throw IoError("csv: row width " + std::to_string(cells.size()) +
                      " does not match header width " + std::to_string(header.size()));
    rows.push_back(std::move(cells));
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_value(long v) { return std::to_string(v); }
std::string format_value(int v) { return std::to_string(v); }

std::string render_csv(const CsvTable& table) {
    if (table.header.empty()) throw IoError("csv: table has no header");
    std::string out;
    auto append_line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    append_line(table.header);
    for (const auto& row : table.rows) append_line(row);
    return out;
}

void emit_csv(const CsvTable& table, const std::string& path) {
    const std::string bytes = render_csv(table);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("csv: cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("csv: write failed for '" + path + "'");
}

} // namespace mmlink
