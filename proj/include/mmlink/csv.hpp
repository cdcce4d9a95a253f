#pragma once

#include <string>
#include <vector>

namespace mmlink {

// Deterministic CSV staging: rows are kept as formatted strings in insertion order.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
};

// Shortest-exact decimal for a double (round-trips bit for bit); integers print plainly.
std::string format_value(double v);
std::string format_value(long v);
std::string format_value(int v);

// Writes header + rows, comma separated, each line '\n'-terminated (the last included).
// Throws IoError when the path cannot be written or the table is empty.
void emit_csv(const CsvTable& table, const std::string& path);

// The same bytes emit_csv would write, for in-memory comparisons.
std::string render_csv(const CsvTable& table);

} // namespace mmlink
