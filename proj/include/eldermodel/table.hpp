#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

// Small column-named result table plus the CSV/JSON writers shared by the
// command-line tool, and a minimal quote-aware CSV reader for data files.

namespace eldermodel {

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };

// "csv" or "json"; anything else is a parameter_error.
Format parse_format(const std::string& name);

// Shortest-round-trip style with 12 significant digits, locale independent.
std::string format_double(double value);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

// Writes in the requested format to the path, or to stdout when the path is
// empty or "-". Unwritable destinations raise io_error.
void write_table(const Table& table, const std::string& out_path, Format format);

// Parses CSV records: double quotes for embedded commas/quotes/newlines,
// blank lines skipped, trailing \r stripped. Fields come back unescaped.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

}  // namespace eldermodel
