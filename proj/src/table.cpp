#include "eldermodel/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eldermodel/errors.hpp"

namespace eldermodel {

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw parameter_error("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

// Quote a CSV field only when it needs it.
std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char ch : field) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

std::string cell_to_csv(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return csv_escape(v);
            }
        },
        cell);
}

nlohmann::json cell_to_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                // JSON has no NaN/inf literal; map non-finite to null.
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else {
                return v;
            }
        },
        cell);
}

void check_shape(const Table& table) {
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        if (table.rows[i].size() != table.columns.size())
            throw parameter_error("table row " + std::to_string(i) + " has " +
                                  std::to_string(table.rows[i].size()) + " cells, expected " +
                                  std::to_string(table.columns.size()));
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    check_shape(table);
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j) out << ',';
        out << csv_escape(table.columns[j]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << cell_to_csv(row[j]);
        }
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    check_shape(table);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t j = 0; j < row.size(); ++j)
            obj[table.columns[j]] = cell_to_json(row[j]);
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
}

void write_table(const Table& table, const std::string& out_path, Format format) {
    const bool to_stdout = out_path.empty() || out_path == "-";
    std::ofstream file;
    if (!to_stdout) {
        file.open(out_path, std::ios::binary);
        if (!file) throw io_error("cannot open output file '" + out_path + "'");
    }
    std::ostream& out = to_stdout ? std::cout : file;
    if (format == Format::csv)
        write_csv(table, out);
    else
        write_json(table, out);
    out.flush();
    if (!out) throw io_error("failed writing output" +
                             (to_stdout ? std::string() : " to '" + out_path + "'"));
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        // Nothing but the line break seen: a blank line, not a record.
        const bool blank = record.empty() && field.empty() && !field_started;
        end_field();
        if (!blank) records.push_back(record);
        record.clear();
    };

    char ch;
    while (in.get(ch)) {
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get(ch);
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        switch (ch) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                break;
            default:
                field += ch;
                field_started = true;
                break;
        }
    }
    if (in_quotes) throw data_error("unterminated quote in CSV input");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

}  // namespace eldermodel
