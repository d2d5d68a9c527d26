#include "synthaudit/tabular/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "synthaudit/error.hpp"

namespace synthaudit::tabular {

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;  // distinguishes an empty line from a line holding one empty field
    bool after_quote = false;
    std::size_t line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        after_quote = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
        field_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                    after_quote = true;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                if (!field.empty() || after_quote)
                    throw ValidationError("CSV line " + std::to_string(line) + ": quote inside unquoted field");
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                end_field();
                field_started = true;
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') break;
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                break;
            default:
                if (after_quote)
                    throw ValidationError("CSV line " + std::to_string(line) + ": text after closing quote");
                field.push_back(ch);
                field_started = true;
        }
    }
    if (in_quotes) throw ValidationError("CSV ends inside a quoted field");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

std::string format_number(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

std::string quote_if_needed(const std::string& s) {
    const bool needs = s.empty() || s.find_first_of(",\"\r\n") != std::string::npos || s.front() == ' ' ||
                       s.back() == ' ';
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Table parse_table(std::string_view csv_text, const Schema& schema, RowId first_id) {
    if (csv_text.starts_with("\xEF\xBB\xBF")) csv_text.remove_prefix(3);
    auto records = parse_csv(csv_text);
    if (records.empty()) throw ValidationError("CSV has no header row");
    const auto& header = records.front();
    const auto& cols = schema.columns();
    if (header.size() != cols.size())
        throw ValidationError("CSV header has " + std::to_string(header.size()) + " columns, schema has " +
                              std::to_string(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        if (header[c] != cols[c].name)
            throw ValidationError("CSV header column " + std::to_string(c) + " is '" + header[c] + "', schema expects '" +
                                  cols[c].name + "'");

    std::vector<Row> rows;
    rows.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::size_t data_row = r;  // 1-based, header excluded
        auto where = [&](std::size_t c) {
            return "row " + std::to_string(data_row) + ", column '" + cols[c].name + "'";
        };
        if (rec.size() != cols.size())
            throw ValidationError("row " + std::to_string(data_row) + " has " + std::to_string(rec.size()) +
                                  " fields, expected " + std::to_string(cols.size()));
        Row row;
        row.reserve(cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const std::string& text = rec[c];
            if (text.empty()) throw ValidationError(where(c) + ": missing value");
            if (cols[c].kind == ColumnKind::numerical) {
                double v = 0.0;
                const char* first = text.data();
                const char* last = text.data() + text.size();
                if (*first == '+') ++first;
                auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
                if (ec != std::errc() || ptr != last || !std::isfinite(v))
                    throw ValidationError(where(c) + ": cannot parse '" + text + "' as a number");
                row.emplace_back(v);
            } else {
                if (cols[c].categories &&
                    std::find(cols[c].categories->begin(), cols[c].categories->end(), text) == cols[c].categories->end())
                    throw ValidationError(where(c) + ": value '" + text + "' is not a declared category");
                row.emplace_back(text);
            }
        }
        rows.push_back(std::move(row));
    }
    return Table::with_sequential_ids(schema, std::move(rows), first_id);
}

Table load_table(const std::filesystem::path& csv_path, const Schema& schema, RowId first_id) {
    try {
        return parse_table(read_file(csv_path), schema, first_id);
    } catch (const ValidationError& e) {
        throw ValidationError(csv_path.string() + ": " + e.what());
    }
}

Table load_table(const std::filesystem::path& csv_path, const std::filesystem::path& schema_path, RowId first_id) {
    return load_table(csv_path, load_schema(schema_path), first_id);
}

std::string to_csv(const Table& table) {
    std::string out;
    const auto& cols = table.schema().columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) out.push_back(',');
        out += quote_if_needed(cols[c].name);
    }
    out.push_back('\n');
    for (const auto& row : table.rows()) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out.push_back(',');
            if (const double* v = std::get_if<double>(&row[c]))
                out += format_number(*v);
            else
                out += quote_if_needed(std::get<std::string>(row[c]));
        }
        out.push_back('\n');
    }
    return out;
}

void write_csv(const Table& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write CSV file " + path.string());
    out << to_csv(table);
    if (!out) throw Error("failed writing CSV file " + path.string());
}

std::uint64_t fingerprint(const Table& table) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_csv(table)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace synthaudit::tabular
