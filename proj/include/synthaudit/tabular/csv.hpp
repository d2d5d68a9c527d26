#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "synthaudit/tabular/table.hpp"

namespace synthaudit::tabular {

/// RFC-4180 record splitter. Accepts LF or CRLF line endings and quoted
/// fields with embedded separators, quotes ("") and newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// Load a CSV whose header matches `schema` column-for-column. Row ids are
/// first_id, first_id + 1, ... in file order.
Table load_table(const std::filesystem::path& csv_path, const Schema& schema, RowId first_id = 0);
Table load_table(const std::filesystem::path& csv_path, const std::filesystem::path& schema_path,
                 RowId first_id = 0);
Table parse_table(std::string_view csv_text, const Schema& schema, RowId first_id = 0);

/// Canonical CSV text: header plus rows, shortest round-trip numbers, LF endings.
std::string to_csv(const Table& table);
void write_csv(const Table& table, const std::filesystem::path& path);

/// 64-bit FNV-1a hash of the canonical CSV text.
std::uint64_t fingerprint(const Table& table);

}  // namespace synthaudit::tabular
