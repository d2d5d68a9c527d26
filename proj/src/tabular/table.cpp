#include "synthaudit/tabular/table.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>

#include "synthaudit/error.hpp"

namespace synthaudit::tabular {

Table::Table(Schema schema, std::vector<Row> rows, std::vector<RowId> row_ids)
    : schema_(std::move(schema)), rows_(std::move(rows)), row_ids_(std::move(row_ids)) {
    if (rows_.size() != row_ids_.size()) throw ValidationError("row id count does not match row count");
    const auto& cols = schema_.columns();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Row& row = rows_[r];
        if (row.size() != cols.size())
            throw ValidationError("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                  " cells, expected " + std::to_string(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].kind == ColumnKind::numerical) {
                const double* v = std::get_if<double>(&row[c]);
                if (!v) throw ValidationError("row " + std::to_string(r) + ", column '" + cols[c].name + "': expected a number");
                if (!std::isfinite(*v))
                    throw ValidationError("row " + std::to_string(r) + ", column '" + cols[c].name + "': non-finite value");
            } else if (!std::holds_alternative<std::string>(row[c])) {
                throw ValidationError("row " + std::to_string(r) + ", column '" + cols[c].name + "': expected a category");
            }
        }
    }
    std::unordered_set<RowId> seen;
    seen.reserve(row_ids_.size());
    for (RowId id : row_ids_)
        if (!seen.insert(id).second) throw ValidationError("duplicate row id " + std::to_string(id));
}

Table Table::with_sequential_ids(Schema schema, std::vector<Row> rows, RowId first_id) {
    std::vector<RowId> ids(rows.size());
    std::iota(ids.begin(), ids.end(), first_id);
    return Table(std::move(schema), std::move(rows), std::move(ids));
}

double Table::numeric(std::size_t row, std::size_t col) const { return std::get<double>(rows_.at(row).at(col)); }

const std::string& Table::category(std::size_t row, std::size_t col) const {
    return std::get<std::string>(rows_.at(row).at(col));
}

std::vector<double> Table::numeric_column(std::size_t col) const {
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(std::get<double>(r.at(col)));
    return out;
}

std::vector<std::string> Table::categorical_column(std::size_t col) const {
    std::vector<std::string> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(std::get<std::string>(r.at(col)));
    return out;
}

Table Table::select(std::span<const std::size_t> positions) const {
    std::vector<Row> rows;
    std::vector<RowId> ids;
    rows.reserve(positions.size());
    ids.reserve(positions.size());
    for (std::size_t p : positions) {
        rows.push_back(rows_.at(p));
        ids.push_back(row_ids_[p]);
    }
    return Table(schema_, std::move(rows), std::move(ids));
}

Table Table::concat(const Table& other) const {
    if (!schema_.compatible_with(other.schema_)) throw ValidationError("cannot concatenate tables with different schemas");
    std::vector<Row> rows = rows_;
    std::vector<RowId> ids = row_ids_;
    rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
    ids.insert(ids.end(), other.row_ids_.begin(), other.row_ids_.end());
    return Table(schema_, std::move(rows), std::move(ids));
}

Table Table::with_fresh_ids(RowId first_id) const { return with_sequential_ids(schema_, rows_, first_id); }

Table Table::without_column(std::string_view name) const {
    const auto idx = schema_.index_of(name);
    Schema reduced = schema_.without(name);
    std::vector<Row> rows;
    rows.reserve(rows_.size());
    for (const auto& r : rows_) {
        Row out;
        out.reserve(r.size() - 1);
        for (std::size_t c = 0; c < r.size(); ++c)
            if (c != *idx) out.push_back(r[c]);
        rows.push_back(std::move(out));
    }
    return Table(std::move(reduced), std::move(rows), row_ids_);
}

}  // namespace synthaudit::tabular
