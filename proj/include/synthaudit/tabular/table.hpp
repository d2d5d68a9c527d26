#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "synthaudit/tabular/schema.hpp"

namespace synthaudit::tabular {

using RowId = std::uint64_t;
using Cell = std::variant<double, std::string>;
using Row = std::vector<Cell>;

/// Row ids of generator output start here so they never collide with ids
/// assigned to loaded data.
inline constexpr RowId kSyntheticIdBase = RowId{1} << 48;

/// Typed table with a stable identity per row. Construction validates every
/// invariant; afterwards the table is immutable.
class Table {
public:
    Table(Schema schema, std::vector<Row> rows, std::vector<RowId> row_ids);

    /// Assigns row ids first_id, first_id + 1, ...
    static Table with_sequential_ids(Schema schema, std::vector<Row> rows, RowId first_id = 0);

    const Schema& schema() const noexcept { return schema_; }
    std::size_t num_rows() const noexcept { return rows_.size(); }
    std::size_t num_cols() const noexcept { return schema_.size(); }
    bool empty() const noexcept { return rows_.empty(); }

    const std::vector<Row>& rows() const noexcept { return rows_; }
    const Row& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<RowId>& row_ids() const noexcept { return row_ids_; }

    double numeric(std::size_t row, std::size_t col) const;
    const std::string& category(std::size_t row, std::size_t col) const;

    std::vector<double> numeric_column(std::size_t col) const;
    std::vector<std::string> categorical_column(std::size_t col) const;

    /// Rows at the given positions, keeping their ids.
    Table select(std::span<const std::size_t> positions) const;
    /// Rows of this table followed by rows of `other`; ids must stay unique.
    Table concat(const Table& other) const;
    /// Same cells, ids replaced by first_id, first_id + 1, ...
    Table with_fresh_ids(RowId first_id) const;
    /// Same rows restricted to every column except `name`.
    Table without_column(std::string_view name) const;

private:
    Schema schema_;
    std::vector<Row> rows_;
    std::vector<RowId> row_ids_;
};

}  // namespace synthaudit::tabular
