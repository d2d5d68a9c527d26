#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace synthaudit::tabular {

enum class ColumnKind { numerical, categorical };

const char* to_string(ColumnKind kind) noexcept;

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::numerical;
    /// Declared category list (categorical columns only). When present, cells
    /// outside the list are rejected at ingestion.
    std::optional<std::vector<std::string>> categories;

    bool operator==(const Column&) const = default;
};

/// Ordered, uniquely named column list. Immutable after construction.
class Schema {
public:
    /// Throws ValidationError on empty/duplicate names or an empty column list.
    explicit Schema(std::vector<Column> columns);

    const std::vector<Column>& columns() const noexcept { return columns_; }
    const Column& column(std::size_t i) const { return columns_.at(i); }
    std::size_t size() const noexcept { return columns_.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;

    std::size_t num_numerical() const;
    std::size_t num_categorical() const;

    /// Same names and kinds in the same order (declared categories ignored).
    bool compatible_with(const Schema& other) const;

    /// Schema without the named column; throws if absent or if it is the only column.
    Schema without(std::string_view name) const;

    std::string to_json() const;
    static Schema from_json(std::string_view text);

    bool operator==(const Schema&) const = default;

private:
    std::vector<Column> columns_;
};

Schema load_schema(const std::filesystem::path& path);
void save_schema(const Schema& schema, const std::filesystem::path& path);

}  // namespace synthaudit::tabular
