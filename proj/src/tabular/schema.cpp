#include "synthaudit/tabular/schema.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "synthaudit/error.hpp"

namespace synthaudit::tabular {

using nlohmann::json;

const char* to_string(ColumnKind kind) noexcept {
    return kind == ColumnKind::numerical ? "numerical" : "categorical";
}

Schema::Schema(std::vector<Column> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw ValidationError("schema must contain at least one column");
    std::set<std::string> seen;
    for (const auto& c : columns_) {
        if (c.name.empty()) throw ValidationError("schema column names must be non-empty");
        if (!seen.insert(c.name).second) throw ValidationError("duplicate schema column name '" + c.name + "'");
        if (c.kind == ColumnKind::numerical && c.categories)
            throw ValidationError("numerical column '" + c.name + "' cannot declare categories");
        if (c.categories) {
            std::set<std::string> cats(c.categories->begin(), c.categories->end());
            if (cats.size() != c.categories->size())
                throw ValidationError("column '" + c.name + "' declares duplicate categories");
        }
    }
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name == name) return i;
    return std::nullopt;
}

std::size_t Schema::num_numerical() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.kind == ColumnKind::numerical;
    return n;
}

std::size_t Schema::num_categorical() const { return columns_.size() - num_numerical(); }

bool Schema::compatible_with(const Schema& other) const {
    if (columns_.size() != other.columns_.size()) return false;
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name != other.columns_[i].name || columns_[i].kind != other.columns_[i].kind) return false;
    return true;
}

Schema Schema::without(std::string_view name) const {
    auto idx = index_of(name);
    if (!idx) throw ValidationError("column '" + std::string(name) + "' not in schema");
    std::vector<Column> cols;
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (i != *idx) cols.push_back(columns_[i]);
    return Schema(std::move(cols));
}

std::string Schema::to_json() const {
    json cols = json::array();
    for (const auto& c : columns_) {
        json j{{"name", c.name}, {"kind", tabular::to_string(c.kind)}};
        if (c.categories) j["categories"] = *c.categories;
        cols.push_back(std::move(j));
    }
    return json{{"columns", cols}}.dump();
}

Schema Schema::from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("schema is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("columns") || !doc["columns"].is_array())
        throw ValidationError("schema JSON must be an object with a \"columns\" array");
    std::vector<Column> cols;
    for (const auto& jc : doc["columns"]) {
        if (!jc.is_object() || !jc.contains("name") || !jc["name"].is_string() || !jc.contains("kind") ||
            !jc["kind"].is_string())
            throw ValidationError("each schema column needs string \"name\" and \"kind\" fields");
        Column c;
        c.name = jc["name"].get<std::string>();
        const auto kind = jc["kind"].get<std::string>();
        if (kind == "numerical")
            c.kind = ColumnKind::numerical;
        else if (kind == "categorical")
            c.kind = ColumnKind::categorical;
        else
            throw ValidationError("column '" + c.name + "' has unknown kind '" + kind + "'");
        if (jc.contains("categories")) {
            const auto& jcat = jc["categories"];
            if (!jcat.is_array()) throw ValidationError("\"categories\" of '" + c.name + "' must be an array");
            std::vector<std::string> cats;
            for (const auto& v : jcat) {
                if (!v.is_string()) throw ValidationError("categories of '" + c.name + "' must be strings");
                cats.push_back(v.get<std::string>());
            }
            c.categories = std::move(cats);
        }
        cols.push_back(std::move(c));
    }
    return Schema(std::move(cols));
}

Schema load_schema(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open schema file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return Schema::from_json(ss.str());
}

void save_schema(const Schema& schema, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write schema file " + path.string());
    out << schema.to_json() << '\n';
}

}  // namespace synthaudit::tabular
