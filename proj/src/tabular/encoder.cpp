#include "synthaudit/tabular/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "synthaudit/error.hpp"

namespace synthaudit::tabular {

EncoderState fit_encoder(const Table& reference) {
    if (reference.empty()) throw ValidationError("cannot fit an encoder on an empty table");
    EncoderState enc{reference.schema(), {}, 0};
    const auto& cols = reference.schema().columns();
    const double n = static_cast<double>(reference.num_rows());
    std::size_t offset = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        EncoderState::ColumnEncoding ce;
        ce.kind = cols[c].kind;
        ce.offset = offset;
        if (ce.kind == ColumnKind::numerical) {
            double sum = 0.0;
            for (const auto& row : reference.rows()) sum += std::get<double>(row[c]);
            const double mean = sum / n;
            double ss = 0.0;
            for (const auto& row : reference.rows()) {
                const double d = std::get<double>(row[c]) - mean;
                ss += d * d;
            }
            const double sd = std::sqrt(ss / n);
            ce.stats = {mean, sd > 0.0 ? sd : 1.0};
            offset += 1;
        } else {
            if (cols[c].categories) ce.vocabulary = *cols[c].categories;
            for (const auto& row : reference.rows()) {
                const auto& v = std::get<std::string>(row[c]);
                if (std::find(ce.vocabulary.begin(), ce.vocabulary.end(), v) == ce.vocabulary.end())
                    ce.vocabulary.push_back(v);
            }
            offset += ce.vocabulary.size();
        }
        enc.columns.push_back(std::move(ce));
    }
    enc.feature_dim = offset;
    return enc;
}

Matrix encode(const Table& t, const EncoderState& enc) {
    if (!t.schema().compatible_with(enc.schema))
        throw ValidationError("table schema does not match the fitted encoder");
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(t.num_rows()), static_cast<Eigen::Index>(enc.feature_dim));
    for (std::size_t c = 0; c < enc.columns.size(); ++c) {
        const auto& ce = enc.columns[c];
        const auto col0 = static_cast<Eigen::Index>(ce.offset);
        if (ce.kind == ColumnKind::numerical) {
            for (std::size_t r = 0; r < t.num_rows(); ++r)
                out(static_cast<Eigen::Index>(r), col0) = (std::get<double>(t.rows()[r][c]) - ce.stats.mean) / ce.stats.std;
        } else {
            std::unordered_map<std::string_view, std::size_t> index;
            for (std::size_t k = 0; k < ce.vocabulary.size(); ++k) index.emplace(ce.vocabulary[k], k);
            for (std::size_t r = 0; r < t.num_rows(); ++r) {
                auto it = index.find(std::get<std::string>(t.rows()[r][c]));
                if (it != index.end()) out(static_cast<Eigen::Index>(r), col0 + static_cast<Eigen::Index>(it->second)) = 1.0;
            }
        }
    }
    return out;
}

}  // namespace synthaudit::tabular
