#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "synthaudit/tabular/table.hpp"

namespace synthaudit::tabular {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Standardization + one-hot encoding fitted on a reference table.
///
/// Numerical columns map to (x - mean) / std using the population standard
/// deviation; a zero std is stored as 1. Categorical columns map to a one-hot
/// block over the vocabulary, and values outside the vocabulary map to an
/// all-zero block.
struct EncoderState {
    struct NumericStats {
        double mean = 0.0;
        double std = 1.0;
    };
    struct ColumnEncoding {
        ColumnKind kind = ColumnKind::numerical;
        NumericStats stats;
        std::vector<std::string> vocabulary;
        std::size_t offset = 0;  // first feature index of this column
    };

    Schema schema;
    std::vector<ColumnEncoding> columns;
    std::size_t feature_dim = 0;
};

/// Vocabulary order: declared categories first (if any), then unseen values
/// in first-appearance order. Throws ValidationError on an empty reference.
EncoderState fit_encoder(const Table& reference);

/// Throws ValidationError if `t`'s schema is not compatible with the encoder's.
Matrix encode(const Table& t, const EncoderState& enc);

}  // namespace synthaudit::tabular
