#pragma once

#include <cstddef>
#include <cstdint>

#include "synthaudit/tabular/table.hpp"

namespace synthaudit::tabular {

/// Disjoint target sets T1, T2 and shared set R, plus X1 = T1 + R and X2 = T2 + R.
struct RemiaSplit {
    Table t1;
    Table t2;
    Table r;
    Table x1;
    Table x2;
    double f;

    std::size_t records_used() const noexcept { return t1.num_rows() + t2.num_rows() + r.num_rows(); }
};

/// |T1| = |T2| = floor(f/(1+f)·|D|), |R| = |D| − 2|T1|.
std::size_t remia_target_size(std::size_t dataset_rows, double f);

/// Seeded uniform partition of `d`. The partition depends only on
/// (row count, f, seed). Throws ValidationError when f is outside (0, 1] or
/// the dataset is too small to give each target set at least one row.
RemiaSplit split_remia(const Table& d, double f, std::uint64_t seed);

}  // namespace synthaudit::tabular
