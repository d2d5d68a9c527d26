#pragma once

#include <cstddef>
#include <cstdint>

#include "synthaudit/tabular/table.hpp"

namespace synthaudit::tabular {

/// Seeded mixed-type table: four numerical columns drawn from a
/// three-component Gaussian mixture, a categorical column tied to the mixture
/// component, and an independent categorical column. Row ids start at first_id.
Table make_mixture_table(std::size_t rows, std::uint64_t seed, RowId first_id = 0);

/// Seeded table whose columns are mutually independent (two numerical, two categorical).
Table make_independent_table(std::size_t rows, std::uint64_t seed, RowId first_id = 0);

}  // namespace synthaudit::tabular
