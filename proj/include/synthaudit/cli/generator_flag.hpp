#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <string_view>

#include "synthaudit/generators/generator.hpp"

namespace synthaudit::cli {

/// Values the flag text cannot carry itself.
struct GeneratorContext {
    std::shared_ptr<const tabular::Table> leaky_control;
    std::chrono::seconds timeout{3600};
    std::filesystem::path workdir_root;
};

/// Parses `builtin:independent_marginals`, `builtin:identity`,
/// `risk:leaky:p=<v>`, `risk:anonymizer:alpha=<v>` and `exec:<template>`.
/// Throws ValidationError on anything else, on parameters outside [0, 1] and
/// on a leaky spec without a control table.
generators::GeneratorSpec parse_generator_flag(std::string_view text, const GeneratorContext& ctx);

/// Strict decimal parse of the whole string.
double parse_real(std::string_view text, std::string_view what);

}  // namespace synthaudit::cli
