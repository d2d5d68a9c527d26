#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <variant>

#include "synthaudit/tabular/table.hpp"

namespace synthaudit::generators {

struct IndependentMarginals {};
struct Identity {};

/// Emits round(p * size) training rows and the rest from a disjoint control pool.
struct Leaky {
    double p = 0.0;
    std::shared_ptr<const tabular::Table> control;
};

/// Marginal-preserving per-cell noise of strength alpha.
struct Anonymizer {
    double alpha = 0.0;
};

/// External command honouring the file-based adapter contract.
struct External {
    std::string command_template;
    std::chrono::seconds timeout{3600};
    /// Parent directory for per-call working directories; empty means the system temp dir.
    std::filesystem::path workdir_root;
    /// Keep working directories after the call (for debugging adapters).
    bool keep_workdir = false;
};

using GeneratorSpec = std::variant<IndependentMarginals, Identity, Leaky, Anonymizer, External>;

/// Human-readable description in the CLI flag syntax, e.g. "risk:leaky:p=0.5".
std::string describe(const GeneratorSpec& spec);

/// Synthetic table of exactly `size` rows with the training schema and fresh
/// row ids; deterministic in (spec, train, size, seed). Throws GeneratorError
/// when the generator cannot produce a valid table.
tabular::Table generate(const GeneratorSpec& spec, const tabular::Table& train, std::size_t size, std::uint64_t seed);

/// Each cell drawn independently, with replacement, from its column's
/// empirical marginal in `train`.
tabular::Table gen_independent_marginals(const tabular::Table& train, std::size_t size, std::uint64_t seed);

/// Requires |control| >= size, size <= |train| and control ids disjoint from
/// train ids. Output rows are shuffled.
tabular::Table gen_leaky(const tabular::Table& train, const tabular::Table& control, double p, std::size_t size,
                         std::uint64_t seed);

/// Number of training rows emitted by the leaky model: round-half-up of p * size.
std::size_t leaky_train_rows(double p, std::size_t size);

struct NoiseLevels {
    double numerical;    // alpha^3
    double categorical;  // alpha^2
};
NoiseLevels anonymizer_noise(double alpha);

/// Numerical cells: x' = f^-1(sqrt(1 - a_num) f(x) + sqrt(a_num) eps) with f
/// the column's quantile map fitted on `train` and eps ~ N(0, 1). Categorical
/// cells: with probability a_cat, replaced by a draw from the column's
/// empirical marginal (which may return the same value).
tabular::Table anonymize(const tabular::Table& train, double alpha, std::uint64_t seed);

}  // namespace synthaudit::generators
