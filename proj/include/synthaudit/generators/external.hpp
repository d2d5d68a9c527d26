#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "synthaudit/generators/generator.hpp"

namespace synthaudit::generators {

/// Replaces {train}, {schema}, {out}, {size} and {seed}. Path values are
/// single-quoted for the shell. Throws ValidationError on an unknown
/// placeholder or when {out} is missing.
std::string expand_command(const std::string& command_template, const std::map<std::string, std::string>& values);

struct ProcessResult {
    int exit_code = 0;
    bool timed_out = false;
};

/// Runs `command` through /bin/sh in `cwd`, stdout and stderr redirected to
/// the given files, killing the process group after `timeout`.
ProcessResult run_shell(const std::string& command, const std::filesystem::path& cwd,
                        const std::filesystem::path& stdout_path, const std::filesystem::path& stderr_path,
                        std::chrono::milliseconds timeout);

/// Writes train.csv and schema.json into a fresh working directory, runs the
/// adapter, then loads and validates out.csv (schema and exact row count).
tabular::Table run_external(const External& spec, const tabular::Table& train, std::size_t size, std::uint64_t seed);

}  // namespace synthaudit::generators
