#pragma once

namespace synthaudit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitGenerator = 3;

/// Entry point of the `audit` tool. Returns the process exit code.
int run(int argc, char** argv);

}  // namespace synthaudit::cli
