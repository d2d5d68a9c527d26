#include "synthaudit/error.hpp"

namespace synthaudit {

const char* to_string(GeneratorError::Kind kind) noexcept {
    switch (kind) {
        case GeneratorError::Kind::spawn_failure: return "spawn_failure";
        case GeneratorError::Kind::nonzero_exit: return "nonzero_exit";
        case GeneratorError::Kind::timeout: return "timeout";
        case GeneratorError::Kind::invalid_output: return "invalid_output";
        case GeneratorError::Kind::precondition: return "precondition";
    }
    return "unknown";
}

}  // namespace synthaudit
