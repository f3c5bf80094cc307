#include "crari/error.hpp"

namespace crari {

Error::Error(ErrorKind kind, std::string module, const std::string& message)
    : std::runtime_error(module + ": " + message), kind_(kind), module_(std::move(module)) {}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Format: return "format";
        case ErrorKind::Structural: return "structural";
        case ErrorKind::Numeric: return "numeric";
        case ErrorKind::UnreachableTarget: return "unreachable-target";
        case ErrorKind::Precondition: return "precondition";
    }
    return "unknown";
}

}  // namespace crari
