#ifndef PSYS_DIAGNOSTIC_HPP
#define PSYS_DIAGNOSTIC_HPP

#include <optional>
#include <string>
#include <vector>

namespace psys {

/// Positioned parser message. line and column are 1-based; column counts bytes.
struct SourceDiagnostic {
    int line = 0;
    int column = 0;
    std::string message;
    std::string code;  // e.g. "P003"
};

std::string to_string(const SourceDiagnostic& d);

template <typename T>
struct Parsed {
    std::optional<T> value;
    std::vector<SourceDiagnostic> diagnostics;

    bool ok() const { return value.has_value() && diagnostics.empty(); }
};

}  // namespace psys

#endif  // PSYS_DIAGNOSTIC_HPP
