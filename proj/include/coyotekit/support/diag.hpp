#pragma once

#include <string>
#include <vector>

namespace coyotekit {

// A single frontend or validator finding. line/column are 1-based; 0 means
// "no position" (module-level findings).
struct Diagnostic {
    std::string file;
    int line = 0;
    int column = 0;
    std::string message;

    std::string str() const;
};

using DiagnosticList = std::vector<Diagnostic>;

std::string renderDiagnostics(const DiagnosticList& diags);

} // namespace coyotekit
