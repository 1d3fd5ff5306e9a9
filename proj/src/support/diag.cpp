#include "coyotekit/support/diag.hpp"

#include <sstream>

namespace coyotekit {

std::string Diagnostic::str() const {
    std::ostringstream os;
    if (!file.empty())
        os << file << ":";
    if (line > 0) {
        os << line;
        if (column > 0)
            os << ":" << column;
        os << ": ";
    } else if (!file.empty()) {
        os << " ";
    }
    os << message;
    return os.str();
}

std::string renderDiagnostics(const DiagnosticList& diags) {
    std::ostringstream os;
    for (const auto& d : diags)
        os << d.str() << "\n";
    return os.str();
}

} // namespace coyotekit
