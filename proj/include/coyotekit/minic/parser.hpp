#pragma once

#include <string>

#include "coyotekit/minic/ast.hpp"
#include "coyotekit/support/diag.hpp"

namespace coyotekit::minic {

// Syntax-only parse of one source file. Appends the file's declarations to
// `program` and any findings to `diags`. Name resolution and type checking
// run later, once all files are assembled (see analyze).
void parse(const std::string& sourceText, const std::string& path, SourceProgram& program,
           DiagnosticList& diags);

// Cross-file checks: duplicate definitions, unknown identifiers, array vs
// scalar usage, call arity, extern signature agreement.
DiagnosticList analyze(const SourceProgram& program);

// parse + analyze over a list of (path, text) pairs.
SourceProgram parseProgram(const std::vector<std::pair<std::string, std::string>>& files,
                           DiagnosticList& diags);

} // namespace coyotekit::minic
