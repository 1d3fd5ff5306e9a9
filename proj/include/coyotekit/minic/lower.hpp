#pragma once

#include "coyotekit/ir/ir.hpp"
#include "coyotekit/minic/ast.hpp"

namespace coyotekit::minic {

// Lowers an analyzed program to IR. Mutable variables become stack slots
// accessed through load/store; temporaries are single-assignment registers;
// short-circuit operators become control flow. Total on valid ASTs.
ir::Module lower(const SourceProgram& program);

} // namespace coyotekit::minic
