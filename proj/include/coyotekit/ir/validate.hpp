#pragma once

#include "coyotekit/ir/ir.hpp"
#include "coyotekit/support/diag.hpp"

namespace coyotekit::ir {

// Structural validation: one terminator per block placed at the end, branch
// targets in range, registers assigned exactly once, alloca sizes >= 1,
// calls resolving to a defined function or a declared extern, global regions
// disjoint starting at address 1. Returns one diagnostic per violation; an
// empty list means the module is well-formed.
DiagnosticList validate(const Module& module);

} // namespace coyotekit::ir
