#pragma once

#include <set>
#include <vector>

#include "coyotekit/ir/ir.hpp"

namespace coyotekit::ir {

struct BranchSite {
    InstrId id; // id of the br terminator
    int trueTarget = -1;
    int falseTarget = -1;
};

// Forward closure over CFG edges starting at `from`, plus the entry blocks of
// defined functions called anywhere inside that closure. The interprocedural
// extension is exactly one level deep: callee entries are included, their
// successors are not. `callDepth` is the tunable for that extension (0
// disables it; values above 1 are not implemented on purpose).
std::set<BlockRef> reachableBlocks(const Module& module, const Function& fn, int from,
                                   int callDepth = 1);

// All conditional branch terminators of the function in ascending InstrId
// order.
std::vector<BranchSite> branchSites(const Function& fn);

} // namespace coyotekit::ir
