#include "coyotekit/ir/cfg.hpp"

#include <deque>

namespace coyotekit::ir {

std::set<BlockRef> reachableBlocks(const Module& module, const Function& fn, int from,
                                   int callDepth) {
    std::set<BlockRef> out;
    if (from < 0 || from >= static_cast<int>(fn.blocks.size()))
        return out;

    std::deque<int> work{from};
    std::set<int> seen{from};
    while (!work.empty()) {
        int cur = work.front();
        work.pop_front();
        out.insert(BlockRef{fn.name, cur});
        const Block& blk = fn.blocks[cur];
        if (callDepth > 0) {
            for (const Instr& in : blk.instrs) {
                if (in.op != Opcode::Call)
                    continue;
                const Function* callee = module.findFunction(in.symbol);
                if (callee != nullptr)
                    out.insert(BlockRef{callee->name, callee->entry});
            }
        }
        auto push = [&](int target) {
            if (target >= 0 && target < static_cast<int>(fn.blocks.size()) &&
                seen.insert(target).second)
                work.push_back(target);
        };
        switch (blk.term.kind) {
        case Terminator::Kind::Br:
            push(blk.term.tTarget);
            push(blk.term.fTarget);
            break;
        case Terminator::Kind::Jmp:
            push(blk.term.tTarget);
            break;
        case Terminator::Kind::Ret:
            break;
        }
    }
    return out;
}

std::vector<BranchSite> branchSites(const Function& fn) {
    std::vector<BranchSite> sites;
    for (const Block& blk : fn.blocks) {
        if (blk.term.kind != Terminator::Kind::Br)
            continue;
        BranchSite s;
        s.id = InstrId{fn.name, blk.id, static_cast<int>(blk.instrs.size())};
        s.trueTarget = blk.term.tTarget;
        s.falseTarget = blk.term.fTarget;
        sites.push_back(std::move(s));
    }
    return sites;
}

} // namespace coyotekit::ir
