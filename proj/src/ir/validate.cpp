#include "coyotekit/ir/validate.hpp"

#include <set>
#include <sstream>

namespace coyotekit::ir {

namespace {

void report(DiagnosticList& diags, const std::string& file, const std::string& message) {
    Diagnostic d;
    d.file = file;
    d.message = message;
    diags.push_back(std::move(d));
}

std::string at(const InstrId& id) { return " at " + id.str(); }

} // namespace

DiagnosticList validate(const Module& module) {
    DiagnosticList diags;

    // Global regions: contiguous from address 1, disjoint, initializer sized.
    int expectedBase = 1;
    std::set<std::string> globalNames;
    for (const auto& g : module.globals) {
        if (!globalNames.insert(g.name).second)
            report(diags, "", "duplicate global @" + g.name);
        if (g.size < 1)
            report(diags, "", "global @" + g.name + " has size < 1");
        if (g.base != expectedBase)
            report(diags, "", "global @" + g.name + " region not contiguous (base " +
                                  std::to_string(g.base) + ", expected " +
                                  std::to_string(expectedBase) + ")");
        if (static_cast<int>(g.init.size()) != g.size)
            report(diags, "", "global @" + g.name + " initializer length mismatch");
        expectedBase = g.base + g.size;
    }

    std::set<std::string> fnNames;
    for (const auto& f : module.functions) {
        if (!fnNames.insert(f.name).second)
            report(diags, f.file, "duplicate function @" + f.name);
    }

    for (const auto& f : module.functions) {
        const std::string& file = f.file;
        if (f.blocks.empty()) {
            report(diags, file, "function @" + f.name + " has no blocks");
            continue;
        }
        if (f.entry < 0 || f.entry >= static_cast<int>(f.blocks.size()))
            report(diags, file, "function @" + f.name + " entry block out of range");

        std::set<int> blockIds;
        for (size_t bi = 0; bi < f.blocks.size(); ++bi) {
            const Block& blk = f.blocks[bi];
            if (blk.id != static_cast<int>(bi))
                report(diags, file,
                       "function @" + f.name + " block id b" + std::to_string(blk.id) +
                           " does not match its position");
            if (!blockIds.insert(blk.id).second)
                report(diags, file, "function @" + f.name + " duplicate block id b" +
                                        std::to_string(blk.id));
        }

        auto checkTarget = [&](int target, const InstrId& id) {
            if (target < 0 || target >= static_cast<int>(f.blocks.size()))
                report(diags, file, "branch target b" + std::to_string(target) +
                                        " does not exist" + at(id));
        };

        // Register discipline: params are reg 0..n-1; every other register is
        // assigned by exactly one instruction.
        std::set<Reg> assigned;
        for (Reg r = 0; r < f.params.size(); ++r)
            assigned.insert(r);

        for (const Block& blk : f.blocks) {
            for (size_t ii = 0; ii < blk.instrs.size(); ++ii) {
                const Instr& in = blk.instrs[ii];
                InstrId id{f.name, blk.id, static_cast<int>(ii)};
                if (in.dst != kNoReg) {
                    if (in.dst >= f.regCount)
                        report(diags, file, "register %" + std::to_string(in.dst) +
                                                " out of range" + at(id));
                    if (!assigned.insert(in.dst).second)
                        report(diags, file, "register %" + std::to_string(in.dst) +
                                                " assigned more than once" + at(id));
                }
                switch (in.op) {
                case Opcode::Alloca:
                    if (in.imm < 1)
                        report(diags, file, "alloca size < 1" + at(id));
                    break;
                case Opcode::Call: {
                    const Function* callee = module.findFunction(in.symbol);
                    const ExternDecl* ext = module.findExtern(in.symbol);
                    if (callee == nullptr && ext == nullptr)
                        report(diags, file,
                               "call to undefined function @" + in.symbol + at(id));
                    size_t arity = callee ? callee->params.size()
                                          : (ext ? ext->params.size() : in.args.size());
                    if ((callee || ext) && arity != in.args.size())
                        report(diags, file, "call arity mismatch for @" + in.symbol + at(id));
                    bool retVal = callee ? callee->returnsValue : (ext && ext->returnsValue);
                    if ((callee || ext) && in.dst != kNoReg && !retVal)
                        report(diags, file,
                               "value use of void function @" + in.symbol + at(id));
                    break;
                }
                case Opcode::Store:
                    if (in.dst != kNoReg)
                        report(diags, file, "store must not produce a value" + at(id));
                    break;
                case Opcode::Const:
                    if (!in.symbol.empty()) {
                        const Global* g = module.findGlobal(in.symbol);
                        if (g == nullptr)
                            report(diags, file,
                                   "reference to undefined global @" + in.symbol + at(id));
                        else if (in.imm < g->base || in.imm >= g->base + g->size)
                            report(diags, file, "global address constant for @" + in.symbol +
                                                    " outside its region" + at(id));
                    }
                    break;
                default:
                    break;
                }
            }
            InstrId tid{f.name, blk.id, static_cast<int>(blk.instrs.size())};
            switch (blk.term.kind) {
            case Terminator::Kind::Br:
                checkTarget(blk.term.tTarget, tid);
                checkTarget(blk.term.fTarget, tid);
                break;
            case Terminator::Kind::Jmp:
                checkTarget(blk.term.tTarget, tid);
                break;
            case Terminator::Kind::Ret:
                if (f.returnsValue && blk.term.ret == kNoReg)
                    report(diags, file, "missing return value" + at(tid));
                if (!f.returnsValue && blk.term.ret != kNoReg)
                    report(diags, file, "return value in void function" + at(tid));
                break;
            }
        }
    }
    return diags;
}

} // namespace coyotekit::ir
