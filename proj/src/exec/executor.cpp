#include "coyotekit/exec/executor.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "coyotekit/ir/semantics.hpp"

namespace coyotekit::exec {

namespace {

using ir::Block;
using ir::Function;
using ir::Instr;
using ir::kNoReg;
using ir::Module;
using ir::Opcode;
using ir::Reg;
using ir::Terminator;

struct Frame {
    const Function* fn = nullptr;
    int block = 0;
    size_t instr = 0;
    std::vector<std::int32_t> regs;
    Reg retDst = kNoReg; // caller register receiving the return value
};

class Machine {
public:
    Machine(const Module& module, const std::string& entry, const TestCase& tc,
            const StepLimits& limits)
        : module_(module), tc_(tc), limits_(limits) {
        trace_.moduleHash = module.hash;
        trace_.testCaseId = tc.id;
        trace_.entry = entry;

        // Globals are initialized before execution; these writes are part of
        // the module image, not the path, so no ST events.
        for (const auto& g : module.globals) {
            regions_.emplace_back(g.base, g.size);
            for (int i = 0; i < g.size; ++i)
                memory_[g.base + i] = g.init[static_cast<size_t>(i)];
        }
        watermark_ = module.firstFreeAddress();

        // Fresh stub inputs are numbered after the largest fixed id used by
        // any input instruction of the module.
        nextFreshInput_ = 0;
        for (const auto& fn : module.functions)
            for (const auto& blk : fn.blocks)
                for (const auto& in : blk.instrs)
                    if (in.op == Opcode::Input && in.imm >= 0)
                        nextFreshInput_ = std::max(nextFreshInput_, in.imm + 1);

        const Function* fn = module.findFunction(entry);
        if (fn == nullptr)
            throw std::invalid_argument("execute: unknown entry function '" + entry + "'");
        if (!fn->params.empty())
            throw std::invalid_argument("execute: entry function must have no parameters");
        pushFrame(fn, kNoReg);
    }

    Trace run() {
        while (!frames_.empty()) {
            if (!step())
                break;
        }
        return std::move(trace_);
    }

private:
    void emitFunc(const std::string& name) {
        TraceEvent e;
        e.kind = TraceEvent::Kind::Func;
        e.name = name;
        trace_.events.push_back(std::move(e));
    }

    void emitBlock(const Function& fn, int block) {
        TraceEvent e;
        e.kind = TraceEvent::Kind::Block;
        e.block = ir::BlockRef{fn.name, block};
        trace_.events.push_back(std::move(e));
    }

    void pushFrame(const Function* fn, Reg retDst, const std::vector<std::int32_t>& args = {}) {
        Frame frame;
        frame.fn = fn;
        frame.block = fn->entry;
        frame.instr = 0;
        frame.regs.assign(fn->regCount, 0);
        frame.retDst = retDst;
        for (size_t i = 0; i < args.size() && i < frame.regs.size(); ++i)
            frame.regs[i] = args[i];
        frames_.push_back(std::move(frame));
        emitFunc(fn->name);
        emitBlock(*fn, fn->entry);
    }

    bool inRegion(std::int32_t addr) const {
        for (const auto& [base, size] : regions_)
            if (addr >= base && addr < base + size)
                return true;
        return false;
    }

    [[noreturn]] void toolError(const std::string& message) {
        throw std::invalid_argument("execute: " + message);
    }

    // Terminates the path with ERR + END abort.
    bool abort(int code) {
        TraceEvent err;
        err.kind = TraceEvent::Kind::Err;
        err.errCode = code;
        trace_.events.push_back(std::move(err));
        TraceEvent end;
        end.kind = TraceEvent::Kind::End;
        end.okEnd = false;
        trace_.events.push_back(std::move(end));
        frames_.clear();
        return false;
    }

    bool finishOk() {
        TraceEvent end;
        end.kind = TraceEvent::Kind::End;
        end.okEnd = true;
        trace_.events.push_back(std::move(end));
        frames_.clear();
        return false;
    }

    bool step() {
        if (stepCount_ >= limits_.maxSteps)
            return abort(kErrStepLimit);
        ++stepCount_;

        Frame& frame = frames_.back();
        const Function& fn = *frame.fn;
        const Block& blk = fn.blocks[frame.block];

        if (frame.instr >= blk.instrs.size())
            return execTerminator(frame, fn, blk);

        const Instr& in = blk.instrs[frame.instr];
        ir::InstrId id{fn.name, blk.id, static_cast<int>(frame.instr)};
        ++frame.instr;

        auto reg = [&](Reg r) -> std::int32_t { return frame.regs[r]; };
        auto setReg = [&](Reg r, std::int32_t v) {
            if (r != kNoReg)
                frame.regs[r] = v;
        };

        switch (in.op) {
        case Opcode::Const:
            setReg(in.dst, in.imm);
            return true;
        case Opcode::ICmp:
            setReg(in.dst, ir::evalICmpPred(in.pred, reg(in.a), reg(in.b)));
            return true;
        case Opcode::Alloca: {
            std::int32_t base = watermark_;
            watermark_ += in.imm;
            regions_.emplace_back(base, in.imm);
            TraceEvent e;
            e.kind = TraceEvent::Kind::Alloca;
            e.instr = id;
            e.addr = base;
            e.value = in.imm;
            trace_.events.push_back(std::move(e));
            setReg(in.dst, base);
            return true;
        }
        case Opcode::Load: {
            std::int32_t addr = reg(in.a);
            if (!inRegion(addr))
                return abort(kErrBadAccess);
            auto it = memory_.find(addr);
            std::int32_t value = it == memory_.end() ? 0 : it->second;
            TraceEvent e;
            e.kind = TraceEvent::Kind::Load;
            e.instr = id;
            e.addr = addr;
            e.value = value;
            trace_.events.push_back(std::move(e));
            setReg(in.dst, value);
            return true;
        }
        case Opcode::Store: {
            std::int32_t addr = reg(in.a);
            std::int32_t value = reg(in.b);
            if (!inRegion(addr))
                return abort(kErrBadAccess);
            memory_[addr] = value;
            TraceEvent e;
            e.kind = TraceEvent::Kind::Store;
            e.instr = id;
            e.addr = addr;
            e.value = value;
            trace_.events.push_back(std::move(e));
            return true;
        }
        case Opcode::Call: {
            const Function* callee = module_.findFunction(in.symbol);
            if (callee == nullptr)
                toolError("call to function without a body: " + in.symbol +
                          " (missing stub?)");
            if (static_cast<int>(frames_.size()) >= limits_.maxCallDepth)
                return abort(kErrCallDepth);
            std::vector<std::int32_t> args;
            args.reserve(in.args.size());
            for (Reg r : in.args)
                args.push_back(reg(r));
            TraceEvent e;
            e.kind = TraceEvent::Kind::Call;
            e.instr = id;
            e.name = in.symbol;
            trace_.events.push_back(std::move(e));
            pushFrame(callee, in.dst, args);
            return true;
        }
        case Opcode::Input: {
            int inputId = in.imm >= 0 ? in.imm : nextFreshInput_++;
            std::int32_t value = tc_.valueOf(inputId);
            TraceEvent e;
            e.kind = TraceEvent::Kind::Input;
            e.inputId = inputId;
            e.value = value;
            trace_.events.push_back(std::move(e));
            setReg(in.dst, value);
            return true;
        }
        default: {
            auto result = ir::evalBinaryOp(in.op, reg(in.a), reg(in.b));
            if (!result)
                return abort(kErrDivByZero);
            setReg(in.dst, *result);
            return true;
        }
        }
    }

    bool execTerminator(Frame& frame, const Function& fn, const Block& blk) {
        const Terminator& t = blk.term;
        switch (t.kind) {
        case Terminator::Kind::Br: {
            bool taken = frame.regs[t.cond] != 0;
            TraceEvent e;
            e.kind = TraceEvent::Kind::Br;
            e.instr = ir::InstrId{fn.name, blk.id, static_cast<int>(blk.instrs.size())};
            e.taken = taken;
            trace_.events.push_back(std::move(e));
            frame.block = taken ? t.tTarget : t.fTarget;
            frame.instr = 0;
            emitBlock(fn, frame.block);
            return true;
        }
        case Terminator::Kind::Jmp:
            frame.block = t.tTarget;
            frame.instr = 0;
            emitBlock(fn, frame.block);
            return true;
        case Terminator::Kind::Ret: {
            std::int32_t value = t.ret == kNoReg ? 0 : frame.regs[t.ret];
            bool hasValue = t.ret != kNoReg;
            Reg retDst = frame.retDst;
            TraceEvent e;
            e.kind = TraceEvent::Kind::Ret;
            trace_.events.push_back(std::move(e));
            frames_.pop_back();
            if (frames_.empty())
                return finishOk();
            if (retDst != kNoReg && hasValue)
                frames_.back().regs[retDst] = value;
            return true;
        }
        }
        return true;
    }

    const Module& module_;
    const TestCase& tc_;
    StepLimits limits_;
    Trace trace_;
    std::vector<Frame> frames_;
    std::unordered_map<std::int32_t, std::int32_t> memory_;
    std::vector<std::pair<std::int32_t, std::int32_t>> regions_;
    std::int32_t watermark_ = 1;
    std::int64_t stepCount_ = 0;
    int nextFreshInput_ = 0;
};

} // namespace

Trace execute(const Module& module, const std::string& entry, const TestCase& testCase,
              const StepLimits& limits) {
    Machine machine(module, entry, testCase, limits);
    return machine.run();
}

} // namespace coyotekit::exec
