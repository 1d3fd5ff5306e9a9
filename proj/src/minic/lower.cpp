#include "coyotekit/minic/lower.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace coyotekit::minic {

namespace {

using ir::Block;
using ir::Function;
using ir::Instr;
using ir::kNoReg;
using ir::Module;
using ir::Opcode;
using ir::Reg;
using ir::Terminator;

struct VarBinding {
    enum class Kind { ScalarSlot, LocalArray, ParamArray, GlobalScalar, GlobalArray };
    Kind kind = Kind::ScalarSlot;
    Reg reg = kNoReg;       // slot address / array base register
    std::string globalName; // for globals
    int size = 1;
};

class FunctionLowering {
public:
    FunctionLowering(const FunctionDecl& decl, const Module& module, Function& out)
        : decl_(decl), module_(module), fn_(out) {}

    void run() {
        // Name, signature and file were filled in on the declaration pass.
        fn_.origin = ir::FunctionOrigin::Source;
        nextReg_ = static_cast<Reg>(decl_.params.size());

        current_ = newBlock();
        fn_.entry = current_;

        pushScope();
        // Parameter slots: scalars are spilled so that assignments to them
        // work like any other local; array parameters stay a base address.
        for (size_t i = 0; i < decl_.params.size(); ++i) {
            const Param& p = decl_.params[i];
            if (p.isArray) {
                bind(p.name, VarBinding{VarBinding::Kind::ParamArray, static_cast<Reg>(i), "",
                                        p.arraySize});
            } else {
                Reg slot = emitAlloca(1, 0);
                emitStore(slot, static_cast<Reg>(i), 0);
                bind(p.name, VarBinding{VarBinding::Kind::ScalarSlot, slot, "", 1});
            }
        }
        hoistAllocas(*decl_.body);

        lowerStmt(*decl_.body);
        popScope();

        if (!terminated_) {
            if (decl_.returnsValue) {
                Reg zero = emitConst(0, 0);
                setTerm(Terminator{Terminator::Kind::Ret, kNoReg, -1, -1, zero, 0});
            } else {
                setTerm(Terminator{Terminator::Kind::Ret, kNoReg, -1, -1, kNoReg, 0});
            }
        }

        pruneUnreachable();
        fn_.regCount = nextReg_;
    }

private:
    // ---- block management -------------------------------------------------

    int newBlock() {
        int id = static_cast<int>(fn_.blocks.size());
        Block blk;
        blk.id = id;
        fn_.blocks.push_back(std::move(blk));
        return id;
    }

    void switchTo(int block) {
        current_ = block;
        terminated_ = false;
    }

    Instr& append(Instr in) {
        assert(!terminated_ && "appending to a terminated block");
        fn_.blocks[current_].instrs.push_back(std::move(in));
        return fn_.blocks[current_].instrs.back();
    }

    void setTerm(Terminator t) {
        assert(!terminated_);
        fn_.blocks[current_].term = std::move(t);
        terminated_ = true;
    }

    // ---- emission helpers --------------------------------------------------

    Reg fresh() { return nextReg_++; }

    Reg emitConst(std::int32_t value, int line, const std::string& symbol = "") {
        Instr in;
        in.op = Opcode::Const;
        in.dst = fresh();
        in.imm = value;
        in.symbol = symbol;
        in.line = line;
        append(std::move(in));
        return nextReg_ - 1;
    }

    Reg emitAlloca(int words, int line) {
        Instr in;
        in.op = Opcode::Alloca;
        in.dst = fresh();
        in.imm = words;
        in.line = line;
        append(std::move(in));
        return nextReg_ - 1;
    }

    Reg emitBin(Opcode op, Reg a, Reg b, int line) {
        Instr in;
        in.op = op;
        in.dst = fresh();
        in.a = a;
        in.b = b;
        in.line = line;
        append(std::move(in));
        return nextReg_ - 1;
    }

    Reg emitICmp(ir::ICmpPred pred, Reg a, Reg b, int line) {
        Instr in;
        in.op = Opcode::ICmp;
        in.pred = pred;
        in.dst = fresh();
        in.a = a;
        in.b = b;
        in.line = line;
        append(std::move(in));
        return nextReg_ - 1;
    }

    Reg emitLoad(Reg addr, int line) {
        Instr in;
        in.op = Opcode::Load;
        in.dst = fresh();
        in.a = addr;
        in.line = line;
        append(std::move(in));
        return nextReg_ - 1;
    }

    void emitStore(Reg addr, Reg value, int line) {
        Instr in;
        in.op = Opcode::Store;
        in.a = addr;
        in.b = value;
        in.line = line;
        append(std::move(in));
    }

    // ---- scopes -----------------------------------------------------------

    void pushScope() { scopes_.emplace_back(); }
    void popScope() { scopes_.pop_back(); }

    void bind(const std::string& name, VarBinding binding) {
        scopes_.back()[name] = std::move(binding);
    }

    const VarBinding* lookupLocal(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto hit = it->find(name);
            if (hit != it->end())
                return &hit->second;
        }
        return nullptr;
    }

    VarBinding resolve(const std::string& name) const {
        if (const VarBinding* local = lookupLocal(name))
            return *local;
        const ir::Global* g = module_.findGlobal(name);
        if (g == nullptr)
            throw std::logic_error("lower: unresolved identifier " + name);
        VarBinding b;
        b.kind = g->size > 1 || isArrayGlobal(name) ? VarBinding::Kind::GlobalArray
                                                    : VarBinding::Kind::GlobalScalar;
        b.globalName = name;
        b.size = g->size;
        return b;
    }

    bool isArrayGlobal(const std::string& name) const {
        auto it = arrayGlobals_.find(name);
        return it != arrayGlobals_.end() && it->second;
    }

public:
    std::map<std::string, bool> arrayGlobals_; // name -> isArray, set by caller

private:
    // ---- alloca hoisting ----------------------------------------------------
    //
    // All stack slots live in the entry block so that loop bodies do not
    // re-allocate per iteration. The walk mirrors lowerStmt/lowerCond exactly
    // so that every LocalDecl and every value-position logical operator has a
    // slot by the time it is lowered.

    void hoistAllocas(const Stmt& s) {
        switch (s.kind) {
        case Stmt::Kind::Block:
            for (const auto& child : s.body)
                hoistAllocas(*child);
            break;
        case Stmt::Kind::LocalDecl:
            declSlots_[&s] = emitAlloca(s.isArray ? s.arraySize : 1, 0);
            if (s.init)
                hoistValue(*s.init);
            break;
        case Stmt::Kind::If:
            hoistCond(*s.cond);
            hoistAllocas(*s.thenStmt);
            if (s.elseStmt)
                hoistAllocas(*s.elseStmt);
            break;
        case Stmt::Kind::While:
            hoistCond(*s.cond);
            hoistAllocas(*s.thenStmt);
            break;
        case Stmt::Kind::Return:
            if (s.expr)
                hoistValue(*s.expr);
            break;
        case Stmt::Kind::Assign:
            if (s.indexExpr)
                hoistValue(*s.indexExpr);
            hoistValue(*s.expr);
            break;
        case Stmt::Kind::ExprStmt:
            hoistValue(*s.expr);
            break;
        }
    }

    void hoistCond(const Expr& e) {
        if (e.kind == Expr::Kind::Binary && (e.binOp == BinOp::LAnd || e.binOp == BinOp::LOr)) {
            hoistCond(*e.lhs);
            hoistCond(*e.rhs);
            return;
        }
        hoistValue(e);
    }

    void hoistValue(const Expr& e) {
        switch (e.kind) {
        case Expr::Kind::IntLit:
        case Expr::Kind::Var:
            break;
        case Expr::Kind::Index:
            hoistValue(*e.lhs);
            break;
        case Expr::Kind::Call:
            for (const auto& a : e.args)
                hoistValue(*a);
            break;
        case Expr::Kind::Unary:
            hoistValue(*e.lhs);
            break;
        case Expr::Kind::Binary:
            if (e.binOp == BinOp::LAnd || e.binOp == BinOp::LOr) {
                logicSlots_[&e] = emitAlloca(1, 0);
                hoistCond(*e.lhs);
                hoistCond(*e.rhs);
            } else {
                hoistValue(*e.lhs);
                hoistValue(*e.rhs);
            }
            break;
        }
    }

    // ---- statements ---------------------------------------------------------

    void lowerStmt(const Stmt& s) {
        if (terminated_) {
            // Code after return in the same block; give it its own block so
            // the structure stays well-formed, then let pruning drop it.
            switchTo(newBlock());
        }
        switch (s.kind) {
        case Stmt::Kind::Block:
            pushScope();
            for (const auto& child : s.body)
                lowerStmt(*child);
            popScope();
            break;
        case Stmt::Kind::LocalDecl: {
            Reg slot = declSlots_.at(&s);
            if (s.isArray) {
                bind(s.name, VarBinding{VarBinding::Kind::LocalArray, slot, "", s.arraySize});
            } else {
                if (s.init) {
                    Reg v = lowerValue(*s.init);
                    emitStore(slot, v, s.line);
                }
                bind(s.name, VarBinding{VarBinding::Kind::ScalarSlot, slot, "", 1});
            }
            break;
        }
        case Stmt::Kind::If: {
            int thenB = newBlock();
            int elseB = newBlock();
            int joinB = newBlock();
            lowerCond(*s.cond, thenB, elseB);
            switchTo(thenB);
            lowerStmt(*s.thenStmt);
            if (!terminated_)
                setTerm(Terminator{Terminator::Kind::Jmp, kNoReg, joinB, -1, kNoReg, 0});
            switchTo(elseB);
            if (s.elseStmt)
                lowerStmt(*s.elseStmt);
            if (!terminated_)
                setTerm(Terminator{Terminator::Kind::Jmp, kNoReg, joinB, -1, kNoReg, 0});
            switchTo(joinB);
            break;
        }
        case Stmt::Kind::While: {
            int headB = newBlock();
            int bodyB = newBlock();
            int exitB = newBlock();
            setTerm(Terminator{Terminator::Kind::Jmp, kNoReg, headB, -1, kNoReg, 0});
            switchTo(headB);
            lowerCond(*s.cond, bodyB, exitB);
            switchTo(bodyB);
            lowerStmt(*s.thenStmt);
            if (!terminated_)
                setTerm(Terminator{Terminator::Kind::Jmp, kNoReg, headB, -1, kNoReg, 0});
            switchTo(exitB);
            break;
        }
        case Stmt::Kind::Return: {
            Reg v = kNoReg;
            if (s.expr)
                v = lowerValue(*s.expr);
            setTerm(Terminator{Terminator::Kind::Ret, kNoReg, -1, -1, v, s.line});
            break;
        }
        case Stmt::Kind::Assign: {
            VarBinding b = resolve(s.name);
            if (s.indexExpr) {
                Reg base = arrayBase(b, s.line);
                Reg idx = lowerValue(*s.indexExpr);
                Reg addr = emitBin(Opcode::Gep, base, idx, s.line);
                Reg v = lowerValue(*s.expr);
                emitStore(addr, v, s.line);
            } else {
                Reg addr = scalarAddress(b, s.line);
                Reg v = lowerValue(*s.expr);
                emitStore(addr, v, s.line);
            }
            break;
        }
        case Stmt::Kind::ExprStmt:
            lowerValue(*s.expr, /*allowVoid=*/true);
            break;
        }
    }

    Reg scalarAddress(const VarBinding& b, int line) {
        switch (b.kind) {
        case VarBinding::Kind::ScalarSlot:
            return b.reg;
        case VarBinding::Kind::GlobalScalar: {
            const ir::Global* g = module_.findGlobal(b.globalName);
            return emitConst(g->base, line, b.globalName);
        }
        default:
            throw std::logic_error("lower: array used as scalar");
        }
    }

    Reg arrayBase(const VarBinding& b, int line) {
        switch (b.kind) {
        case VarBinding::Kind::LocalArray:
        case VarBinding::Kind::ParamArray:
            return b.reg;
        case VarBinding::Kind::GlobalArray: {
            const ir::Global* g = module_.findGlobal(b.globalName);
            return emitConst(g->base, line, b.globalName);
        }
        default:
            throw std::logic_error("lower: scalar used as array");
        }
    }

    // ---- conditions ----------------------------------------------------------

    void lowerCond(const Expr& e, int trueB, int falseB) {
        if (e.kind == Expr::Kind::Binary && e.binOp == BinOp::LAnd) {
            int midB = newBlock();
            lowerCond(*e.lhs, midB, falseB);
            switchTo(midB);
            lowerCond(*e.rhs, trueB, falseB);
            return;
        }
        if (e.kind == Expr::Kind::Binary && e.binOp == BinOp::LOr) {
            int midB = newBlock();
            lowerCond(*e.lhs, trueB, midB);
            switchTo(midB);
            lowerCond(*e.rhs, trueB, falseB);
            return;
        }
        Reg c = lowerValue(e);
        setTerm(Terminator{Terminator::Kind::Br, c, trueB, falseB, kNoReg, e.line});
    }

    // ---- value expressions ----------------------------------------------------

    Reg lowerValue(const Expr& e, bool allowVoid = false) {
        switch (e.kind) {
        case Expr::Kind::IntLit:
            return emitConst(e.value, e.line);
        case Expr::Kind::Var: {
            VarBinding b = resolve(e.name);
            Reg addr = scalarAddress(b, e.line);
            return emitLoad(addr, e.line);
        }
        case Expr::Kind::Index: {
            VarBinding b = resolve(e.name);
            Reg base = arrayBase(b, e.line);
            Reg idx = lowerValue(*e.lhs);
            Reg addr = emitBin(Opcode::Gep, base, idx, e.line);
            return emitLoad(addr, e.line);
        }
        case Expr::Kind::Call: {
            Instr in;
            in.op = Opcode::Call;
            in.symbol = e.name;
            in.line = e.line;
            const Function* callee = module_.findFunction(e.name);
            const ir::ExternDecl* ext = module_.findExtern(e.name);
            bool returnsValue = callee ? callee->returnsValue : (ext ? ext->returnsValue : true);
            std::vector<ir::ParamInfo> params;
            if (callee)
                params = callee->params;
            else if (ext)
                params = ext->params;
            for (size_t i = 0; i < e.args.size(); ++i) {
                bool wantArray = i < params.size() && params[i].isArray;
                if (wantArray) {
                    VarBinding b = resolve(e.args[i]->name);
                    in.args.push_back(arrayBase(b, e.args[i]->line));
                } else {
                    in.args.push_back(lowerValue(*e.args[i]));
                }
            }
            if (returnsValue)
                in.dst = fresh();
            Reg dst = in.dst;
            append(std::move(in));
            if (!returnsValue && !allowVoid)
                throw std::logic_error("lower: void value used");
            return returnsValue ? dst : kNoReg;
        }
        case Expr::Kind::Unary: {
            if (e.unOp == UnOp::Neg) {
                Reg zero = emitConst(0, e.line);
                Reg v = lowerValue(*e.lhs);
                return emitBin(Opcode::Sub, zero, v, e.line);
            }
            Reg v = lowerValue(*e.lhs);
            Reg zero = emitConst(0, e.line);
            return emitICmp(ir::ICmpPred::Eq, v, zero, e.line);
        }
        case Expr::Kind::Binary: {
            if (e.binOp == BinOp::LAnd || e.binOp == BinOp::LOr) {
                // Short-circuit in value position: branch into stores of 1/0
                // through a hoisted slot, then load the result.
                Reg slot = logicSlots_.at(&e);
                int oneB = newBlock();
                int zeroB = newBlock();
                int joinB = newBlock();
                lowerCond(e, oneB, zeroB);
                switchTo(oneB);
                Reg one = emitConst(1, e.line);
                emitStore(slot, one, e.line);
                setTerm(Terminator{Terminator::Kind::Jmp, kNoReg, joinB, -1, kNoReg, 0});
                switchTo(zeroB);
                Reg zero = emitConst(0, e.line);
                emitStore(slot, zero, e.line);
                setTerm(Terminator{Terminator::Kind::Jmp, kNoReg, joinB, -1, kNoReg, 0});
                switchTo(joinB);
                return emitLoad(slot, e.line);
            }
            Reg a = lowerValue(*e.lhs);
            Reg b = lowerValue(*e.rhs);
            switch (e.binOp) {
            case BinOp::Add: return emitBin(Opcode::Add, a, b, e.line);
            case BinOp::Sub: return emitBin(Opcode::Sub, a, b, e.line);
            case BinOp::Mul: return emitBin(Opcode::Mul, a, b, e.line);
            case BinOp::Div: return emitBin(Opcode::SDiv, a, b, e.line);
            case BinOp::Rem: return emitBin(Opcode::SRem, a, b, e.line);
            case BinOp::BitAnd: return emitBin(Opcode::And, a, b, e.line);
            case BinOp::BitOr: return emitBin(Opcode::Or, a, b, e.line);
            case BinOp::BitXor: return emitBin(Opcode::Xor, a, b, e.line);
            case BinOp::Shl: return emitBin(Opcode::Shl, a, b, e.line);
            case BinOp::Shr: return emitBin(Opcode::AShr, a, b, e.line);
            case BinOp::Eq: return emitICmp(ir::ICmpPred::Eq, a, b, e.line);
            case BinOp::Ne: return emitICmp(ir::ICmpPred::Ne, a, b, e.line);
            case BinOp::Lt: return emitICmp(ir::ICmpPred::Slt, a, b, e.line);
            case BinOp::Le: return emitICmp(ir::ICmpPred::Sle, a, b, e.line);
            case BinOp::Gt: return emitICmp(ir::ICmpPred::Sgt, a, b, e.line);
            case BinOp::Ge: return emitICmp(ir::ICmpPred::Sge, a, b, e.line);
            default:
                throw std::logic_error("lower: unexpected binary op");
            }
        }
        }
        throw std::logic_error("lower: unreachable expression kind");
    }

    // ---- cleanup ---------------------------------------------------------------

    void pruneUnreachable() {
        std::vector<bool> live(fn_.blocks.size(), false);
        std::vector<int> work{fn_.entry};
        live[fn_.entry] = true;
        while (!work.empty()) {
            int cur = work.back();
            work.pop_back();
            const Terminator& t = fn_.blocks[cur].term;
            auto visit = [&](int target) {
                if (target >= 0 && !live[target]) {
                    live[target] = true;
                    work.push_back(target);
                }
            };
            if (t.kind == Terminator::Kind::Br) {
                visit(t.tTarget);
                visit(t.fTarget);
            } else if (t.kind == Terminator::Kind::Jmp) {
                visit(t.tTarget);
            }
        }
        std::vector<int> remap(fn_.blocks.size(), -1);
        std::vector<Block> kept;
        for (size_t i = 0; i < fn_.blocks.size(); ++i) {
            if (!live[i])
                continue;
            remap[i] = static_cast<int>(kept.size());
            kept.push_back(std::move(fn_.blocks[i]));
        }
        for (auto& blk : kept) {
            blk.id = remap[blk.id];
            if (blk.term.kind == Terminator::Kind::Br) {
                blk.term.tTarget = remap[blk.term.tTarget];
                blk.term.fTarget = remap[blk.term.fTarget];
            } else if (blk.term.kind == Terminator::Kind::Jmp) {
                blk.term.tTarget = remap[blk.term.tTarget];
            }
        }
        fn_.blocks = std::move(kept);
        fn_.entry = remap[fn_.entry];
    }

    const FunctionDecl& decl_;
    const Module& module_;
    Function& fn_;
    Reg nextReg_ = 0;
    int current_ = 0;
    bool terminated_ = false;
    std::vector<std::map<std::string, VarBinding>> scopes_;
    std::map<const Stmt*, Reg> declSlots_;
    std::map<const Expr*, Reg> logicSlots_;
};

} // namespace

ir::Module lower(const SourceProgram& program) {
    Module module;

    // Globals get contiguous word addresses from 1 in name order.
    std::vector<const GlobalDecl*> globals;
    for (const auto& g : program.globals)
        globals.push_back(&g);
    std::sort(globals.begin(), globals.end(),
              [](const GlobalDecl* a, const GlobalDecl* b) { return a->name < b->name; });
    int nextAddr = 1;
    for (const GlobalDecl* g : globals) {
        ir::Global out;
        out.name = g->name;
        out.base = nextAddr;
        out.size = g->isArray ? g->size : 1;
        out.init = g->init;
        out.init.resize(out.size, 0);
        out.explicitInit = g->explicitInit;
        nextAddr += out.size;
        module.globals.push_back(std::move(out));
    }

    std::map<std::string, bool> arrayGlobals;
    for (const auto& g : program.globals)
        arrayGlobals[g.name] = g.isArray;

    // Extern declarations (no body and never defined elsewhere).
    std::set<std::string> defined;
    for (const auto& fn : program.functions)
        if (!fn.isExtern)
            defined.insert(fn.name);
    std::set<std::string> externSeen;
    for (const auto& fn : program.functions) {
        if (!fn.isExtern || defined.count(fn.name) || !externSeen.insert(fn.name).second)
            continue;
        ir::ExternDecl e;
        e.name = fn.name;
        e.returnsValue = fn.returnsValue;
        for (const auto& p : fn.params) {
            ir::ParamInfo info;
            info.name = p.name;
            info.isArray = p.isArray;
            info.arraySize = p.arraySize;
            e.params.push_back(info);
        }
        module.externs.push_back(std::move(e));
    }

    // Two passes so calls can resolve signatures: first declare, then lower
    // bodies in declaration order.
    for (const auto& fn : program.functions) {
        if (fn.isExtern)
            continue;
        ir::Function shell;
        shell.name = fn.name;
        shell.returnsValue = fn.returnsValue;
        shell.file = fn.file;
        for (const auto& p : fn.params) {
            ir::ParamInfo info;
            info.name = p.name;
            info.isArray = p.isArray;
            info.arraySize = p.arraySize;
            shell.params.push_back(info);
        }
        module.functions.push_back(std::move(shell));
    }
    size_t index = 0;
    for (const auto& fn : program.functions) {
        if (fn.isExtern)
            continue;
        FunctionLowering lowering(fn, module, module.functions[index]);
        lowering.arrayGlobals_ = arrayGlobals;
        lowering.run();
        ++index;
    }

    module.hash = computeModuleHash(module);
    return module;
}

} // namespace coyotekit::minic
