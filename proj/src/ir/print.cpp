#include <sstream>

#include "coyotekit/ir/ir.hpp"

namespace coyotekit::ir {

namespace {

void printInstr(std::ostringstream& os, const Instr& in) {
    os << "    ";
    if (in.dst != kNoReg)
        os << "%" << in.dst << " = ";
    switch (in.op) {
    case Opcode::Const:
        os << "const ";
        if (!in.symbol.empty())
            os << "@" << in.symbol;
        else
            os << in.imm;
        break;
    case Opcode::ICmp:
        os << "icmp " << predName(in.pred) << " %" << in.a << ", %" << in.b;
        break;
    case Opcode::Alloca:
        os << "alloca " << in.imm;
        break;
    case Opcode::Load:
        os << "load %" << in.a;
        break;
    case Opcode::Store:
        os << "store %" << in.a << ", %" << in.b;
        break;
    case Opcode::Gep:
        os << "gep %" << in.a << ", %" << in.b;
        break;
    case Opcode::Call: {
        os << "call @" << in.symbol << "(";
        for (size_t i = 0; i < in.args.size(); ++i) {
            if (i)
                os << ", ";
            os << "%" << in.args[i];
        }
        os << ")";
        break;
    }
    case Opcode::Input:
        os << "input ";
        if (in.imm < 0)
            os << "fresh";
        else
            os << in.imm;
        break;
    default:
        os << opcodeName(in.op) << " %" << in.a << ", %" << in.b;
        break;
    }
    if (in.line > 0)
        os << "  #L" << in.line;
    os << "\n";
}

void printTerm(std::ostringstream& os, const Terminator& t) {
    os << "    ";
    switch (t.kind) {
    case Terminator::Kind::Br:
        os << "br %" << t.cond << ", b" << t.tTarget << ", b" << t.fTarget;
        break;
    case Terminator::Kind::Jmp:
        os << "jmp b" << t.tTarget;
        break;
    case Terminator::Kind::Ret:
        os << "ret";
        if (t.ret != kNoReg)
            os << " %" << t.ret;
        break;
    }
    if (t.line > 0)
        os << "  #L" << t.line;
    os << "\n";
}

const char* originName(FunctionOrigin o) {
    switch (o) {
    case FunctionOrigin::Source: return "source";
    case FunctionOrigin::Driver: return "driver";
    case FunctionOrigin::Stub: return "stub";
    }
    return "?";
}

} // namespace

std::string printModule(const Module& module) {
    std::ostringstream os;
    os << "ir-module v1\n";
    for (const auto& g : module.globals) {
        os << "global @" << g.name << " addr=" << g.base << " size=" << g.size << " init=";
        for (size_t i = 0; i < g.init.size(); ++i) {
            if (i)
                os << ",";
            os << g.init[i];
        }
        os << (g.explicitInit ? " explicit" : " zero") << "\n";
    }
    for (const auto& e : module.externs) {
        os << "extern @" << e.name << "(";
        for (size_t i = 0; i < e.params.size(); ++i) {
            if (i)
                os << ", ";
            os << "i32";
            if (e.params[i].isArray)
                os << "[" << e.params[i].arraySize << "]";
        }
        os << ") -> " << (e.returnsValue ? "i32" : "void") << "\n";
    }
    for (const auto& f : module.functions) {
        os << "func @" << f.name << "(";
        for (size_t i = 0; i < f.params.size(); ++i) {
            if (i)
                os << ", ";
            os << "%" << i << " i32";
            if (f.params[i].isArray)
                os << "[" << f.params[i].arraySize << "]";
        }
        os << ") -> " << (f.returnsValue ? "i32" : "void");
        os << " entry=b" << f.entry << " origin=" << originName(f.origin);
        if (!f.file.empty())
            os << " file=" << f.file;
        os << "\n";
        for (const auto& blk : f.blocks) {
            os << "  b" << blk.id << ":\n";
            for (const auto& in : blk.instrs)
                printInstr(os, in);
            printTerm(os, blk.term);
        }
    }
    return os.str();
}

std::uint64_t computeModuleHash(const Module& module) {
    const std::string text = printModule(module);
    // FNV-1a 64
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hashHex(std::uint64_t hash) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

} // namespace coyotekit::ir
