#include "coyotekit/ir/ir.hpp"

#include <sstream>

namespace coyotekit::ir {

const char* opcodeName(Opcode op) {
    switch (op) {
    case Opcode::Const: return "const";
    case Opcode::Add: return "add";
    case Opcode::Sub: return "sub";
    case Opcode::Mul: return "mul";
    case Opcode::SDiv: return "sdiv";
    case Opcode::SRem: return "srem";
    case Opcode::And: return "and";
    case Opcode::Or: return "or";
    case Opcode::Xor: return "xor";
    case Opcode::Shl: return "shl";
    case Opcode::AShr: return "ashr";
    case Opcode::ICmp: return "icmp";
    case Opcode::Alloca: return "alloca";
    case Opcode::Load: return "load";
    case Opcode::Store: return "store";
    case Opcode::Gep: return "gep";
    case Opcode::Call: return "call";
    case Opcode::Input: return "input";
    }
    return "?";
}

const char* predName(ICmpPred pred) {
    switch (pred) {
    case ICmpPred::Eq: return "eq";
    case ICmpPred::Ne: return "ne";
    case ICmpPred::Slt: return "slt";
    case ICmpPred::Sle: return "sle";
    case ICmpPred::Sgt: return "sgt";
    case ICmpPred::Sge: return "sge";
    }
    return "?";
}

ICmpPred invertPred(ICmpPred pred) {
    switch (pred) {
    case ICmpPred::Eq: return ICmpPred::Ne;
    case ICmpPred::Ne: return ICmpPred::Eq;
    case ICmpPred::Slt: return ICmpPred::Sge;
    case ICmpPred::Sle: return ICmpPred::Sgt;
    case ICmpPred::Sgt: return ICmpPred::Sle;
    case ICmpPred::Sge: return ICmpPred::Slt;
    }
    return ICmpPred::Ne;
}

std::string InstrId::str() const {
    std::ostringstream os;
    os << fn << ":b" << block << ":" << index;
    return os.str();
}

std::optional<InstrId> parseInstrId(const std::string& text) {
    auto c1 = text.find(':');
    if (c1 == std::string::npos)
        return std::nullopt;
    auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        return std::nullopt;
    std::string fn = text.substr(0, c1);
    std::string blk = text.substr(c1 + 1, c2 - c1 - 1);
    std::string idx = text.substr(c2 + 1);
    if (fn.empty() || blk.size() < 2 || blk[0] != 'b' || idx.empty())
        return std::nullopt;
    try {
        InstrId id;
        id.fn = fn;
        id.block = std::stoi(blk.substr(1));
        id.index = std::stoi(idx);
        return id;
    } catch (...) {
        return std::nullopt;
    }
}

std::string BlockRef::str() const {
    std::ostringstream os;
    os << fn << ":b" << block;
    return os.str();
}

std::optional<BlockRef> parseBlockRef(const std::string& text) {
    auto c1 = text.find(':');
    if (c1 == std::string::npos)
        return std::nullopt;
    std::string fn = text.substr(0, c1);
    std::string blk = text.substr(c1 + 1);
    if (fn.empty() || blk.size() < 2 || blk[0] != 'b')
        return std::nullopt;
    try {
        BlockRef ref;
        ref.fn = fn;
        ref.block = std::stoi(blk.substr(1));
        return ref;
    } catch (...) {
        return std::nullopt;
    }
}

const Function* Module::findFunction(const std::string& name) const {
    for (const auto& f : functions)
        if (f.name == name)
            return &f;
    return nullptr;
}

const Global* Module::findGlobal(const std::string& name) const {
    for (const auto& g : globals)
        if (g.name == name)
            return &g;
    return nullptr;
}

const ExternDecl* Module::findExtern(const std::string& name) const {
    for (const auto& e : externs)
        if (e.name == name)
            return &e;
    return nullptr;
}

int Module::firstFreeAddress() const {
    int next = 1;
    for (const auto& g : globals)
        next = std::max(next, g.base + g.size);
    return next;
}

} // namespace coyotekit::ir
