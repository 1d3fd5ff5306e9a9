#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coyotekit::ir {

// Virtual register index, local to one function. Parameters occupy the first
// indices; every register is assigned exactly once.
using Reg = std::uint32_t;
inline constexpr Reg kNoReg = 0xFFFFFFFFu;

enum class Opcode {
    Const,
    Add,
    Sub,
    Mul,
    SDiv,
    SRem,
    And,
    Or,
    Xor,
    Shl,
    AShr,
    ICmp,
    Alloca,
    Load,
    Store,
    Gep,
    Call,
    Input,
};

enum class ICmpPred { Eq, Ne, Slt, Sle, Sgt, Sge };

const char* opcodeName(Opcode op);
const char* predName(ICmpPred pred);
ICmpPred invertPred(ICmpPred pred);

// Structured instruction identifier "function:bN:index". The terminator of a
// block uses index == instrs.size(). Ordering is componentwise (function
// name, block number, instruction index) and stable across runs.
struct InstrId {
    std::string fn;
    int block = 0;
    int index = 0;

    auto operator<=>(const InstrId&) const = default;
    std::string str() const;
};

std::optional<InstrId> parseInstrId(const std::string& text);

// Block identifier qualified with its function, "function:bN".
struct BlockRef {
    std::string fn;
    int block = 0;

    auto operator<=>(const BlockRef&) const = default;
    std::string str() const;
};

std::optional<BlockRef> parseBlockRef(const std::string& text);

struct Instr {
    Opcode op = Opcode::Const;
    ICmpPred pred = ICmpPred::Eq;
    Reg dst = kNoReg;
    Reg a = kNoReg;
    Reg b = kNoReg;
    // Const: value (or resolved global address when symbol is set).
    // Alloca: word count. Input: input id, -1 meaning "fresh per call".
    std::int32_t imm = 0;
    std::string symbol;    // Call: callee. Const: referenced global, if any.
    std::vector<Reg> args; // Call arguments.
    int line = 0;          // 1-based source line; 0 = synthetic.
};

struct Terminator {
    enum class Kind { Br, Jmp, Ret };
    Kind kind = Kind::Ret;
    Reg cond = kNoReg; // Br: branch register (true target iff value != 0)
    int tTarget = -1;  // Br true target / Jmp target
    int fTarget = -1;  // Br false target
    Reg ret = kNoReg;  // Ret value, kNoReg for void
    int line = 0;
};

struct Block {
    int id = 0;
    std::vector<Instr> instrs;
    Terminator term;
};

enum class FunctionOrigin { Source, Driver, Stub };

struct ParamInfo {
    std::string name;
    bool isArray = false;
    int arraySize = 0; // words, for arrays
};

struct Function {
    std::string name;
    std::vector<ParamInfo> params; // params bind registers 0..params.size()-1
    std::vector<Block> blocks;     // blocks[i].id == i
    int entry = 0;
    Reg regCount = 0;
    bool returnsValue = true;
    FunctionOrigin origin = FunctionOrigin::Source;
    std::string file;
};

struct Global {
    std::string name;
    int base = 0; // word address; regions are contiguous from address 1
    int size = 1;
    std::vector<std::int32_t> init; // length == size
    bool explicitInit = false;      // had an initializer in the source
};

struct ExternDecl {
    std::string name;
    std::vector<ParamInfo> params;
    bool returnsValue = true;
};

struct Module {
    std::vector<Function> functions;
    std::vector<Global> globals; // sorted by name, addresses assigned
    std::vector<ExternDecl> externs;
    std::uint64_t hash = 0;

    const Function* findFunction(const std::string& name) const;
    const Global* findGlobal(const std::string& name) const;
    const ExternDecl* findExtern(const std::string& name) const;
    // First word address past the last global region (1 if no globals).
    int firstFreeAddress() const;
};

// Deterministic textual form; the module hash is FNV-1a 64 of this text.
std::string printModule(const Module& module);
std::uint64_t computeModuleHash(const Module& module);
std::string hashHex(std::uint64_t hash);

} // namespace coyotekit::ir
