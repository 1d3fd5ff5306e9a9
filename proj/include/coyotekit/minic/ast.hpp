#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace coyotekit::minic {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    BitAnd,
    BitOr,
    BitXor,
    Shl,
    Shr,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    LAnd,
    LOr,
};

enum class UnOp { Neg, Not };

struct Expr {
    enum class Kind { IntLit, Var, Index, Call, Unary, Binary };
    Kind kind = Kind::IntLit;
    int line = 0;
    int column = 0;

    std::int32_t value = 0; // IntLit
    std::string name;       // Var / Index base / Call target
    BinOp binOp = BinOp::Add;
    UnOp unOp = UnOp::Neg;
    ExprPtr lhs, rhs;         // Binary; Unary and Index use lhs only
    std::vector<ExprPtr> args; // Call
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
    enum class Kind { Block, LocalDecl, If, While, Return, Assign, ExprStmt };
    Kind kind = Kind::Block;
    int line = 0;
    int column = 0;

    std::vector<StmtPtr> body; // Block
    // LocalDecl
    std::string name;
    bool isArray = false;
    int arraySize = 0;
    ExprPtr init; // optional scalar initializer
    // If / While
    ExprPtr cond;
    StmtPtr thenStmt;
    StmtPtr elseStmt; // optional
    // Return / ExprStmt / Assign rhs
    ExprPtr expr; // optional for plain `return;`
    // Assign target: name plus optional index expression
    ExprPtr indexExpr;
};

struct Param {
    std::string name;
    bool isArray = false;
    int arraySize = 0;
    int line = 0;
    int column = 0;
};

struct FunctionDecl {
    std::string name;
    std::vector<Param> params;
    bool returnsValue = true;
    bool isExtern = false;
    StmtPtr body; // null for extern declarations
    int line = 0;
    int column = 0;
    std::string file;
};

struct GlobalDecl {
    std::string name;
    bool isArray = false;
    int size = 1;
    std::vector<std::int32_t> init; // resized to `size` during analysis
    bool explicitInit = false;
    int line = 0;
    int column = 0;
    std::string file;
};

struct SourceProgram {
    std::vector<std::string> files;
    std::vector<FunctionDecl> functions;
    std::vector<GlobalDecl> globals;
};

} // namespace coyotekit::minic
