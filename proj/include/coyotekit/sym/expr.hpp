#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "coyotekit/ir/ir.hpp"

namespace coyotekit::sym {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression DAG over the symbolic inputs. Nodes are never
// simplified; golden tests rely on literal construction shape.
class Expr {
public:
    enum class Kind { Const, Input, Bin, ICmp, Ite };

    Kind kind() const { return kind_; }
    std::int32_t constValue() const { return value_; }
    int inputId() const { return inputId_; }
    ir::Opcode op() const { return op_; }
    ir::ICmpPred pred() const { return pred_; }
    const ExprPtr& a() const { return a_; }
    const ExprPtr& b() const { return b_; }
    const ExprPtr& c() const { return c_; } // Ite: else arm
    bool hasInput() const { return hasInput_; }

    static ExprPtr makeConst(std::int32_t value);
    static ExprPtr makeInput(int inputId);
    static ExprPtr makeBin(ir::Opcode op, ExprPtr a, ExprPtr b);
    static ExprPtr makeICmp(ir::ICmpPred pred, ExprPtr a, ExprPtr b);
    // ite(cond != 0, thenV, elseV)
    static ExprPtr makeIte(ExprPtr cond, ExprPtr thenV, ExprPtr elseV);

private:
    Kind kind_ = Kind::Const;
    std::int32_t value_ = 0;
    int inputId_ = 0;
    ir::Opcode op_ = ir::Opcode::Add;
    ir::ICmpPred pred_ = ir::ICmpPred::Eq;
    ExprPtr a_, b_, c_;
    bool hasInput_ = false;
};

// Prefix-notation rendering for debug dumps and golden tests, e.g.
// (icmp eq (input 0) (const 42)).
std::string printExpr(const ExprPtr& expr);

// Inputs mentioned anywhere in the DAG.
void collectInputs(const ExprPtr& expr, std::set<int>& out);

// Wrap-around two's-complement evaluation matching the interpreter exactly.
// Division or remainder by zero anywhere yields nullopt ("undefined under
// assignment"). Inputs without a binding evaluate to 0, the default value.
std::optional<std::int32_t> evalExpr(const ExprPtr& expr,
                                     const std::map<int, std::int32_t>& assignment);

} // namespace coyotekit::sym
