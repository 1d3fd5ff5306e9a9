#pragma once

#include <cstdint>
#include <optional>

#include "coyotekit/ir/ir.hpp"

namespace coyotekit::ir {

// Two's-complement i32 semantics shared by the interpreter, the symbolic
// evaluator, and the fallback solver. They match SMT-LIB QF_BV: add/sub/mul
// wrap; sdiv(INT_MIN,-1) = INT_MIN; srem(INT_MIN,-1) = 0; shift amounts are
// taken unsigned, shifts >= 32 saturate (shl -> 0, ashr -> sign fill).
// Division or remainder by zero has no value here (the interpreter maps it
// to a path error, the evaluator to "undefined under assignment").
std::optional<std::int32_t> evalBinaryOp(Opcode op, std::int32_t a, std::int32_t b);

std::int32_t evalICmpPred(ICmpPred pred, std::int32_t a, std::int32_t b);

} // namespace coyotekit::ir
