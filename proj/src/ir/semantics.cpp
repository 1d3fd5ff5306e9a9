#include "coyotekit/ir/semantics.hpp"

#include <limits>

namespace coyotekit::ir {

namespace {
constexpr std::int32_t kMinInt = std::numeric_limits<std::int32_t>::min();
} // namespace

std::optional<std::int32_t> evalBinaryOp(Opcode op, std::int32_t a, std::int32_t b) {
    const std::uint32_t ua = static_cast<std::uint32_t>(a);
    const std::uint32_t ub = static_cast<std::uint32_t>(b);
    switch (op) {
    case Opcode::Add: return static_cast<std::int32_t>(ua + ub);
    case Opcode::Sub: return static_cast<std::int32_t>(ua - ub);
    case Opcode::Mul: return static_cast<std::int32_t>(ua * ub);
    case Opcode::SDiv:
        if (b == 0)
            return std::nullopt;
        if (a == kMinInt && b == -1)
            return kMinInt;
        return a / b;
    case Opcode::SRem:
        if (b == 0)
            return std::nullopt;
        if (a == kMinInt && b == -1)
            return 0;
        return a % b;
    case Opcode::And: return static_cast<std::int32_t>(ua & ub);
    case Opcode::Or: return static_cast<std::int32_t>(ua | ub);
    case Opcode::Xor: return static_cast<std::int32_t>(ua ^ ub);
    case Opcode::Shl:
        if (ub >= 32)
            return 0;
        return static_cast<std::int32_t>(ua << ub);
    case Opcode::AShr:
        if (ub >= 32)
            return a < 0 ? -1 : 0;
        return a >> ub;
    case Opcode::Gep: // word address arithmetic, same wrap as add
        return static_cast<std::int32_t>(ua + ub);
    default:
        return std::nullopt;
    }
}

std::int32_t evalICmpPred(ICmpPred pred, std::int32_t a, std::int32_t b) {
    switch (pred) {
    case ICmpPred::Eq: return a == b ? 1 : 0;
    case ICmpPred::Ne: return a != b ? 1 : 0;
    case ICmpPred::Slt: return a < b ? 1 : 0;
    case ICmpPred::Sle: return a <= b ? 1 : 0;
    case ICmpPred::Sgt: return a > b ? 1 : 0;
    case ICmpPred::Sge: return a >= b ? 1 : 0;
    }
    return 0;
}

} // namespace coyotekit::ir
