#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coyotekit/ir/ir.hpp"

namespace coyotekit::exec {

// Path-terminal error codes. These are test outcomes, not tool failures.
enum ErrCode : int {
    kErrDivByZero = 1,
    kErrBadAccess = 2,
    kErrCallDepth = 3,
    kErrStepLimit = 4,
};

struct TraceEvent {
    enum class Kind { Func, Block, Br, Load, Store, Alloca, Input, Call, Ret, Err, End };
    Kind kind = Kind::End;
    std::string name;   // Func / Call callee
    ir::InstrId instr;  // Br / Load / Store / Alloca / Call
    ir::BlockRef block; // Block
    bool taken = false; // Br: true target taken
    std::int32_t addr = 0;
    std::int32_t value = 0; // Load/Store value; Alloca word count
    int inputId = 0;
    int errCode = 0;
    bool okEnd = true; // End: ok vs abort

    bool operator==(const TraceEvent&) const = default;
};

struct Trace {
    std::uint64_t moduleHash = 0;
    std::int64_t testCaseId = 0;
    std::string entry;
    std::vector<TraceEvent> events;

    bool operator==(const Trace&) const = default;
    bool aborted() const;
    // Last ERR code on the path, or 0 for a clean run.
    int errCode() const;
};

// Line-oriented, tab-separated text. serialize/parse are exact inverses on
// well-formed data.
std::string serializeTrace(const Trace& trace);

struct TraceParseError {
    int line = 0;
    std::string message;
};

// Returns the trace or throws std::runtime_error naming the offending line.
Trace parseTrace(const std::string& bytes);

} // namespace coyotekit::exec
