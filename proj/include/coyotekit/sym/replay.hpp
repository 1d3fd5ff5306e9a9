#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coyotekit/exec/testcase.hpp"
#include "coyotekit/exec/trace.hpp"
#include "coyotekit/ir/ir.hpp"
#include "coyotekit/sym/expr.hpp"

namespace coyotekit::sym {

// One path-condition entry. Branch entries record the raw condition
// expression plus the direction the trace took; LoadBound and StorePin are
// side constraints from the memory model and always assert their expression
// true. Only Branch entries are flip candidates.
struct PathEntry {
    enum class Kind { Branch, LoadBound, StorePin };
    Kind kind = Kind::Branch;
    ir::InstrId instr;
    bool taken = false; // Branch only
    ExprPtr expr;
    int line = 0;
    int depthIndex = -1; // index among Branch entries, -1 for side constraints
    int pcIndex = 0;     // position in the full entry list

    // The constraint as a 0/1 comparison asserted true. For Branch entries
    // `flip` negates the recorded direction.
    ExprPtr asserted(bool flip = false) const;
};

struct PathCondition {
    std::vector<PathEntry> entries;

    std::vector<std::pair<ir::InstrId, bool>> decisions() const;
    // Every constraint evaluates consistently with its recorded direction
    // under the given bindings; returns the index of the first violating
    // entry, or -1.
    int firstInconsistent(const std::map<int, std::int32_t>& bindings) const;
};

struct ReplayOptions {
    // Loads at input-dependent addresses become region-wide ITE chains up to
    // this many words; larger regions (or concreteReads mode) concretize the
    // address and pin it with an equality instead.
    int regionCapWords = 256;
    bool concreteReads = false;
};

// Walks the IR along the trace's recorded decisions, maintaining symbolic
// registers and memory (reads symbolic, writes to the concrete addresses the
// trace saw). Throws std::runtime_error on module-hash mismatch or on any
// trace/IR desynchronization, naming the first mismatching event.
PathCondition replay(const ir::Module& module, const exec::Trace& trace,
                     const ReplayOptions& options = {});

// Debug dump: one constraint per line (instr id, direction, prefix-notation
// expression).
std::string printPathCondition(const PathCondition& pc);

} // namespace coyotekit::sym
