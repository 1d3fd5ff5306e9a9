#pragma once

#include <cstdint>

#include "coyotekit/exec/testcase.hpp"
#include "coyotekit/exec/trace.hpp"
#include "coyotekit/ir/ir.hpp"

namespace coyotekit::exec {

struct StepLimits {
    std::int64_t maxSteps = 200000;
    int maxCallDepth = 256;
};

// Concretely interprets one test case and records the single executed path.
// Deterministic: identical inputs produce byte-identical traces. Runtime
// errors (division by zero, bad access, depth and step limits) terminate the
// path with an ERR event followed by END abort; they are not tool failures.
// Throws std::invalid_argument for misuse (unknown entry, entry with
// parameters, call to a bodyless extern).
Trace execute(const ir::Module& module, const std::string& entry, const TestCase& testCase,
              const StepLimits& limits);

} // namespace coyotekit::exec
