#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "coyotekit/ir/ir.hpp"

namespace coyotekit::exec {

// A concrete assignment of values to numbered symbolic inputs. Inputs without
// a binding read as 0, the default value.
struct TestCase {
    std::int64_t id = 0;
    std::map<int, std::int32_t> bindings;
    std::optional<std::int64_t> parentId;
    std::optional<ir::InstrId> flippedInstr;

    std::int32_t valueOf(int inputId) const {
        auto it = bindings.find(inputId);
        return it == bindings.end() ? 0 : it->second;
    }
};

std::string serializeTestCase(const TestCase& tc);
TestCase parseTestCase(const std::string& bytes); // throws on malformed input

} // namespace coyotekit::exec
