#include "coyotekit/exec/testcase.hpp"

#include <sstream>
#include <stdexcept>

namespace coyotekit::exec {

std::string serializeTestCase(const TestCase& tc) {
    std::ostringstream os;
    os << "testcase " << tc.id << " parent ";
    if (tc.parentId)
        os << *tc.parentId;
    else
        os << "none";
    os << " flip ";
    if (tc.flippedInstr)
        os << tc.flippedInstr->str();
    else
        os << "none";
    os << "\n";
    for (const auto& [inputId, value] : tc.bindings)
        os << "in " << inputId << " " << value << "\n";
    return os.str();
}

TestCase parseTestCase(const std::string& bytes) {
    std::istringstream is(bytes);
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("test case: empty file");

    std::istringstream header(line);
    std::string kw, parentKw, parentVal, flipKw, flipVal;
    std::int64_t id = 0;
    if (!(header >> kw >> id >> parentKw >> parentVal >> flipKw >> flipVal) ||
        kw != "testcase" || parentKw != "parent" || flipKw != "flip")
        throw std::runtime_error("test case line 1: malformed header");

    TestCase tc;
    tc.id = id;
    if (parentVal != "none") {
        try {
            tc.parentId = std::stoll(parentVal);
        } catch (...) {
            throw std::runtime_error("test case line 1: malformed parent id");
        }
    }
    if (flipVal != "none") {
        auto instr = ir::parseInstrId(flipVal);
        if (!instr)
            throw std::runtime_error("test case line 1: malformed flip id");
        tc.flippedInstr = *instr;
    }

    int lineNo = 1;
    while (std::getline(is, line)) {
        ++lineNo;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string inKw;
        std::int64_t inputId = 0, value = 0;
        if (!(ls >> inKw >> inputId >> value) || inKw != "in")
            throw std::runtime_error("test case line " + std::to_string(lineNo) +
                                     ": malformed binding");
        std::string rest;
        if (ls >> rest)
            throw std::runtime_error("test case line " + std::to_string(lineNo) +
                                     ": trailing content");
        if (inputId < 0)
            throw std::runtime_error("test case line " + std::to_string(lineNo) +
                                     ": negative input id");
        if (value < INT32_MIN || value > INT32_MAX)
            throw std::runtime_error("test case line " + std::to_string(lineNo) +
                                     ": value out of i32 range");
        tc.bindings[static_cast<int>(inputId)] = static_cast<std::int32_t>(value);
    }
    return tc;
}

} // namespace coyotekit::exec
