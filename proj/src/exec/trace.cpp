#include "coyotekit/exec/trace.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace coyotekit::exec {

bool Trace::aborted() const {
    for (auto it = events.rbegin(); it != events.rend(); ++it)
        if (it->kind == TraceEvent::Kind::End)
            return !it->okEnd;
    return true;
}

int Trace::errCode() const {
    for (auto it = events.rbegin(); it != events.rend(); ++it)
        if (it->kind == TraceEvent::Kind::Err)
            return it->errCode;
    return 0;
}

std::string serializeTrace(const Trace& trace) {
    std::ostringstream os;
    os << "module\t" << ir::hashHex(trace.moduleHash) << "\n";
    os << "testcase\t" << trace.testCaseId << "\n";
    os << "entry\t" << trace.entry << "\n";
    for (const TraceEvent& e : trace.events) {
        switch (e.kind) {
        case TraceEvent::Kind::Func:
            os << "F\t" << e.name << "\n";
            break;
        case TraceEvent::Kind::Block:
            os << "B\t" << e.block.str() << "\n";
            break;
        case TraceEvent::Kind::Br:
            os << "BR\t" << e.instr.str() << "\t" << (e.taken ? 1 : 0) << "\n";
            break;
        case TraceEvent::Kind::Load:
            os << "LD\t" << e.instr.str() << "\t" << e.addr << "\t" << e.value << "\n";
            break;
        case TraceEvent::Kind::Store:
            os << "ST\t" << e.instr.str() << "\t" << e.addr << "\t" << e.value << "\n";
            break;
        case TraceEvent::Kind::Alloca:
            os << "AL\t" << e.instr.str() << "\t" << e.addr << "\t" << e.value << "\n";
            break;
        case TraceEvent::Kind::Input:
            os << "IN\t" << e.inputId << "\t" << e.value << "\n";
            break;
        case TraceEvent::Kind::Call:
            os << "CALL\t" << e.instr.str() << "\t" << e.name << "\n";
            break;
        case TraceEvent::Kind::Ret:
            os << "RET\n";
            break;
        case TraceEvent::Kind::Err:
            os << "ERR\t" << e.errCode << "\n";
            break;
        case TraceEvent::Kind::End:
            os << "END\t" << (e.okEnd ? "ok" : "abort") << "\n";
            break;
        }
    }
    return os.str();
}

namespace {

[[noreturn]] void badLine(int line, const std::string& message) {
    throw std::runtime_error("trace line " + std::to_string(line) + ": " + message);
}

std::vector<std::string> splitTabs(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::int64_t parseInt(const std::string& text, int line) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        badLine(line, "malformed integer '" + text + "'");
    return value;
}

std::int32_t parseI32(const std::string& text, int line) {
    std::int64_t v = parseInt(text, line);
    if (v < INT32_MIN || v > INT32_MAX)
        badLine(line, "integer out of i32 range '" + text + "'");
    return static_cast<std::int32_t>(v);
}

ir::InstrId parseId(const std::string& text, int line) {
    auto id = ir::parseInstrId(text);
    if (!id)
        badLine(line, "malformed instruction id '" + text + "'");
    return *id;
}

void expectFields(const std::vector<std::string>& fields, size_t n, int line) {
    if (fields.size() != n)
        badLine(line, "expected " + std::to_string(n) + " fields, found " +
                          std::to_string(fields.size()));
}

} // namespace

Trace parseTrace(const std::string& bytes) {
    Trace trace;
    std::istringstream is(bytes);
    std::string line;
    int lineNo = 0;
    int headerSeen = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        if (line.empty())
            badLine(lineNo, "empty line");
        std::vector<std::string> f = splitTabs(line);
        const std::string& tag = f[0];
        if (lineNo <= 3) {
            // Fixed three-line header.
            if (lineNo == 1) {
                expectFields(f, 2, lineNo);
                if (tag != "module" || f[1].size() != 16)
                    badLine(lineNo, "expected module header");
                trace.moduleHash = std::stoull(f[1], nullptr, 16);
            } else if (lineNo == 2) {
                expectFields(f, 2, lineNo);
                if (tag != "testcase")
                    badLine(lineNo, "expected testcase header");
                trace.testCaseId = parseInt(f[1], lineNo);
            } else {
                expectFields(f, 2, lineNo);
                if (tag != "entry")
                    badLine(lineNo, "expected entry header");
                trace.entry = f[1];
            }
            ++headerSeen;
            continue;
        }
        TraceEvent e;
        if (tag == "F") {
            expectFields(f, 2, lineNo);
            e.kind = TraceEvent::Kind::Func;
            e.name = f[1];
        } else if (tag == "B") {
            expectFields(f, 2, lineNo);
            auto ref = ir::parseBlockRef(f[1]);
            if (!ref)
                badLine(lineNo, "malformed block id '" + f[1] + "'");
            e.kind = TraceEvent::Kind::Block;
            e.block = *ref;
        } else if (tag == "BR") {
            expectFields(f, 3, lineNo);
            e.kind = TraceEvent::Kind::Br;
            e.instr = parseId(f[1], lineNo);
            if (f[2] == "0")
                e.taken = false;
            else if (f[2] == "1")
                e.taken = true;
            else
                badLine(lineNo, "branch taken flag must be 0 or 1, found '" + f[2] + "'");
        } else if (tag == "LD" || tag == "ST" || tag == "AL") {
            expectFields(f, 4, lineNo);
            e.kind = tag == "LD"   ? TraceEvent::Kind::Load
                     : tag == "ST" ? TraceEvent::Kind::Store
                                   : TraceEvent::Kind::Alloca;
            e.instr = parseId(f[1], lineNo);
            e.addr = parseI32(f[2], lineNo);
            e.value = parseI32(f[3], lineNo);
        } else if (tag == "IN") {
            expectFields(f, 3, lineNo);
            e.kind = TraceEvent::Kind::Input;
            e.inputId = static_cast<int>(parseInt(f[1], lineNo));
            e.value = parseI32(f[2], lineNo);
        } else if (tag == "CALL") {
            expectFields(f, 3, lineNo);
            e.kind = TraceEvent::Kind::Call;
            e.instr = parseId(f[1], lineNo);
            e.name = f[2];
        } else if (tag == "RET") {
            expectFields(f, 1, lineNo);
            e.kind = TraceEvent::Kind::Ret;
        } else if (tag == "ERR") {
            expectFields(f, 2, lineNo);
            e.kind = TraceEvent::Kind::Err;
            e.errCode = static_cast<int>(parseInt(f[1], lineNo));
        } else if (tag == "END") {
            expectFields(f, 2, lineNo);
            e.kind = TraceEvent::Kind::End;
            if (f[1] == "ok")
                e.okEnd = true;
            else if (f[1] == "abort")
                e.okEnd = false;
            else
                badLine(lineNo, "END status must be ok or abort");
        } else {
            badLine(lineNo, "unknown event tag '" + tag + "'");
        }
        trace.events.push_back(std::move(e));
    }
    if (headerSeen != 3)
        badLine(lineNo + 1, "truncated header");
    return trace;
}

} // namespace coyotekit::exec
