#include "coyotekit/minic/parser.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace coyotekit::minic {

namespace {

enum class Tok {
    End,
    Ident,
    IntLit,
    KwI32,
    KwVoid,
    KwIf,
    KwElse,
    KwWhile,
    KwReturn,
    KwExtern,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Amp,
    Pipe,
    Caret,
    Shl,
    Shr,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    AmpAmp,
    PipePipe,
    Bang,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::uint64_t value = 0;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    Lexer(const std::string& text, const std::string& path, DiagnosticList& diags)
        : text_(text), path_(path), diags_(diags) {}

    Token next() {
        skipSpace();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                word.push_back(advance());
            t.text = word;
            if (word == "i32")
                t.kind = Tok::KwI32;
            else if (word == "void")
                t.kind = Tok::KwVoid;
            else if (word == "if")
                t.kind = Tok::KwIf;
            else if (word == "else")
                t.kind = Tok::KwElse;
            else if (word == "while")
                t.kind = Tok::KwWhile;
            else if (word == "return")
                t.kind = Tok::KwReturn;
            else if (word == "extern")
                t.kind = Tok::KwExtern;
            else
                t.kind = Tok::Ident;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            bool overflow = false;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + static_cast<std::uint64_t>(advance() - '0');
                if (v > (1ull << 40))
                    overflow = true; // clamp to keep multiplying safe
            }
            t.kind = Tok::IntLit;
            t.value = overflow ? (1ull << 40) : v;
            return t;
        }
        advance();
        switch (c) {
        case '(': t.kind = Tok::LParen; return t;
        case ')': t.kind = Tok::RParen; return t;
        case '{': t.kind = Tok::LBrace; return t;
        case '}': t.kind = Tok::RBrace; return t;
        case '[': t.kind = Tok::LBracket; return t;
        case ']': t.kind = Tok::RBracket; return t;
        case ',': t.kind = Tok::Comma; return t;
        case ';': t.kind = Tok::Semi; return t;
        case '+': t.kind = Tok::Plus; return t;
        case '-': t.kind = Tok::Minus; return t;
        case '*': t.kind = Tok::Star; return t;
        case '/': t.kind = Tok::Slash; return t;
        case '%': t.kind = Tok::Percent; return t;
        case '^': t.kind = Tok::Caret; return t;
        case '&':
            if (match('&')) {
                t.kind = Tok::AmpAmp;
                return t;
            }
            t.kind = Tok::Amp;
            return t;
        case '|':
            if (match('|')) {
                t.kind = Tok::PipePipe;
                return t;
            }
            t.kind = Tok::Pipe;
            return t;
        case '<':
            if (match('<')) {
                t.kind = Tok::Shl;
                return t;
            }
            if (match('=')) {
                t.kind = Tok::Le;
                return t;
            }
            t.kind = Tok::Lt;
            return t;
        case '>':
            if (match('>')) {
                t.kind = Tok::Shr;
                return t;
            }
            if (match('=')) {
                t.kind = Tok::Ge;
                return t;
            }
            t.kind = Tok::Gt;
            return t;
        case '=':
            if (match('=')) {
                t.kind = Tok::Eq;
                return t;
            }
            t.kind = Tok::Assign;
            return t;
        case '!':
            if (match('=')) {
                t.kind = Tok::Ne;
                return t;
            }
            t.kind = Tok::Bang;
            return t;
        default:
            error(t.line, t.column, std::string("unexpected character '") + c + "'");
            return next();
        }
    }

private:
    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    bool match(char want) {
        if (pos_ < text_.size() && text_[pos_] == want) {
            advance();
            return true;
        }
        return false;
    }

    void skipSpace() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    void error(int line, int column, const std::string& message) {
        Diagnostic d;
        d.file = path_;
        d.line = line;
        d.column = column;
        d.message = message;
        diags_.push_back(std::move(d));
    }

    const std::string& text_;
    std::string path_;
    DiagnosticList& diags_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

// Recursive-descent syntax pass. The first syntax error in a file aborts that
// file with a diagnostic; semantic checks live in analyze().
class Parser {
public:
    Parser(const std::string& text, const std::string& path, SourceProgram& program,
           DiagnosticList& diags)
        : lexer_(text, path, diags), path_(path), program_(program), diags_(diags) {
        cur_ = lexer_.next();
    }

    void run() {
        while (cur_.kind != Tok::End && !failed_)
            topDecl();
    }

private:
    struct SyntaxError {};

    [[noreturn]] void fail(const std::string& message) {
        Diagnostic d;
        d.file = path_;
        d.line = cur_.line;
        d.column = cur_.column;
        d.message = message;
        diags_.push_back(std::move(d));
        failed_ = true;
        throw SyntaxError{};
    }

    Token eat() {
        Token t = cur_;
        cur_ = lexer_.next();
        return t;
    }

    Token expect(Tok kind, const char* what) {
        if (cur_.kind != kind)
            fail(std::string("syntax error: expected ") + what);
        return eat();
    }

    bool at(Tok kind) const { return cur_.kind == kind; }

    void topDecl() {
        try {
            if (at(Tok::KwExtern)) {
                eat();
                externDecl();
                return;
            }
            if (at(Tok::KwVoid)) {
                eat();
                functionRest(false);
                return;
            }
            expect(Tok::KwI32, "'i32', 'void' or 'extern'");
            Token name = expect(Tok::Ident, "identifier");
            if (at(Tok::LParen)) {
                functionBody(name, true);
            } else {
                globalRest(name);
            }
        } catch (SyntaxError&) {
            // file aborted
        }
    }

    void externDecl() {
        bool returns = true;
        if (at(Tok::KwVoid)) {
            eat();
            returns = false;
        } else {
            expect(Tok::KwI32, "'i32' or 'void'");
        }
        Token name = expect(Tok::Ident, "identifier");
        FunctionDecl fn;
        fn.name = name.text;
        fn.returnsValue = returns;
        fn.isExtern = true;
        fn.line = name.line;
        fn.column = name.column;
        fn.file = path_;
        expect(Tok::LParen, "'('");
        fn.params = paramList();
        expect(Tok::Semi, "';'");
        program_.functions.push_back(std::move(fn));
    }

    void functionRest(bool returns) {
        Token name = expect(Tok::Ident, "identifier");
        functionBody(name, returns);
    }

    void functionBody(const Token& name, bool returns) {
        FunctionDecl fn;
        fn.name = name.text;
        fn.returnsValue = returns;
        fn.line = name.line;
        fn.column = name.column;
        fn.file = path_;
        expect(Tok::LParen, "'('");
        fn.params = paramList();
        fn.body = block();
        program_.functions.push_back(std::move(fn));
    }

    std::vector<Param> paramList() {
        std::vector<Param> params;
        if (at(Tok::RParen)) {
            eat();
            return params;
        }
        while (true) {
            expect(Tok::KwI32, "'i32'");
            Token name = expect(Tok::Ident, "parameter name");
            Param p;
            p.name = name.text;
            p.line = name.line;
            p.column = name.column;
            if (at(Tok::LBracket)) {
                eat();
                Token size = expect(Tok::IntLit, "array size");
                expect(Tok::RBracket, "']'");
                p.isArray = true;
                p.arraySize = checkArraySize(size);
            }
            params.push_back(std::move(p));
            if (at(Tok::Comma)) {
                eat();
                continue;
            }
            expect(Tok::RParen, "')' or ','");
            return params;
        }
    }

    int checkArraySize(const Token& size) {
        if (size.value < 1 || size.value > 1000000) {
            Diagnostic d;
            d.file = path_;
            d.line = size.line;
            d.column = size.column;
            d.message = "array size must be between 1 and 1000000";
            diags_.push_back(std::move(d));
            return 1;
        }
        return static_cast<int>(size.value);
    }

    void globalRest(const Token& name) {
        GlobalDecl g;
        g.name = name.text;
        g.line = name.line;
        g.column = name.column;
        g.file = path_;
        if (at(Tok::LBracket)) {
            eat();
            Token size = expect(Tok::IntLit, "array size");
            expect(Tok::RBracket, "']'");
            g.isArray = true;
            g.size = checkArraySize(size);
        }
        if (at(Tok::Assign)) {
            eat();
            g.explicitInit = true;
            if (at(Tok::LBrace)) {
                eat();
                while (true) {
                    g.init.push_back(intConstant());
                    if (at(Tok::Comma)) {
                        eat();
                        continue;
                    }
                    break;
                }
                expect(Tok::RBrace, "'}'");
            } else {
                g.init.push_back(intConstant());
            }
        }
        expect(Tok::Semi, "';'");
        program_.globals.push_back(std::move(g));
    }

    std::int32_t intConstant() {
        bool neg = false;
        if (at(Tok::Minus)) {
            eat();
            neg = true;
        }
        Token lit = expect(Tok::IntLit, "integer constant");
        return literalValue(lit, neg);
    }

    std::int32_t literalValue(const Token& lit, bool negated) {
        const std::uint64_t limit = negated ? 2147483648ull : 2147483647ull;
        std::uint64_t v = lit.value;
        if (v > limit) {
            Diagnostic d;
            d.file = path_;
            d.line = lit.line;
            d.column = lit.column;
            d.message = "integer literal out of range";
            diags_.push_back(std::move(d));
            v = limit;
        }
        std::int64_t s = negated ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
        return static_cast<std::int32_t>(s);
    }

    StmtPtr block() {
        Token open = expect(Tok::LBrace, "'{'");
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::Block;
        s->line = open.line;
        s->column = open.column;
        while (!at(Tok::RBrace)) {
            if (at(Tok::End))
                fail("syntax error: unterminated block");
            s->body.push_back(statement());
        }
        eat();
        return s;
    }

    StmtPtr statement() {
        if (at(Tok::LBrace))
            return block();
        if (at(Tok::KwI32))
            return localDecl();
        if (at(Tok::KwIf))
            return ifStmt();
        if (at(Tok::KwWhile))
            return whileStmt();
        if (at(Tok::KwReturn))
            return returnStmt();
        return assignOrExprStmt();
    }

    StmtPtr localDecl() {
        Token kw = eat();
        Token name = expect(Tok::Ident, "identifier");
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::LocalDecl;
        s->line = kw.line;
        s->column = kw.column;
        s->name = name.text;
        if (at(Tok::LBracket)) {
            eat();
            Token size = expect(Tok::IntLit, "array size");
            expect(Tok::RBracket, "']'");
            s->isArray = true;
            s->arraySize = checkArraySize(size);
            expect(Tok::Semi, "';'");
            return s;
        }
        if (at(Tok::Assign)) {
            eat();
            s->init = expression();
        }
        expect(Tok::Semi, "';'");
        return s;
    }

    StmtPtr ifStmt() {
        Token kw = eat();
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::If;
        s->line = kw.line;
        s->column = kw.column;
        expect(Tok::LParen, "'('");
        s->cond = expression();
        expect(Tok::RParen, "')'");
        s->thenStmt = statement();
        if (at(Tok::KwElse)) {
            eat();
            s->elseStmt = statement();
        }
        return s;
    }

    StmtPtr whileStmt() {
        Token kw = eat();
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::While;
        s->line = kw.line;
        s->column = kw.column;
        expect(Tok::LParen, "'('");
        s->cond = expression();
        expect(Tok::RParen, "')'");
        s->thenStmt = statement();
        return s;
    }

    StmtPtr returnStmt() {
        Token kw = eat();
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::Return;
        s->line = kw.line;
        s->column = kw.column;
        if (!at(Tok::Semi))
            s->expr = expression();
        expect(Tok::Semi, "';'");
        return s;
    }

    StmtPtr assignOrExprStmt() {
        int line = cur_.line;
        int column = cur_.column;
        ExprPtr e = expression();
        auto s = std::make_unique<Stmt>();
        s->line = line;
        s->column = column;
        if (at(Tok::Assign)) {
            eat();
            if (e->kind != Expr::Kind::Var && e->kind != Expr::Kind::Index)
                fail("syntax error: assignment target must be a variable or array element");
            s->kind = Stmt::Kind::Assign;
            s->name = e->name;
            if (e->kind == Expr::Kind::Index)
                s->indexExpr = std::move(e->lhs);
            s->expr = expression();
        } else {
            s->kind = Stmt::Kind::ExprStmt;
            s->expr = std::move(e);
        }
        expect(Tok::Semi, "';'");
        return s;
    }

    ExprPtr expression() { return logicalOr(); }

    ExprPtr makeBinary(BinOp op, ExprPtr lhs, ExprPtr rhs, int line, int column) {
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::Binary;
        e->binOp = op;
        e->line = line;
        e->column = column;
        e->lhs = std::move(lhs);
        e->rhs = std::move(rhs);
        return e;
    }

    ExprPtr logicalOr() {
        ExprPtr e = logicalAnd();
        while (at(Tok::PipePipe)) {
            Token t = eat();
            e = makeBinary(BinOp::LOr, std::move(e), logicalAnd(), t.line, t.column);
        }
        return e;
    }

    ExprPtr logicalAnd() {
        ExprPtr e = bitOr();
        while (at(Tok::AmpAmp)) {
            Token t = eat();
            e = makeBinary(BinOp::LAnd, std::move(e), bitOr(), t.line, t.column);
        }
        return e;
    }

    ExprPtr bitOr() {
        ExprPtr e = bitXor();
        while (at(Tok::Pipe)) {
            Token t = eat();
            e = makeBinary(BinOp::BitOr, std::move(e), bitXor(), t.line, t.column);
        }
        return e;
    }

    ExprPtr bitXor() {
        ExprPtr e = bitAnd();
        while (at(Tok::Caret)) {
            Token t = eat();
            e = makeBinary(BinOp::BitXor, std::move(e), bitAnd(), t.line, t.column);
        }
        return e;
    }

    ExprPtr bitAnd() {
        ExprPtr e = equality();
        while (at(Tok::Amp)) {
            Token t = eat();
            e = makeBinary(BinOp::BitAnd, std::move(e), equality(), t.line, t.column);
        }
        return e;
    }

    ExprPtr equality() {
        ExprPtr e = relational();
        while (at(Tok::Eq) || at(Tok::Ne)) {
            Token t = eat();
            BinOp op = t.kind == Tok::Eq ? BinOp::Eq : BinOp::Ne;
            e = makeBinary(op, std::move(e), relational(), t.line, t.column);
        }
        return e;
    }

    ExprPtr relational() {
        ExprPtr e = shift();
        while (at(Tok::Lt) || at(Tok::Le) || at(Tok::Gt) || at(Tok::Ge)) {
            Token t = eat();
            BinOp op = t.kind == Tok::Lt   ? BinOp::Lt
                       : t.kind == Tok::Le ? BinOp::Le
                       : t.kind == Tok::Gt ? BinOp::Gt
                                           : BinOp::Ge;
            e = makeBinary(op, std::move(e), shift(), t.line, t.column);
        }
        return e;
    }

    ExprPtr shift() {
        ExprPtr e = additive();
        while (at(Tok::Shl) || at(Tok::Shr)) {
            Token t = eat();
            BinOp op = t.kind == Tok::Shl ? BinOp::Shl : BinOp::Shr;
            e = makeBinary(op, std::move(e), additive(), t.line, t.column);
        }
        return e;
    }

    ExprPtr additive() {
        ExprPtr e = multiplicative();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            Token t = eat();
            BinOp op = t.kind == Tok::Plus ? BinOp::Add : BinOp::Sub;
            e = makeBinary(op, std::move(e), multiplicative(), t.line, t.column);
        }
        return e;
    }

    ExprPtr multiplicative() {
        ExprPtr e = unary();
        while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Percent)) {
            Token t = eat();
            BinOp op = t.kind == Tok::Star    ? BinOp::Mul
                       : t.kind == Tok::Slash ? BinOp::Div
                                              : BinOp::Rem;
            e = makeBinary(op, std::move(e), unary(), t.line, t.column);
        }
        return e;
    }

    ExprPtr unary() {
        if (at(Tok::Minus)) {
            Token t = eat();
            if (at(Tok::IntLit)) {
                Token lit = eat();
                auto e = std::make_unique<Expr>();
                e->kind = Expr::Kind::IntLit;
                e->line = t.line;
                e->column = t.column;
                e->value = literalValue(lit, true);
                return postfixOps(std::move(e));
            }
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Unary;
            e->unOp = UnOp::Neg;
            e->line = t.line;
            e->column = t.column;
            e->lhs = unary();
            return e;
        }
        if (at(Tok::Bang)) {
            Token t = eat();
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Unary;
            e->unOp = UnOp::Not;
            e->line = t.line;
            e->column = t.column;
            e->lhs = unary();
            return e;
        }
        return postfix();
    }

    ExprPtr postfix() { return postfixOps(primary()); }

    ExprPtr postfixOps(ExprPtr e) {
        while (true) {
            if (at(Tok::LBracket)) {
                Token t = eat();
                if (e->kind != Expr::Kind::Var)
                    fail("syntax error: only named arrays can be indexed");
                auto idx = std::make_unique<Expr>();
                idx->kind = Expr::Kind::Index;
                idx->name = e->name;
                idx->line = t.line;
                idx->column = t.column;
                idx->lhs = expression();
                expect(Tok::RBracket, "']'");
                e = std::move(idx);
                continue;
            }
            if (at(Tok::LParen)) {
                Token t = eat();
                if (e->kind != Expr::Kind::Var)
                    fail("syntax error: call target must be a function name");
                auto call = std::make_unique<Expr>();
                call->kind = Expr::Kind::Call;
                call->name = e->name;
                call->line = e->line;
                call->column = e->column;
                (void)t;
                if (!at(Tok::RParen)) {
                    while (true) {
                        call->args.push_back(expression());
                        if (at(Tok::Comma)) {
                            eat();
                            continue;
                        }
                        break;
                    }
                }
                expect(Tok::RParen, "')'");
                e = std::move(call);
                continue;
            }
            return e;
        }
    }

    ExprPtr primary() {
        if (at(Tok::IntLit)) {
            Token lit = eat();
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::IntLit;
            e->line = lit.line;
            e->column = lit.column;
            e->value = literalValue(lit, false);
            return e;
        }
        if (at(Tok::Ident)) {
            Token id = eat();
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Var;
            e->name = id.text;
            e->line = id.line;
            e->column = id.column;
            return e;
        }
        if (at(Tok::LParen)) {
            eat();
            ExprPtr e = expression();
            expect(Tok::RParen, "')'");
            return e;
        }
        fail("syntax error: expected expression");
    }

    Lexer lexer_;
    std::string path_;
    SourceProgram& program_;
    DiagnosticList& diags_;
    Token cur_;
    bool failed_ = false;
};

} // namespace

void parse(const std::string& sourceText, const std::string& path, SourceProgram& program,
           DiagnosticList& diags) {
    program.files.push_back(path);
    Parser parser(sourceText, path, program, diags);
    parser.run();
}

namespace {

// Semantic pass helpers. Kind of a name as seen by expressions.
enum class ValueKind { Scalar, Array, Void };

struct FnSig {
    bool returnsValue = true;
    bool defined = false;
    std::vector<Param> params;
    int line = 0;
    std::string file;
};

class Analyzer {
public:
    explicit Analyzer(const SourceProgram& program) : program_(program) {}

    DiagnosticList run() {
        collectTopLevel();
        for (const auto& fn : program_.functions)
            if (!fn.isExtern)
                checkFunction(fn);
        return std::move(diags_);
    }

private:
    void error(const std::string& file, int line, int column, const std::string& message) {
        Diagnostic d;
        d.file = file;
        d.line = line;
        d.column = column;
        d.message = message;
        diags_.push_back(std::move(d));
    }

    static bool sameSignature(const FnSig& a, const FunctionDecl& b) {
        if (a.returnsValue != b.returnsValue || a.params.size() != b.params.size())
            return false;
        for (size_t i = 0; i < a.params.size(); ++i) {
            if (a.params[i].isArray != b.params[i].isArray)
                return false;
            if (a.params[i].isArray && a.params[i].arraySize != b.params[i].arraySize)
                return false;
        }
        return true;
    }

    void collectTopLevel() {
        for (const auto& g : program_.globals) {
            if (globals_.count(g.name) || functions_.count(g.name)) {
                error(g.file, g.line, g.column, "duplicate definition of " + g.name);
                continue;
            }
            if (g.explicitInit) {
                size_t want = g.isArray ? static_cast<size_t>(g.size) : 1;
                if (g.init.size() != want)
                    error(g.file, g.line, g.column,
                          "initializer length mismatch for " + g.name);
            }
            globals_[g.name] = &g;
        }
        for (const auto& fn : program_.functions) {
            if (globals_.count(fn.name)) {
                error(fn.file, fn.line, fn.column, "duplicate definition of " + fn.name);
                continue;
            }
            std::set<std::string> names;
            for (const auto& p : fn.params)
                if (!names.insert(p.name).second)
                    error(fn.file, p.line, p.column,
                          "duplicate parameter " + p.name + " in " + fn.name);
            auto it = functions_.find(fn.name);
            if (it == functions_.end()) {
                FnSig sig;
                sig.returnsValue = fn.returnsValue;
                sig.defined = !fn.isExtern;
                sig.params = fn.params;
                sig.line = fn.line;
                sig.file = fn.file;
                functions_[fn.name] = std::move(sig);
                continue;
            }
            FnSig& sig = it->second;
            if (!sameSignature(sig, fn)) {
                error(fn.file, fn.line, fn.column,
                      "conflicting declaration of " + fn.name);
                continue;
            }
            if (!fn.isExtern) {
                if (sig.defined)
                    error(fn.file, fn.line, fn.column, "duplicate definition of " + fn.name);
                sig.defined = true;
            }
        }
    }

    struct Scope {
        std::map<std::string, ValueKind> names;
    };

    void checkFunction(const FunctionDecl& fn) {
        file_ = fn.file;
        currentFn_ = &fn;
        scopes_.clear();
        scopes_.emplace_back();
        for (const auto& p : fn.params)
            scopes_.back().names[p.name] = p.isArray ? ValueKind::Array : ValueKind::Scalar;
        checkStmt(*fn.body);
        scopes_.clear();
    }

    std::optional<ValueKind> lookup(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto hit = it->names.find(name);
            if (hit != it->names.end())
                return hit->second;
        }
        auto g = globals_.find(name);
        if (g != globals_.end())
            return g->second->isArray ? ValueKind::Array : ValueKind::Scalar;
        return std::nullopt;
    }

    void checkStmt(const Stmt& s) {
        switch (s.kind) {
        case Stmt::Kind::Block:
            scopes_.emplace_back();
            for (const auto& child : s.body)
                checkStmt(*child);
            scopes_.pop_back();
            break;
        case Stmt::Kind::LocalDecl: {
            if (scopes_.back().names.count(s.name))
                error(file_, s.line, s.column, "duplicate definition of " + s.name);
            if (s.init)
                checkScalar(*s.init);
            scopes_.back().names[s.name] = s.isArray ? ValueKind::Array : ValueKind::Scalar;
            break;
        }
        case Stmt::Kind::If:
            checkScalar(*s.cond);
            checkStmt(*s.thenStmt);
            if (s.elseStmt)
                checkStmt(*s.elseStmt);
            break;
        case Stmt::Kind::While:
            checkScalar(*s.cond);
            checkStmt(*s.thenStmt);
            break;
        case Stmt::Kind::Return:
            if (s.expr) {
                if (!currentFn_->returnsValue)
                    error(file_, s.line, s.column, "type mismatch: return with value in void function");
                checkScalar(*s.expr);
            } else if (currentFn_->returnsValue) {
                error(file_, s.line, s.column, "type mismatch: return without value");
            }
            break;
        case Stmt::Kind::Assign: {
            auto kind = lookup(s.name);
            if (!kind) {
                error(file_, s.line, s.column, "unknown identifier " + s.name);
            } else if (s.indexExpr) {
                if (*kind != ValueKind::Array)
                    error(file_, s.line, s.column, "type mismatch: indexing scalar " + s.name);
                checkScalar(*s.indexExpr);
            } else if (*kind == ValueKind::Array) {
                error(file_, s.line, s.column,
                      "type mismatch: cannot assign to array " + s.name);
            }
            checkScalar(*s.expr);
            break;
        }
        case Stmt::Kind::ExprStmt:
            checkExpr(*s.expr, /*allowVoid=*/true);
            break;
        }
    }

    void checkScalar(const Expr& e) {
        ValueKind k = checkExpr(e, /*allowVoid=*/false);
        if (k == ValueKind::Array)
            error(file_, e.line, e.column, "type mismatch: array " + e.name + " used as scalar");
    }

    ValueKind checkExpr(const Expr& e, bool allowVoid) {
        switch (e.kind) {
        case Expr::Kind::IntLit:
            return ValueKind::Scalar;
        case Expr::Kind::Var: {
            auto kind = lookup(e.name);
            if (!kind) {
                error(file_, e.line, e.column, "unknown identifier " + e.name);
                return ValueKind::Scalar;
            }
            return *kind;
        }
        case Expr::Kind::Index: {
            auto kind = lookup(e.name);
            if (!kind)
                error(file_, e.line, e.column, "unknown identifier " + e.name);
            else if (*kind != ValueKind::Array)
                error(file_, e.line, e.column, "type mismatch: indexing scalar " + e.name);
            checkScalar(*e.lhs);
            return ValueKind::Scalar;
        }
        case Expr::Kind::Call: {
            auto it = functions_.find(e.name);
            if (it == functions_.end()) {
                error(file_, e.line, e.column, "unknown identifier " + e.name);
                for (const auto& a : e.args)
                    checkExpr(*a, false);
                return ValueKind::Scalar;
            }
            const FnSig& sig = it->second;
            if (sig.params.size() != e.args.size())
                error(file_, e.line, e.column,
                      "wrong number of arguments to " + e.name);
            for (size_t i = 0; i < e.args.size(); ++i) {
                bool wantArray = i < sig.params.size() && sig.params[i].isArray;
                ValueKind got = checkExpr(*e.args[i], false);
                if (wantArray && got != ValueKind::Array)
                    error(file_, e.args[i]->line, e.args[i]->column,
                          "type mismatch: scalar passed to array parameter of " + e.name);
                if (!wantArray && got == ValueKind::Array)
                    error(file_, e.args[i]->line, e.args[i]->column,
                          "type mismatch: array passed to scalar parameter of " + e.name);
            }
            if (!sig.returnsValue && !allowVoid)
                error(file_, e.line, e.column, "type mismatch: void value used");
            return sig.returnsValue ? ValueKind::Scalar : ValueKind::Void;
        }
        case Expr::Kind::Unary:
            checkScalar(*e.lhs);
            return ValueKind::Scalar;
        case Expr::Kind::Binary:
            checkScalar(*e.lhs);
            checkScalar(*e.rhs);
            return ValueKind::Scalar;
        }
        return ValueKind::Scalar;
    }

    const SourceProgram& program_;
    DiagnosticList diags_;
    std::map<std::string, const GlobalDecl*> globals_;
    std::map<std::string, FnSig> functions_;
    std::vector<Scope> scopes_;
    std::string file_;
    const FunctionDecl* currentFn_ = nullptr;
};

} // namespace

DiagnosticList analyze(const SourceProgram& program) { return Analyzer(program).run(); }

SourceProgram parseProgram(const std::vector<std::pair<std::string, std::string>>& files,
                           DiagnosticList& diags) {
    SourceProgram program;
    for (const auto& [path, text] : files)
        parse(text, path, program, diags);
    if (diags.empty()) {
        DiagnosticList sem = analyze(program);
        diags.insert(diags.end(), sem.begin(), sem.end());
    }
    return program;
}

} // namespace coyotekit::minic
