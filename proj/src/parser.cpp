#include <cctype>
#include <optional>

#include "fpcert/expr.hpp"

namespace fpcert {

namespace {

enum class Tok { Ident, Number, Colon, Semi, Comma, LBracket, RBracket, LParen, RParen, Plus, Minus, Star, Slash, Caret, Le, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { next(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        next();
        return t;
    }

  private:
    void next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                s.push_back(src_[pos_]);
                advance();
            }
            tok_.kind = Tok::Ident;
            tok_.text = s;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < src_.size() &&
                                                            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            std::string s;
            bool saw_dot = false;
            while (pos_ < src_.size()) {
                char d = src_[pos_];
                if (std::isdigit(static_cast<unsigned char>(d))) {
                    s.push_back(d);
                    advance();
                } else if (d == '.' && !saw_dot) {
                    saw_dot = true;
                    s.push_back(d);
                    advance();
                } else if ((d == 'e' || d == 'E') && pos_ + 1 < src_.size() &&
                           (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '+' ||
                            src_[pos_ + 1] == '-')) {
                    s.push_back(d);
                    advance();
                    if (src_[pos_] == '+' || src_[pos_] == '-') {
                        s.push_back(src_[pos_]);
                        advance();
                    }
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                        s.push_back(src_[pos_]);
                        advance();
                    }
                    break;
                } else {
                    break;
                }
            }
            tok_.kind = Tok::Number;
            tok_.text = s;
            return;
        }
        switch (c) {
            case ':': tok_.kind = Tok::Colon; break;
            case ';': tok_.kind = Tok::Semi; break;
            case ',': tok_.kind = Tok::Comma; break;
            case '[': tok_.kind = Tok::LBracket; break;
            case ']': tok_.kind = Tok::RBracket; break;
            case '(': tok_.kind = Tok::LParen; break;
            case ')': tok_.kind = Tok::RParen; break;
            case '+': tok_.kind = Tok::Plus; break;
            case '-': tok_.kind = Tok::Minus; break;
            case '*': tok_.kind = Tok::Star; break;
            case '/': tok_.kind = Tok::Slash; break;
            case '^': tok_.kind = Tok::Caret; break;
            case '<':
                if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
                    tok_.kind = Tok::Le;
                    advance();
                    break;
                }
                throw ParseError(line_, col_, "unexpected character '<'");
            default:
                throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
        tok_.text = std::string(1, c);
        advance();
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
  public:
    explicit Parser(const std::string& src) : lex_(src) {}

    Program parse() {
        Program prog;
        prog.name = "program";
        if (peek_keyword("name")) {
            take_keyword("name");
            expect(Tok::Colon, "':' after 'name'");
            Token t = expect(Tok::Ident, "program name");
            prog.name = t.text;
            // names may carry hyphenated suffixes (ex-2-2-5, floudas3-4)
            while (lex_.peek().kind == Tok::Minus) {
                lex_.take();
                Token part = lex_.take();
                if (part.kind != Tok::Ident && part.kind != Tok::Number)
                    throw ParseError(part.line, part.col, "malformed program name");
                prog.name += "-" + part.text;
            }
        }
        take_keyword("vars");
        expect(Tok::Colon, "':' after 'vars'");
        parse_vardecl(prog);
        while (lex_.peek().kind == Tok::Semi) {
            lex_.take();
            if (peek_keyword("expr") || peek_keyword("constraints")) break;
            parse_vardecl(prog);
        }
        prog_ = &prog;
        if (peek_keyword("constraints")) {
            take_keyword("constraints");
            expect(Tok::Colon, "':' after 'constraints'");
            parse_constraint(prog);
            while (lex_.peek().kind == Tok::Semi) {
                lex_.take();
                if (peek_keyword("expr")) break;
                parse_constraint(prog);
            }
        }
        take_keyword("expr");
        expect(Tok::Colon, "':' after 'expr'");
        if (lex_.peek().kind == Tok::End) {
            const Token& t = lex_.peek();
            throw ParseError(t.line, t.col, "empty expression");
        }
        prog.root = parse_expression(prog.dag);
        if (lex_.peek().kind == Tok::Semi) lex_.take();
        if (lex_.peek().kind != Tok::End) {
            const Token& t = lex_.peek();
            throw ParseError(t.line, t.col, "unexpected trailing input '" + t.text + "'");
        }
        return prog;
    }

  private:
    bool peek_keyword(const std::string& kw) {
        return lex_.peek().kind == Tok::Ident && lex_.peek().text == kw;
    }
    void take_keyword(const std::string& kw) {
        const Token& t = lex_.peek();
        if (!peek_keyword(kw)) throw ParseError(t.line, t.col, "expected '" + kw + ":'");
        lex_.take();
    }
    Token expect(Tok kind, const std::string& what) {
        Token t = lex_.take();
        if (t.kind != kind) throw ParseError(t.line, t.col, "expected " + what);
        return t;
    }

    Rational parse_signed_number() {
        bool neg = false;
        while (lex_.peek().kind == Tok::Minus || lex_.peek().kind == Tok::Plus) {
            if (lex_.take().kind == Tok::Minus) neg = !neg;
        }
        Token t = expect(Tok::Number, "a numeric bound");
        Rational v = rational_from_decimal(t.text);
        return neg ? Rational(-v) : v;
    }

    void parse_vardecl(Program& prog) {
        Token id = expect(Tok::Ident, "a variable name");
        for (const auto& v : prog.vars)
            if (v.name == id.text) throw ParseError(id.line, id.col, "duplicate variable '" + id.text + "'");
        Token in = expect(Tok::Ident, "'in'");
        if (in.text != "in") throw ParseError(in.line, in.col, "expected 'in' after variable name");
        expect(Tok::LBracket, "'['");
        Rational lo = parse_signed_number();
        expect(Tok::Comma, "','");
        Rational hi = parse_signed_number();
        Token rb = expect(Tok::RBracket, "']'");
        if (!(lo < hi))
            throw ParseError(rb.line, rb.col, "bound inversion for variable '" + id.text + "'");
        prog.vars.push_back({id.text, lo, hi});
    }

    void parse_constraint(Program& prog) {
        Token z = expect(Tok::Number, "'0' on the left of a constraint");
        if (rational_from_decimal(z.text) != 0)
            throw ParseError(z.line, z.col, "constraints must have the form 0 <= g(x)");
        expect(Tok::Le, "'<='");
        Dag scratch;  // constraints share the program variable table but not its DAG
        int root = parse_expression(scratch);
        try {
            prog.constraints.push_back(dag_to_polynomial(scratch, root, prog.vars.size()));
        } catch (const std::domain_error& e) {
            throw ParseError(z.line, z.col, std::string("constraint is not a polynomial: ") + e.what());
        }
    }

    int var_index(const Token& id) {
        for (std::size_t i = 0; i < prog_->vars.size(); ++i)
            if (prog_->vars[i].name == id.text) return static_cast<int>(i);
        throw ParseError(id.line, id.col, "unknown identifier '" + id.text + "'");
    }

    // expression := ["-"] term (("+"|"-") term)*
    // A leading minus negates the whole first term, so "-a*b" reads -(a*b).
    int parse_expression(Dag& dag) {
        int acc;
        if (lex_.peek().kind == Tok::Minus) {
            Token m = lex_.take();
            acc = guarded(m, [&] { return dag.add_neg(parse_term(dag)); });
        } else {
            acc = parse_term(dag);
        }
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            Token op = lex_.take();
            int rhs = parse_term(dag);
            acc = guarded(op, [&] {
                return dag.add_binary(op.kind == Tok::Plus ? ExprOp::Add : ExprOp::Sub, acc, rhs);
            });
        }
        return acc;
    }

    int parse_term(Dag& dag) {
        int acc = parse_factor(dag);
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            Token op = lex_.take();
            int rhs = parse_factor(dag);
            acc = guarded(op, [&] {
                return dag.add_binary(op.kind == Tok::Star ? ExprOp::Mul : ExprOp::Div, acc, rhs);
            });
        }
        return acc;
    }

    int parse_factor(Dag& dag) {
        int base = parse_primary(dag);
        if (lex_.peek().kind == Tok::Caret) {
            Token op = lex_.take();
            Token e = expect(Tok::Number, "an integer exponent");
            if (e.text.find('.') != std::string::npos || e.text.find('e') != std::string::npos ||
                e.text.find('E') != std::string::npos)
                throw ParseError(e.line, e.col, "exponent must be a nonnegative integer");
            unsigned long k = std::stoul(e.text);
            base = guarded(op, [&] { return dag.add_pow(base, static_cast<unsigned>(k)); });
        }
        return base;
    }

    int parse_primary(Dag& dag) {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Number: {
                Rational v = rational_from_decimal(t.text);
                int seeds = is_representable_double(v) ? 0 : 1;
                return dag.add_const(v, seeds, 0);
            }
            case Tok::Ident:
                return dag.add_var(var_index(t));
            case Tok::LParen: {
                int e = parse_expression(dag);
                expect(Tok::RParen, "')'");
                return e;
            }
            default:
                throw ParseError(t.line, t.col, "expected a number, variable or '('");
        }
    }

    template <class F>
    int guarded(const Token& at, F&& f) {
        try {
            return f();
        } catch (const std::domain_error& e) {
            throw ParseError(at.line, at.col, e.what());
        }
    }

    Lexer lex_;
    Program* prog_ = nullptr;
};

}  // namespace

Program parse_program(const std::string& text) { return Parser(text).parse(); }

}  // namespace fpcert
