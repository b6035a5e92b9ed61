#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "mapping.hpp"
#include "realfn.hpp"

namespace isoframe {

namespace expr_detail {

enum class FnId { Sin, Cos, Tan, Ln, Log10, Exp, Sqrt, Abs, Sinh, Cosh };

inline bool lookup_fn(const std::string& name, FnId& id) {
    static const std::pair<const char*, FnId> table[] = {
        {"sin", FnId::Sin},   {"cos", FnId::Cos},     {"tan", FnId::Tan},  {"ln", FnId::Ln},
        {"log10", FnId::Log10}, {"exp", FnId::Exp},   {"sqrt", FnId::Sqrt}, {"abs", FnId::Abs},
        {"sinh", FnId::Sinh}, {"cosh", FnId::Cosh}};
    for (const auto& [n, v] : table)
        if (name == n) {
            id = v;
            return true;
        }
    return false;
}

inline double apply_fn(FnId id, double u) {
    switch (id) {
        case FnId::Sin: return std::sin(u);
        case FnId::Cos: return std::cos(u);
        case FnId::Tan: return std::tan(u);
        case FnId::Ln: return std::log(u);
        case FnId::Log10: return std::log10(u);
        case FnId::Exp: return std::exp(u);
        case FnId::Sqrt: return std::sqrt(u);
        case FnId::Abs: return std::fabs(u);
        case FnId::Sinh: return std::sinh(u);
        default: return std::cosh(u);
    }
}

inline const char* fn_name(FnId id) {
    switch (id) {
        case FnId::Sin: return "sin";
        case FnId::Cos: return "cos";
        case FnId::Tan: return "tan";
        case FnId::Ln: return "ln";
        case FnId::Log10: return "log10";
        case FnId::Exp: return "exp";
        case FnId::Sqrt: return "sqrt";
        case FnId::Abs: return "abs";
        case FnId::Sinh: return "sinh";
        default: return "cosh";
    }
}

struct Node;
using P = std::shared_ptr<const Node>;

struct Node {
    enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
    double value = 0.0;
    int vindex = 0;  // Var: 0 = x, 1 = y (second variable for set predicates)
    FnId fn = FnId::Sin;
    P a, b;
};

inline P num(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Num;
    n->value = v;
    return n;
}

inline P var(int idx = 0) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Var;
    n->vindex = idx;
    return n;
}

inline P unary(Node::Kind k, P a) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    return n;
}

inline P call(FnId f, P a) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Call;
    n->fn = f;
    n->a = std::move(a);
    return n;
}

inline bool is_num(const P& n, double v) { return n->kind == Node::Num && n->value == v; }

inline P binary(Node::Kind k, P a, P b) {
    // light constant folding keeps generated derivatives readable and cheap
    if (a->kind == Node::Num && b->kind == Node::Num) {
        switch (k) {
            case Node::Add: return num(a->value + b->value);
            case Node::Sub: return num(a->value - b->value);
            case Node::Mul: return num(a->value * b->value);
            case Node::Div: if (b->value != 0.0) return num(a->value / b->value); break;
            default: break;
        }
    }
    if (k == Node::Add) {
        if (is_num(a, 0.0)) return b;
        if (is_num(b, 0.0)) return a;
    } else if (k == Node::Sub) {
        if (is_num(b, 0.0)) return a;
        if (is_num(a, 0.0)) return unary(Node::Neg, b);
    } else if (k == Node::Mul) {
        if (is_num(a, 0.0) || is_num(b, 0.0)) return num(0.0);
        if (is_num(a, 1.0)) return b;
        if (is_num(b, 1.0)) return a;
    } else if (k == Node::Div) {
        if (is_num(a, 0.0)) return num(0.0);
        if (is_num(b, 1.0)) return a;
    } else if (k == Node::Pow) {
        if (is_num(b, 1.0)) return a;
        if (is_num(b, 0.0)) return num(1.0);
    }
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

inline double eval(const Node& n, double x, double y = 0.0) {
    switch (n.kind) {
        case Node::Num: return n.value;
        case Node::Var: return n.vindex == 0 ? x : y;
        case Node::Neg: return -eval(*n.a, x, y);
        case Node::Add: return eval(*n.a, x, y) + eval(*n.b, x, y);
        case Node::Sub: return eval(*n.a, x, y) - eval(*n.b, x, y);
        case Node::Mul: return eval(*n.a, x, y) * eval(*n.b, x, y);
        case Node::Div: return eval(*n.a, x, y) / eval(*n.b, x, y);
        case Node::Pow: return std::pow(eval(*n.a, x, y), eval(*n.b, x, y));
        default: return apply_fn(n.fn, eval(*n.a, x, y));
    }
}

/** Symbolic derivative; every node kind has a rule. */
inline P derive(const P& n) {
    switch (n->kind) {
        case Node::Num: return num(0.0);
        case Node::Var: return num(n->vindex == 0 ? 1.0 : 0.0);
        case Node::Neg: return unary(Node::Neg, derive(n->a));
        case Node::Add: return binary(Node::Add, derive(n->a), derive(n->b));
        case Node::Sub: return binary(Node::Sub, derive(n->a), derive(n->b));
        case Node::Mul:
            return binary(Node::Add, binary(Node::Mul, derive(n->a), n->b),
                          binary(Node::Mul, n->a, derive(n->b)));
        case Node::Div:
            return binary(Node::Div,
                          binary(Node::Sub, binary(Node::Mul, derive(n->a), n->b),
                                 binary(Node::Mul, n->a, derive(n->b))),
                          binary(Node::Pow, n->b, num(2.0)));
        case Node::Pow: {
            if (n->b->kind == Node::Num)  // power rule u^c
                return binary(Node::Mul,
                              binary(Node::Mul, num(n->b->value),
                                     binary(Node::Pow, n->a, num(n->b->value - 1.0))),
                              derive(n->a));
            if (n->a->kind == Node::Num)  // exponential rule a^v
                return binary(Node::Mul,
                              binary(Node::Mul, binary(Node::Pow, n->a, n->b),
                                     num(std::log(n->a->value))),
                              derive(n->b));
            // general u^v = exp(v ln u)
            return binary(Node::Mul, binary(Node::Pow, n->a, n->b),
                          binary(Node::Add,
                                 binary(Node::Mul, derive(n->b), call(FnId::Ln, n->a)),
                                 binary(Node::Div, binary(Node::Mul, n->b, derive(n->a)), n->a)));
        }
        default: {
            P inner = derive(n->a);
            switch (n->fn) {
                case FnId::Sin: return binary(Node::Mul, call(FnId::Cos, n->a), inner);
                case FnId::Cos:
                    return unary(Node::Neg, binary(Node::Mul, call(FnId::Sin, n->a), inner));
                case FnId::Tan:
                    return binary(Node::Div, inner,
                                  binary(Node::Pow, call(FnId::Cos, n->a), num(2.0)));
                case FnId::Ln: return binary(Node::Div, inner, n->a);
                case FnId::Log10:
                    return binary(Node::Div, inner,
                                  binary(Node::Mul, n->a, num(std::log(10.0))));
                case FnId::Exp: return binary(Node::Mul, call(FnId::Exp, n->a), inner);
                case FnId::Sqrt:
                    return binary(Node::Div, inner,
                                  binary(Node::Mul, num(2.0), call(FnId::Sqrt, n->a)));
                case FnId::Abs:
                    // sign(u) * u', written as u/|u|
                    return binary(Node::Mul, binary(Node::Div, n->a, call(FnId::Abs, n->a)), inner);
                case FnId::Sinh: return binary(Node::Mul, call(FnId::Cosh, n->a), inner);
                default: return binary(Node::Mul, call(FnId::Sinh, n->a), inner);
            }
        }
    }
}

inline std::string print_impl(const P& n);

inline std::string paren(const P& n) {
    std::string s = print_impl(n);
    if (n->kind == Node::Num && n->value >= 0.0) return s;
    if (n->kind == Node::Var || n->kind == Node::Call) return s;
    return "(" + s + ")";
}

inline std::string print_impl(const P& n) {
    char buf[40];
    switch (n->kind) {
        case Node::Num:
            std::snprintf(buf, sizeof(buf), "%.17g", n->value);
            return buf;
        case Node::Var: return n->vindex == 0 ? "x" : "y";
        case Node::Neg: return "-" + paren(n->a);
        case Node::Add: return paren(n->a) + "+" + paren(n->b);
        case Node::Sub: return paren(n->a) + "-" + paren(n->b);
        case Node::Mul: return paren(n->a) + "*" + paren(n->b);
        case Node::Div: return paren(n->a) + "/" + paren(n->b);
        case Node::Pow: return paren(n->a) + "^" + paren(n->b);
        default: return std::string(fn_name(n->fn)) + "(" + print_impl(n->a) + ")";
    }
}

struct Token {
    enum Type { Number, Ident, Op, End } type = End;
    double value = 0.0;
    std::string text;
    char op = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.pos = pos_;
        if (pos_ >= src_.size()) {
            tok_.type = Token::End;
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = src_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(start, &end);
            if (end == start) throw SyntaxError("malformed number", pos_);
            tok_.type = Token::Number;
            tok_.value = v;
            pos_ += static_cast<std::size_t>(end - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_.type = Token::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::string("+-*/^(),|<>=").find(c) != std::string::npos) {
            tok_.type = Token::Op;
            tok_.op = c;
            ++pos_;
            return;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string src_;
    std::size_t pos_ = 0;
    Token tok_;
};

enum class RelOp { Lt, Le, Gt, Ge };

class Parser {
public:
    Parser(const std::string& text, const std::map<std::string, double>& lets,
           bool allow_y = false)
        : lex_(text), lets_(lets), allow_y_(allow_y) {}

    P parse() {
        P root = expression();
        const Token& t = lex_.peek();
        if (t.type != Token::End)
            throw SyntaxError("unexpected trailing input; expected an operator or end", t.pos);
        return root;
    }

    /** lhs (< | <= | > | >=) rhs */
    void parse_inequality(P& lhs, RelOp& op, P& rhs) {
        lhs = expression();
        const Token t = lex_.take();
        if (t.type != Token::Op || (t.op != '<' && t.op != '>'))
            throw SyntaxError("expected '<', '<=', '>' or '>=' in the predicate", t.pos);
        bool with_eq = false;
        if (lex_.peek().type == Token::Op && lex_.peek().op == '=') {
            lex_.take();
            with_eq = true;
        }
        op = t.op == '<' ? (with_eq ? RelOp::Le : RelOp::Lt) : (with_eq ? RelOp::Ge : RelOp::Gt);
        rhs = expression();
        const Token& end = lex_.peek();
        if (end.type != Token::End)
            throw SyntaxError("unexpected trailing input after the predicate", end.pos);
    }

private:
    bool is_op(char c) const { return lex_.peek().type == Token::Op && lex_.peek().op == c; }

    void expect(char c, const char* what) {
        if (!is_op(c)) throw SyntaxError(std::string("expected '") + c + "' " + what, lex_.peek().pos);
        lex_.take();
    }

    P expression() {
        P left = term();
        while (is_op('+') || is_op('-')) {
            char op = lex_.take().op;
            left = binary(op == '+' ? Node::Add : Node::Sub, left, term());
        }
        return left;
    }

    P term() {
        P left = factor();
        while (is_op('*') || is_op('/')) {
            char op = lex_.take().op;
            left = binary(op == '*' ? Node::Mul : Node::Div, left, factor());
        }
        return left;
    }

    // '^' is right-associative and binds looser than unary minus
    P factor() {
        P base = unary_expr();
        if (is_op('^')) {
            lex_.take();
            return binary(Node::Pow, base, factor());
        }
        return base;
    }

    P unary_expr() {
        if (is_op('-')) {
            lex_.take();
            return unary(Node::Neg, unary_expr());
        }
        return atom();
    }

    P atom() {
        const Token t = lex_.take();
        if (t.type == Token::Number) return num(t.value);
        if (t.type == Token::Ident) {
            if (is_op('(')) {
                lex_.take();
                std::vector<P> args;
                args.push_back(expression());
                while (is_op(',')) {
                    lex_.take();
                    args.push_back(expression());
                }
                expect(')', "to close the argument list");
                FnId id;
                if (!lookup_fn(t.text, id))
                    throw UnknownIdentifier("unknown function '" + t.text + "'");
                if (args.size() != 1)
                    throw SyntaxError("function '" + t.text + "' takes one argument", t.pos);
                return call(id, args[0]);
            }
            if (t.text == "x") return var(0);
            if (allow_y_ && t.text == "y") return var(1);
            if (t.text == "pi") return num(3.14159265358979323846);
            if (t.text == "e") return num(2.71828182845904523536);
            auto it = lets_.find(t.text);
            if (it != lets_.end()) return num(it->second);
            throw UnknownIdentifier("unknown identifier '" + t.text + "'");
        }
        if (t.type == Token::Op && t.op == '(') {
            P inner = expression();
            expect(')', "to close the group");
            return inner;
        }
        throw SyntaxError("expected a number, name, or '('", t.pos);
    }

    Lexer lex_;
    const std::map<std::string, double>& lets_;
    bool allow_y_ = false;
};

/** Structural domain constraints read off bare-variable subterms. */
inline void infer_domain(const P& n, Interval& dom) {
    if (!n) return;
    if (n->kind == Node::Call && n->a->kind == Node::Var) {
        bool empty = false;
        if (n->fn == FnId::Ln || n->fn == FnId::Log10)
            dom = Interval::intersect(dom, Interval::positive(), empty);
        else if (n->fn == FnId::Sqrt)
            dom = Interval::intersect(dom, Interval::nonnegative(), empty);
        if (empty) throw InvalidParam("declared interval lies outside the expression's domain");
    }
    if (n->kind == Node::Pow && n->a->kind == Node::Var && n->b->kind == Node::Num) {
        double p = n->b->value;
        if (std::floor(p) != p) {
            bool empty = false;
            dom = Interval::intersect(dom, Interval::positive(), empty);
            if (empty) throw InvalidParam("declared interval lies outside the expression's domain");
        }
    }
    infer_domain(n->a, dom);
    infer_domain(n->b, dom);
}

}  // namespace expr_detail

/**
 * Parse a one-variable expression (variable `x`, constants pi and e, optional
 * named bindings) into a RealFn carrying a symbolic derivative. Grammar:
 *   expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
 *   factor := unary ('^' factor)? ; unary := '-' unary | atom ;
 *   atom := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'.
 * The domain is the declared interval narrowed by ln/log10/sqrt/fractional
 * powers applied directly to x; other holes surface as DomainViolation when
 * evaluation hits them.
 */
inline RealFn parse_expr(const std::string& text, const std::map<std::string, double>& lets = {},
                         const Interval& declared = Interval::all()) {
    expr_detail::Parser parser(text, lets);
    expr_detail::P root = parser.parse();
    Interval dom = declared;
    expr_detail::infer_domain(root, dom);
    expr_detail::P deriv = expr_detail::derive(root);
    RealFn out([root](double x) { return expr_detail::eval(*root, x); }, dom,
               [deriv](double x) { return expr_detail::eval(*deriv, x); },
               expr_detail::print_impl(root));
    return out;
}

/** The canonical printed form of an expression (reparses to the same values). */
inline std::string pretty_expr(const std::string& text,
                               const std::map<std::string, double>& lets = {}) {
    expr_detail::Parser parser(text, lets);
    return expr_detail::print_impl(parser.parse());
}

/** A set-membership inequality in one or two variables. */
struct Predicate {
    int dim = 1;
    std::function<bool(double, double)> fn;  // second argument ignored when dim == 1
    std::string repr;

    bool operator()(double x) const { return fn(x, 0.0); }
    bool operator()(double x, double y) const { return fn(x, y); }
};

/**
 * Parse "lhs REL rhs" with REL one of < <= > >=; variables allowed: x (dim 1)
 * or x,y (dim 2). NaN on either side counts as non-membership.
 */
inline Predicate parse_predicate(const std::string& text, int dim,
                                 const std::map<std::string, double>& lets = {}) {
    if (dim != 1 && dim != 2) throw InvalidParam("predicate dimension must be 1 or 2");
    expr_detail::Parser parser(text, lets, dim == 2);
    expr_detail::P lhs, rhs;
    expr_detail::RelOp op;
    parser.parse_inequality(lhs, op, rhs);
    Predicate out;
    out.dim = dim;
    const char* rel = op == expr_detail::RelOp::Lt   ? "<"
                      : op == expr_detail::RelOp::Le ? "<="
                      : op == expr_detail::RelOp::Gt ? ">"
                                                     : ">=";
    out.repr = expr_detail::print_impl(lhs) + rel + expr_detail::print_impl(rhs);
    out.fn = [lhs, rhs, op](double x, double y) {
        double l = expr_detail::eval(*lhs, x, y);
        double r = expr_detail::eval(*rhs, x, y);
        switch (op) {
            case expr_detail::RelOp::Lt: return l < r;
            case expr_detail::RelOp::Le: return l <= r;
            case expr_detail::RelOp::Gt: return l > r;
            default: return l >= r;
        }
    };
    return out;
}

/**
 * Parse a mapping spec: a catalog name with optional numeric parameters,
 * or a '|' chain applied left to right ("affine(2,1)|ln" is ln(2x+1)).
 */
inline Mapping parse_mapping(const std::string& text) {
    expr_detail::Lexer lex(text);
    auto parse_one = [&lex]() -> Mapping {
        expr_detail::Token t = lex.take();
        if (t.type != expr_detail::Token::Ident)
            throw SyntaxError("expected a mapping name", t.pos);
        std::vector<double> params;
        if (lex.peek().type == expr_detail::Token::Op && lex.peek().op == '(') {
            lex.take();
            while (true) {
                double sign = 1.0;
                while (lex.peek().type == expr_detail::Token::Op &&
                       (lex.peek().op == '-' || lex.peek().op == '+')) {
                    if (lex.take().op == '-') sign = -sign;
                }
                expr_detail::Token v = lex.take();
                if (v.type == expr_detail::Token::Number)
                    params.push_back(sign * v.value);
                else if (v.type == expr_detail::Token::Ident && v.text == "pi")
                    params.push_back(sign * 3.14159265358979323846);
                else if (v.type == expr_detail::Token::Ident && v.text == "e")
                    params.push_back(sign * 2.71828182845904523536);
                else
                    throw SyntaxError("expected a numeric parameter", v.pos);
                if (lex.peek().type == expr_detail::Token::Op && lex.peek().op == ',') {
                    lex.take();
                    continue;
                }
                break;
            }
            expr_detail::Token close = lex.take();
            if (close.type != expr_detail::Token::Op || close.op != ')')
                throw SyntaxError("expected ')' to close the parameter list", close.pos);
        }
        return catalog(t.text, params);
    };

    Mapping chain = parse_one();
    while (lex.peek().type == expr_detail::Token::Op && lex.peek().op == '|') {
        lex.take();
        Mapping next = parse_one();
        chain = compose(next, chain);
    }
    expr_detail::Token end = lex.take();
    if (end.type != expr_detail::Token::End)
        throw SyntaxError("unexpected trailing input after the mapping chain", end.pos);
    return chain;
}

}  // namespace isoframe
