#pragma once

#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalg/operator.hpp"

namespace dalg {

// ---------------------------------------------------------------------------
// Expression AST
// ---------------------------------------------------------------------------

enum class ExprKind { Number, Variable, Add, Sub, Mul, Div, Neg, Pow };

/// Arithmetic AST over non-negative integer literals, named variables
/// (primes allowed, e.g. w'), + - * / ^ and unary minus. Exponents are
/// integer literals.
struct Expr {
    ExprKind kind = ExprKind::Number;
    BigRat value;            // Number
    std::string name;        // Variable
    long exponent = 0;       // Pow
    std::vector<Expr> children;

    static Expr number(BigRat v) {
        Expr e;
        e.kind = ExprKind::Number;
        e.value = std::move(v);
        return e;
    }
    static Expr variable(std::string n) {
        Expr e;
        e.kind = ExprKind::Variable;
        e.name = std::move(n);
        return e;
    }
    static Expr binary(ExprKind k, Expr a, Expr b) {
        Expr e;
        e.kind = k;
        e.children.push_back(std::move(a));
        e.children.push_back(std::move(b));
        return e;
    }
    static Expr neg(Expr a) {
        Expr e;
        e.kind = ExprKind::Neg;
        e.children.push_back(std::move(a));
        return e;
    }
    static Expr pow(Expr base, long exp) {
        Expr e;
        e.kind = ExprKind::Pow;
        e.exponent = exp;
        e.children.push_back(std::move(base));
        return e;
    }

    friend bool operator==(const Expr& a, const Expr& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case ExprKind::Number: return a.value == b.value;
            case ExprKind::Variable: return a.name == b.name;
            case ExprKind::Pow:
                return a.exponent == b.exponent && a.children[0] == b.children[0];
            default:
                if (a.children.size() != b.children.size()) return false;
                for (std::size_t i = 0; i < a.children.size(); ++i)
                    if (!(a.children[i] == b.children[i])) return false;
                return true;
        }
    }
};

struct ParseError : std::runtime_error {
    int line, column;
    std::string expected;
    ParseError(const std::string& msg, int l, int c, std::string exp)
        : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c) +
                             (exp.empty() ? "" : " (expected " + exp + ")")),
          line(l), column(c), expected(std::move(exp)) {}
};

// ---------------------------------------------------------------------------
// Lexer + recursive-descent parser
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
    int line, col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : s_(src) { advance(); }
    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) {
            if (s_[i_] == '\n') { ++line_; col_ = 1; } else ++col_;
            ++i_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (i_ >= s_.size()) {
            tok_.kind = Token::End;
            tok_.text = "<end>";
            return;
        }
        char c = s_[i_];
        auto single = [&](Token::Kind k) {
            tok_.kind = k;
            tok_.text = std::string(1, c);
            ++i_, ++col_;
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            tok_.kind = Token::Number;
            tok_.text = s_.substr(i_, j - i_);
            col_ += static_cast<int>(j - i_);
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
            while (j < s_.size() && s_[j] == '\'') ++j;  // trailing primes: w', w''
            tok_.kind = Token::Ident;
            tok_.text = s_.substr(i_, j - i_);
            col_ += static_cast<int>(j - i_);
            i_ = j;
            return;
        }
        switch (c) {
            case '+': single(Token::Plus); return;
            case '-': single(Token::Minus); return;
            case '*': single(Token::Star); return;
            case '/': single(Token::Slash); return;
            case '^': single(Token::Caret); return;
            case '(': single(Token::LParen); return;
            case ')': single(Token::RParen); return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col_,
                                 "number, variable, operator or parenthesis");
        }
    }

    std::string s_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
  public:
    explicit Parser(const std::string& src) : lex_(src) {}

    Expr parse() {
        Expr e = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::End)
            throw ParseError("trailing input '" + t.text + "'", t.line, t.col, "end of input");
        return e;
    }

  private:
    Expr expr() {
        Expr e = term();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Plus) {
                lex_.next();
                e = Expr::binary(ExprKind::Add, std::move(e), term());
            } else if (t.kind == Token::Minus) {
                lex_.next();
                e = Expr::binary(ExprKind::Sub, std::move(e), term());
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Star) {
                lex_.next();
                e = Expr::binary(ExprKind::Mul, std::move(e), factor());
            } else if (t.kind == Token::Slash) {
                lex_.next();
                e = Expr::binary(ExprKind::Div, std::move(e), factor());
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Minus) {
            lex_.next();
            return Expr::neg(factor());
        }
        Expr base = primary();
        if (lex_.peek().kind == Token::Caret) {
            lex_.next();
            bool neg = false;
            if (lex_.peek().kind == Token::Minus) {
                lex_.next();
                neg = true;
            }
            Token e = lex_.next();
            if (e.kind != Token::Number)
                throw ParseError("exponent must be an integer literal", e.line, e.col, "integer");
            long exp = std::stol(e.text);
            return Expr::pow(std::move(base), neg ? -exp : exp);
        }
        return base;
    }

    Expr primary() {
        Token t = lex_.next();
        switch (t.kind) {
            case Token::Number: return Expr::number(BigRat::from_string(t.text));
            case Token::Ident: return Expr::variable(t.text);
            case Token::LParen: {
                Expr e = expr();
                Token r = lex_.next();
                if (r.kind != Token::RParen)
                    throw ParseError("unbalanced parenthesis", r.line, r.col, ")");
                return e;
            }
            default:
                throw ParseError("unexpected token '" + t.text + "'", t.line, t.col,
                                 "number, variable or (");
        }
    }

    Lexer lex_;
};

}  // namespace detail

inline Expr parse_expression(const std::string& src) { return detail::Parser(src).parse(); }

// ---------------------------------------------------------------------------
// Pretty printer: parse(print(e)) is structurally equal to e
// ---------------------------------------------------------------------------

namespace detail {

inline int precedence(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Neg: return 2;
        case ExprKind::Mul:
        case ExprKind::Div: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;
    }
}

inline void print_rec(std::ostream& os, const Expr& e, int parent_prec, bool right_assoc_slot) {
    int prec = precedence(e);
    bool parens = prec < parent_prec || (prec == parent_prec && right_assoc_slot);
    if (parens) os << "(";
    switch (e.kind) {
        case ExprKind::Number: os << e.value.to_string(); break;
        case ExprKind::Variable: os << e.name; break;
        case ExprKind::Add:
            print_rec(os, e.children[0], prec, false);
            os << " + ";
            print_rec(os, e.children[1], prec, true);
            break;
        case ExprKind::Sub:
            print_rec(os, e.children[0], prec, false);
            os << " - ";
            print_rec(os, e.children[1], prec, true);
            break;
        case ExprKind::Mul:
            print_rec(os, e.children[0], prec, false);
            os << "*";
            print_rec(os, e.children[1], prec, true);
            break;
        case ExprKind::Div:
            print_rec(os, e.children[0], prec, false);
            os << "/";
            print_rec(os, e.children[1], prec, true);
            break;
        case ExprKind::Neg:
            os << "-";
            // The operand of unary minus re-parses greedily: -a*b means -(a*b),
            // so anything tighter than Neg itself needs no parens only when it
            // is the whole factor chain. Parenthesize Mul/Div/Add/Sub operands.
            print_rec(os, e.children[0], 4, false);
            break;
        case ExprKind::Pow:
            print_rec(os, e.children[0], 5, false);
            os << "^" << e.exponent;
            break;
    }
    if (parens) os << ")";
}

}  // namespace detail

inline std::string print_expression(const Expr& e) {
    std::ostringstream os;
    detail::print_rec(os, e, 0, false);
    return os.str();
}

// ---------------------------------------------------------------------------
// Interpretation into domain values
// ---------------------------------------------------------------------------

inline void collect_variables(const Expr& e, std::set<std::string>& out) {
    if (e.kind == ExprKind::Variable) out.insert(e.name);
    for (const auto& c : e.children) collect_variables(c, out);
}

/// Evaluates in Q(vars); every variable of the expression must be declared.
inline RationalFunction to_rational_function(const Expr& e, const std::vector<std::string>& vars) {
    switch (e.kind) {
        case ExprKind::Number: return RationalFunction::constant(e.value, vars);
        case ExprKind::Variable: {
            if (std::find(vars.begin(), vars.end(), e.name) == vars.end())
                throw std::invalid_argument("unknown variable '" + e.name + "'");
            return RationalFunction::variable(e.name, vars);
        }
        case ExprKind::Add:
            return to_rational_function(e.children[0], vars) + to_rational_function(e.children[1], vars);
        case ExprKind::Sub:
            return to_rational_function(e.children[0], vars) - to_rational_function(e.children[1], vars);
        case ExprKind::Mul:
            return to_rational_function(e.children[0], vars) * to_rational_function(e.children[1], vars);
        case ExprKind::Div:
            return to_rational_function(e.children[0], vars) / to_rational_function(e.children[1], vars);
        case ExprKind::Neg: return -to_rational_function(e.children[0], vars);
        case ExprKind::Pow: return to_rational_function(e.children[0], vars).pow(e.exponent);
    }
    throw std::logic_error("to_rational_function: bad node");
}

inline Poly to_poly(const Expr& e, const std::vector<std::string>& vars) {
    RationalFunction f = to_rational_function(e, vars);
    if (!f.is_polynomial())
        throw std::invalid_argument("expected a polynomial, got " + f.to_string());
    return f.as_polynomial();
}

inline BigRat to_rational_constant(const Expr& e) {
    RationalFunction f = to_rational_function(e, {});
    return f.constant_value();
}

/// Evaluates in the operator ring k[D], k = Q(t, other symbols), t' = 1.
/// Multiplication is noncommutative (D*t = t*D + 1); division and negative
/// powers are only defined for order-0 values.
inline LinearDifferentialOperator to_operator(const Expr& e, const std::string& var = "t") {
    std::set<std::string> names;
    collect_variables(e, names);
    names.erase("D");
    names.insert(var);
    std::vector<std::string> vars(names.begin(), names.end());

    struct Eval {
        const std::vector<std::string>& vars;
        const std::string& var;
        LinearDifferentialOperator run(const Expr& e) const {
            using Op = LinearDifferentialOperator;
            switch (e.kind) {
                case ExprKind::Number:
                    return Op::from_scalar(RationalFunction::constant(e.value, vars), var);
                case ExprKind::Variable:
                    if (e.name == "D") return Op::derivation(var);
                    return Op::from_scalar(RationalFunction::variable(e.name, vars), var);
                case ExprKind::Add: return run(e.children[0]) + run(e.children[1]);
                case ExprKind::Sub: return run(e.children[0]) - run(e.children[1]);
                case ExprKind::Mul: return run(e.children[0]) * run(e.children[1]);
                case ExprKind::Div: {
                    Op a = run(e.children[0]), b = run(e.children[1]);
                    if (b.order() > 0)
                        throw std::invalid_argument("cannot divide by an operator of positive order");
                    if (b.is_zero()) throw std::domain_error("division by zero");
                    return a * Op::from_scalar(b.coeff(0).inverse(), var);
                }
                case ExprKind::Neg: return -run(e.children[0]);
                case ExprKind::Pow: {
                    Op b = run(e.children[0]);
                    if (e.exponent >= 0) {
                        if (b.order() > 0)
                            return b.pow(static_cast<unsigned>(e.exponent));
                        return Op::from_scalar(b.coeff(0).pow(e.exponent), var);
                    }
                    if (b.order() > 0)
                        throw std::invalid_argument("negative power of an operator");
                    return Op::from_scalar(b.coeff(0).pow(e.exponent), var);
                }
            }
            throw std::logic_error("to_operator: bad node");
        }
    };
    return Eval{vars, var}.run(e);
}

}  // namespace dalg
