#include "lincan/expression.hpp"

#include "lincan/types.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lincan {

namespace detail {

enum class Op { constant, time, add, sub, mul, div, pow, neg, exp, log, sin, cos, sqrt };

struct ExprNode {
    Op op;
    double value = 0.0;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
};

}  // namespace detail

namespace {

using detail::ExprNode;
using detail::Op;
using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_const(double v) { return std::make_shared<const ExprNode>(ExprNode{Op::constant, v, nullptr, nullptr}); }
NodePtr make_time() { return std::make_shared<const ExprNode>(ExprNode{Op::time, 0.0, nullptr, nullptr}); }

bool is_const(const NodePtr& n, double v) { return n->op == Op::constant && n->value == v; }

double eval(const ExprNode& n, double t) {
    switch (n.op) {
        case Op::constant: return n.value;
        case Op::time: return t;
        case Op::add: return eval(*n.lhs, t) + eval(*n.rhs, t);
        case Op::sub: return eval(*n.lhs, t) - eval(*n.rhs, t);
        case Op::mul: return eval(*n.lhs, t) * eval(*n.rhs, t);
        case Op::div: return eval(*n.lhs, t) / eval(*n.rhs, t);
        case Op::pow: return std::pow(eval(*n.lhs, t), eval(*n.rhs, t));
        case Op::neg: return -eval(*n.lhs, t);
        case Op::exp: return std::exp(eval(*n.lhs, t));
        case Op::log: return std::log(eval(*n.lhs, t));
        case Op::sin: return std::sin(eval(*n.lhs, t));
        case Op::cos: return std::cos(eval(*n.lhs, t));
        case Op::sqrt: return std::sqrt(eval(*n.lhs, t));
    }
    return 0.0;
}

bool depends_on_time(const ExprNode& n) {
    if (n.op == Op::time) return true;
    if (n.op == Op::constant) return false;
    return (n.lhs && depends_on_time(*n.lhs)) || (n.rhs && depends_on_time(*n.rhs));
}

// Builders fold constants so that derivatives of polynomial-like inputs stay small.
NodePtr unary(Op op, NodePtr a) {
    if (a->op == Op::constant) return make_const(eval(ExprNode{op, 0.0, a, nullptr}, 0.0));
    if (op == Op::neg && a->op == Op::neg) return a->lhs;
    return std::make_shared<const ExprNode>(ExprNode{op, 0.0, std::move(a), nullptr});
}

NodePtr binary(Op op, NodePtr a, NodePtr b) {
    if (a->op == Op::constant && b->op == Op::constant) {
        return make_const(eval(ExprNode{op, 0.0, a, b}, 0.0));
    }
    switch (op) {
        case Op::add:
            if (is_const(a, 0.0)) return b;
            if (is_const(b, 0.0)) return a;
            break;
        case Op::sub:
            if (is_const(b, 0.0)) return a;
            if (is_const(a, 0.0)) return unary(Op::neg, b);
            break;
        case Op::mul:
            if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
            if (is_const(a, 1.0)) return b;
            if (is_const(b, 1.0)) return a;
            break;
        case Op::div:
            if (is_const(a, 0.0)) return make_const(0.0);
            if (is_const(b, 1.0)) return a;
            break;
        case Op::pow:
            if (is_const(b, 0.0)) return make_const(1.0);
            if (is_const(b, 1.0)) return a;
            break;
        default: break;
    }
    return std::make_shared<const ExprNode>(ExprNode{op, 0.0, std::move(a), std::move(b)});
}

NodePtr diff(const NodePtr& n) {
    if (!depends_on_time(*n)) return make_const(0.0);
    const NodePtr& a = n->lhs;
    const NodePtr& b = n->rhs;
    switch (n->op) {
        case Op::constant: return make_const(0.0);
        case Op::time: return make_const(1.0);
        case Op::add: return binary(Op::add, diff(a), diff(b));
        case Op::sub: return binary(Op::sub, diff(a), diff(b));
        case Op::mul: return binary(Op::add, binary(Op::mul, diff(a), b), binary(Op::mul, a, diff(b)));
        case Op::div:
            return binary(Op::div, binary(Op::sub, binary(Op::mul, diff(a), b), binary(Op::mul, a, diff(b))),
                          binary(Op::mul, b, b));
        case Op::pow:
            if (!depends_on_time(*b)) {
                // d(a^c) = c a^(c-1) a'
                return binary(Op::mul, binary(Op::mul, b, binary(Op::pow, a, binary(Op::sub, b, make_const(1.0)))),
                              diff(a));
            }
            // d(a^b) = a^b (b' log a + b a'/a)
            return binary(Op::mul, n,
                          binary(Op::add, binary(Op::mul, diff(b), unary(Op::log, a)),
                                 binary(Op::div, binary(Op::mul, b, diff(a)), a)));
        case Op::neg: return unary(Op::neg, diff(a));
        case Op::exp: return binary(Op::mul, n, diff(a));
        case Op::log: return binary(Op::div, diff(a), a);
        case Op::sin: return binary(Op::mul, unary(Op::cos, a), diff(a));
        case Op::cos: return unary(Op::neg, binary(Op::mul, unary(Op::sin, a), diff(a)));
        case Op::sqrt: return binary(Op::div, diff(a), binary(Op::mul, make_const(2.0), n));
    }
    return make_const(0.0);
}

void print(const ExprNode& n, std::ostream& os) {
    auto fn = [&](const char* name) {
        os << name << '(';
        print(*n.lhs, os);
        os << ')';
    };
    auto bin = [&](const char* sym) {
        os << '(';
        print(*n.lhs, os);
        os << ' ' << sym << ' ';
        print(*n.rhs, os);
        os << ')';
    };
    switch (n.op) {
        case Op::constant: os << n.value; break;
        case Op::time: os << 't'; break;
        case Op::add: bin("+"); break;
        case Op::sub: bin("-"); break;
        case Op::mul: bin("*"); break;
        case Op::div: bin("/"); break;
        case Op::pow: bin("^"); break;
        case Op::neg:
            os << "-(";
            print(*n.lhs, os);
            os << ')';
            break;
        case Op::exp: fn("exp"); break;
        case Op::log: fn("log"); break;
        case Op::sin: fn("sin"); break;
        case Op::cos: fn("cos"); break;
        case Op::sqrt: fn("sqrt"); break;
    }
}

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr root = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return root;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::parse, "expression \"" + std::string(text_) + "\": " + msg + " at position " +
                                          std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = binary(Op::add, lhs, term());
            } else if (accept('-')) {
                lhs = binary(Op::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary_expr();
        for (;;) {
            if (accept('*')) {
                lhs = binary(Op::mul, lhs, unary_expr());
            } else if (accept('/')) {
                lhs = binary(Op::div, lhs, unary_expr());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary_expr() {
        if (accept('-')) return unary(Op::neg, unary_expr());
        if (accept('+')) return unary_expr();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return binary(Op::pow, base, unary_expr());
        return base;
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return named();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc()) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return make_const(value);
    }

    NodePtr named() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name(text_.substr(start, pos_ - start));
        if (name == "t") return make_time();
        if (name == "pi") return make_const(std::numbers::pi);

        Op op;
        if (name == "exp") {
            op = Op::exp;
        } else if (name == "log") {
            op = Op::log;
        } else if (name == "sin") {
            op = Op::sin;
        } else if (name == "cos") {
            op = Op::cos;
        } else if (name == "sqrt") {
            op = Op::sqrt;
        } else if (name == "pow") {
            expect('(');
            NodePtr base = expr();
            expect(',');
            NodePtr exponent = expr();
            expect(')');
            return binary(Op::pow, base, exponent);
        } else {
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return unary(op, arg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse()); }

Expression Expression::constant(double value) { return Expression(make_const(value)); }

double Expression::operator()(double t) const { return eval(*root_, t); }

Expression Expression::derivative() const { return Expression(diff(root_)); }

bool Expression::is_constant() const { return !depends_on_time(*root_); }

std::string Expression::to_string() const {
    std::ostringstream os;
    os.precision(17);
    print(*root_, os);
    return os.str();
}

}  // namespace lincan
