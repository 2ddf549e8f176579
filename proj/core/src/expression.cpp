#include "subdiff/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "subdiff/error.hpp"

namespace subdiff {

struct Expression::Node {
    enum class Op { Const, X, T, Add, Sub, Mul, Div, Pow, Neg, Exp, Cos, Sin, Sqrt, Indicator };
    Op op = Op::Const;
    double value = 0.0;  // Const
    double lo = 0.0;     // Indicator
    double hi = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;

    [[nodiscard]] double eval(double x, double t) const {
        switch (op) {
            case Op::Const: return value;
            case Op::X: return x;
            case Op::T: return t;
            case Op::Add: return a->eval(x, t) + b->eval(x, t);
            case Op::Sub: return a->eval(x, t) - b->eval(x, t);
            case Op::Mul: return a->eval(x, t) * b->eval(x, t);
            case Op::Div: return a->eval(x, t) / b->eval(x, t);
            case Op::Pow: return std::pow(a->eval(x, t), b->eval(x, t));
            case Op::Neg: return -a->eval(x, t);
            case Op::Exp: return std::exp(a->eval(x, t));
            case Op::Cos: return std::cos(a->eval(x, t));
            case Op::Sin: return std::sin(a->eval(x, t));
            case Op::Sqrt: return std::sqrt(a->eval(x, t));
            case Op::Indicator: return x > lo && x < hi ? 1.0 : 0.0;
        }
        return 0.0;
    }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        auto n = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

    bool uses_x = false;
    bool uses_t = false;
    std::vector<double> endpoints;

private:
    [[noreturn]] void error(const std::string& msg) const {
        std::ostringstream os;
        os << "expression \"" << s_ << "\", column " << pos_ + 1 << ": " << msg;
        fail(ErrorKind::Config, os.str());
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) error(std::string("expected '") + c + "'");
    }

    static NodePtr binary(Node::Op op, NodePtr a, NodePtr b) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    static NodePtr constant(double v) {
        auto n = std::make_shared<Node>();
        n->value = v;
        return n;
    }

    NodePtr expr() {
        auto lhs = term();
        for (;;) {
            if (accept('+')) lhs = binary(Node::Op::Add, lhs, term());
            else if (accept('-')) lhs = binary(Node::Op::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) lhs = binary(Node::Op::Mul, lhs, unary());
            else if (accept('/')) lhs = binary(Node::Op::Div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return binary(Node::Op::Neg, unary(), nullptr);
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        auto base = atom();
        if (accept('^')) return binary(Node::Op::Pow, base, unary());
        return base;
    }

    double number() {
        skip();
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) error("expected a number");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    double signed_number() {
        const bool neg = accept('-');
        const double v = number();
        return neg ? -v : v;
    }

    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number());
        if (accept('(')) {
            auto n = expr();
            expect(')');
            return n;
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) error("unexpected '" + std::string(1, c) + "'");
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name = s_.substr(start, pos_ - start);
        if (name == "x") {
            uses_x = true;
            auto n = std::make_shared<Node>();
            n->op = Node::Op::X;
            return n;
        }
        if (name == "t") {
            uses_t = true;
            auto n = std::make_shared<Node>();
            n->op = Node::Op::T;
            return n;
        }
        if (name == "pi") return constant(std::numbers::pi);
        if (name == "pow") {
            expect('(');
            auto a = expr();
            expect(',');
            auto b = expr();
            expect(')');
            return binary(Node::Op::Pow, a, b);
        }
        if (name == "indicator") {
            expect('(');
            const double lo = signed_number();
            expect(',');
            const double hi = signed_number();
            expect(')');
            if (!(lo < hi)) error("indicator needs l < r");
            uses_x = true;
            endpoints.push_back(lo);
            endpoints.push_back(hi);
            auto n = std::make_shared<Node>();
            n->op = Node::Op::Indicator;
            n->lo = lo;
            n->hi = hi;
            return n;
        }
        Node::Op op;
        if (name == "exp") op = Node::Op::Exp;
        else if (name == "cos") op = Node::Op::Cos;
        else if (name == "sin") op = Node::Op::Sin;
        else if (name == "sqrt") op = Node::Op::Sqrt;
        else {
            pos_ = start;
            error("unknown identifier '" + name + "'");
        }
        expect('(');
        auto arg = expr();
        expect(')');
        return binary(op, arg, nullptr);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
    Parser p(text);
    Expression e;
    e.root_ = p.parse();
    e.text_ = text;
    e.uses_x_ = p.uses_x;
    e.uses_t_ = p.uses_t;
    e.endpoints_ = std::move(p.endpoints);
    return e;
}

double Expression::operator()(double x, double t) const {
    return root_->eval(x, t);
}

}  // namespace subdiff
