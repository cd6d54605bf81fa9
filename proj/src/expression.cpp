#include "wpdo/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

namespace wpdo {

struct Expression::Node {
    enum class Kind { Number, VarX, VarK, ImagUnit, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Weight };
    Kind kind;
    double number = 0.0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw_config("expression error at position " + std::to_string(pos_) + ": " + what +
                     " in '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (true) {
            if (eat('+'))
                lhs = make(Node::Kind::Add, lhs, term());
            else if (eat('-'))
                lhs = make(Node::Kind::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            if (eat('*'))
                lhs = make(Node::Kind::Mul, lhs, unary());
            else if (eat('/'))
                lhs = make(Node::Kind::Div, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (eat('-')) return make(Node::Kind::Neg, unary());
        if (eat('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (eat('^')) return make(Node::Kind::Pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s_.substr(pos_), &used);
        } catch (const std::exception&) {
            fail("bad number");
        }
        pos_ += used;
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Number;
        n->number = v;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        if (name == "x") return make(Node::Kind::VarX);
        if (name == "k" || name == "n") return make(Node::Kind::VarK);
        if (name == "i") return make(Node::Kind::ImagUnit);
        if (name == "pi") {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Number;
            n->number = std::numbers::pi;
            return n;
        }
        Node::Kind kind;
        if (name == "sin")
            kind = Node::Kind::Sin;
        else if (name == "cos")
            kind = Node::Kind::Cos;
        else if (name == "exp")
            kind = Node::Kind::Exp;
        else if (name == "L")
            kind = Node::Kind::Weight;
        else {
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        if (!eat('(')) fail("expected '(' after " + name);
        NodePtr arg = expr();
        if (!eat(')')) fail("expected ')'");
        return make(kind, arg);
    }
};

cplx eval_node(const Node& n, double x, double k, const WeightFunction& w) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::Number: return {n.number, 0.0};
        case K::VarX: return {x, 0.0};
        case K::VarK: return {k, 0.0};
        case K::ImagUnit: return {0.0, 1.0};
        case K::Add: return eval_node(*n.a, x, k, w) + eval_node(*n.b, x, k, w);
        case K::Sub: return eval_node(*n.a, x, k, w) - eval_node(*n.b, x, k, w);
        case K::Mul: return eval_node(*n.a, x, k, w) * eval_node(*n.b, x, k, w);
        case K::Div: return eval_node(*n.a, x, k, w) / eval_node(*n.b, x, k, w);
        case K::Pow: {
            const cplx base = eval_node(*n.a, x, k, w);
            const cplx expo = eval_node(*n.b, x, k, w);
            // integer powers by repeated multiplication: keeps k^2 exact
            if (expo.imag() == 0.0 && expo.real() == std::floor(expo.real()) &&
                std::abs(expo.real()) <= 64.0) {
                const long e = std::lround(expo.real());
                cplx acc(1.0, 0.0);
                for (long t = 0; t < std::labs(e); ++t) acc *= base;
                return e >= 0 ? acc : cplx(1.0, 0.0) / acc;
            }
            return std::pow(base, expo);
        }
        case K::Neg: return -eval_node(*n.a, x, k, w);
        case K::Sin: return std::sin(eval_node(*n.a, x, k, w));
        case K::Cos: return std::cos(eval_node(*n.a, x, k, w));
        case K::Exp: return std::exp(eval_node(*n.a, x, k, w));
        case K::Weight: {
            const cplx arg = eval_node(*n.a, x, k, w);
            if (std::abs(arg.imag()) > 1e-9)
                throw_config("expression: L() needs a real argument");
            const long kk = std::lround(arg.real());
            if (std::abs(arg.real() - static_cast<double>(kk)) > 1e-9)
                throw_config("expression: L() needs an integer argument");
            return {w(kk), 0.0};
        }
    }
    throw_config("expression: unreachable node");
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.root_ = Parser(text).run();
    e.text_ = text;
    return e;
}

cplx Expression::eval(double x, double k, const WeightFunction& w) const {
    if (!root_) throw_config("expression: empty");
    return eval_node(*root_, x, k, w);
}

Symbol expression_symbol(const std::string& expr, double order, double rho,
                         const WeightFunction& w, SymbolSide side, int x_resolution) {
    const Expression e = Expression::parse(expr);
    return Symbol(
        [e, w](double x, long k) { return e.eval(x, static_cast<double>(k), w); }, order, rho, w,
        side, KRange::all(), x_resolution, expr);
}

}  // namespace wpdo
