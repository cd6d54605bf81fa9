#pragma once

//
// A small evaluated (not compiled) expression language for symbols given on
// the command line or in config files:
//
//   variables  x, k        constants  numbers, pi, i
//   functions  sin cos exp L    (L(k) evaluates the attached weight)
//   operators  + - * / ^   with usual precedence, ^ binds tighter
//
// Example: "(2+sin(x))*L(k)^2". Parse errors carry the offending position.
//

#include <memory>
#include <string>

#include "wpdo/symbols.hpp"

namespace wpdo {

class Expression {
public:
    static Expression parse(const std::string& text);

    cplx eval(double x, double k, const WeightFunction& w) const;

    const std::string& text() const { return text_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

/// Symbol backed by an expression, with declared order/rho and side.
Symbol expression_symbol(const std::string& expr, double order, double rho,
                         const WeightFunction& w, SymbolSide side = SymbolSide::Torus,
                         int x_resolution = 64);

}  // namespace wpdo
