#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "poissonlab/mvf.hpp"

namespace poissonlab {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

class UnknownSymbol : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Expr {
    enum class Kind { Integer, ImagUnit, Symbol, Vector, AntiHol, Neg, Add, Sub, Mul, Div, Pow, Wedge };
    Kind kind;
    std::string text;  // integer digits or symbol name
    int exponent = 0;  // for Pow
    std::vector<std::shared_ptr<const Expr>> args;
    int line = 1, column = 1;
};
using ExprPtr = std::shared_ptr<const Expr>;

// Grammar, loosest binding first:
//   wedge   := sum ('^' sum)*
//   sum     := product (('+'|'-') product)*
//   product := unary (('*'|'/') unary)*
//   unary   := ('-'|'+') unary | power
//   power   := atom ('^' '-'? INT)?
//   atom    := INT | 'i' | IDENT | '@' IDENT | '~' IDENT | '(' wedge ')'
// A '^' followed by an (optionally negative) integer is a power, otherwise a wedge.
ExprPtr parse_expr(const std::string& src);

// Reserved coordinate names; an identifier in this list that is not a variable
// of the evaluation chart is an error rather than a parameter.
const std::vector<std::string>& reserved_chart_names();
// Chart made of the reserved names occurring in the sources, in canonical order.
Chart infer_chart(const std::vector<std::string>& sources, const std::string& name = "U");

FormedMultiVector eval_expr(const ExprPtr& e, const Chart& chart);
FormedMultiVector parse_field(const std::string& src, const Chart& chart);
LaurentPoly parse_poly(const std::string& src, const Chart& chart);
// Convenience for tests and bindings: chart inferred from the source.
FormedMultiVector parse_field(const std::string& src);
LaurentPoly parse_poly(const std::string& src);

std::string print_field(const FormedMultiVector& f);
std::string print_field(const MultiVector& m);

}  // namespace poissonlab
