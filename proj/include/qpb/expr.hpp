#pragma once

#include <memory>
#include <variant>

#include "qpb/fodc.hpp"

namespace qpb {

/// Parsed expression tree for the CLI grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' exponent)?
///   atom   := integer | 'q' | identifier | '(' expr ')' | 'd' '(' expr ')'
///   exponent := integer | '(' integer '/' '2' ')'
struct ExprNode {
    enum class Kind { Number, Q, Identifier, Add, Sub, Mul, Div, Neg, Pow, Diff };
    Kind kind;
    long number = 0;
    std::string name;
    int power = 1;
    bool halfPower = false;  // q^(k/2)
    std::vector<std::shared_ptr<ExprNode>> children;
};

using ExprPtr = std::shared_ptr<ExprNode>;

/// Parses the expression text; throws ParseError with a 1-based column.
ExprPtr parseExpr(const std::string& text);

/// Evaluation target: a presented algebra, optionally with a calculus whose
/// basis forms are addressable as w1..w4 (or wb3/wb4, e1..).
struct Space {
    std::string name;
    PresPtr algebra;
    CalcPtr calculus;  // may be null
};

/// A value is a scalar, an algebra element, or a one-form.
using Value = std::variant<RatQ, Element, OneForm>;

Value evaluate(const ExprPtr& e, const Space& space);

std::string renderValue(const Value& v);

}  // namespace qpb
