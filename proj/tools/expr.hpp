#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lgate/types.hpp"

namespace lgate::cli {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over one variable (p or t).
struct Expr {
    enum class Kind { constant, variable, add, sub, mul, div, neg, pow, exp };
    Kind kind = Kind::constant;
    double value = 0.0;         // constant value, or the literal exponent of pow
    std::vector<ExprPtr> args;  // operands in source order
};

bool operator==(const Expr& a, const Expr& b);

/// Syntax error with the byte offset where parsing stopped and the tokens
/// that would have been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail = {});
    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | factor
///   factor := base ('^' signed_number)?
///   base   := number | variable | '(' expr ')' | 'exp' '(' expr ')'
ExprPtr parse_expr(std::string_view text, std::string_view variable_name);

/// Evaluates at x. Real powers use the principal branch; integer powers are
/// exact products. Division by zero yields a non-finite value; a non-integer
/// power of zero throws DomainError.
Complex evaluate(const Expr& e, Complex x);

/// Fully parenthesised text that parses back to an identical tree.
std::string to_string(const Expr& e, std::string_view variable_name);

/// c * t^power * e^{-rate t}
struct ExpTerm {
    double coeff = 0.0;
    double power = 0.0;
    double rate = 0.0;
};

/// Rewrites e as a sum of ExpTerms (like terms merged), or nullopt when it
/// is not of that form (exp of a non-affine argument, division by a sum, ...).
std::optional<std::vector<ExpTerm>> as_exp_polynomial(const Expr& e);

/// TransformFunction wrapping an expression in p.
TransformFunction transform_from_expr(ExprPtr e, std::string label);

/// Closed-form Laplace transform of an exp-polynomial in t, together with a
/// declared exponential tail envelope. Requires rate > 0 and power > -1 for
/// every term; throws std::invalid_argument otherwise. No terms means f = 0.
struct TimeDomainInput {
    TimeFunction f;
    TransformFunction F;
};
TimeDomainInput laplace_of_exp_polynomial(const std::vector<ExpTerm>& terms, std::string label);

/// Tail envelope from a single-term expression such as "M*exp(-g*t)" or
/// "M*t^-rho". Throws std::invalid_argument for anything else.
TailEnvelope tail_from_expr(const Expr& e);

}  // namespace lgate::cli
