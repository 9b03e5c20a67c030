#pragma once

#include <memory>
#include <string>

#include "drbsde/generator.hpp"

namespace drbsde {

/// Closed-form expressions in the variables t and b, restricted to a small
/// auditable grammar: numeric literals, t, b, unary minus, + - *, and the
/// functions min(,) max(,) abs() exp() cosh(). No division, no user code.
class Expression {
public:
    static Expression parse(const std::string& text);  // throws InvalidArgumentError

    double eval(double t, double b) const;
    EnvelopeFn as_function() const;
    const std::string& text() const { return text_; }

    struct Node;  // exposed for the parser implementation

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace drbsde
