#include "drbsde/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "drbsde/errors.hpp"

namespace drbsde {

namespace {

enum class Op { number, var_t, var_b, add, sub, mul, neg, fmin, fmax, fabs, fexp, fcosh };

}  // namespace

struct Expression::Node {
    Op op = Op::number;
    double value = 0.0;
    std::shared_ptr<const Node> left, right;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool consume(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw InvalidArgumentError("expression '" + text + "': " + why + " at offset " +
                                   std::to_string(pos));
    }

    NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr, double v = 0.0) {
        auto n = std::make_shared<Expression::Node>();
        n->op = op;
        n->value = v;
        n->left = std::move(l);
        n->right = std::move(r);
        return n;
    }

    NodePtr parse_expr() {
        NodePtr node = parse_term();
        for (;;) {
            if (consume('+'))
                node = make(Op::add, node, parse_term());
            else if (consume('-'))
                node = make(Op::sub, node, parse_term());
            else
                return node;
        }
    }

    NodePtr parse_term() {
        NodePtr node = parse_factor();
        while (consume('*')) node = make(Op::mul, node, parse_factor());
        return node;
    }

    NodePtr parse_factor() {
        skip_ws();
        if (consume('-')) return make(Op::neg, parse_factor());
        if (consume('+')) return parse_factor();
        if (consume('(')) {
            NodePtr inner = parse_expr();
            if (!consume(')')) fail("missing ')'");
            return inner;
        }
        if (pos >= text.size()) fail("unexpected end of input");

        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(text.c_str() + pos, &end);
            if (end == text.c_str() + pos) fail("bad number");
            pos = static_cast<std::size_t>(end - text.c_str());
            return make(Op::number, nullptr, nullptr, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            const std::string word = text.substr(start, pos - start);
            if (word == "t") return make(Op::var_t);
            if (word == "b") return make(Op::var_b);

            Op fn;
            bool binary = false;
            if (word == "min") {
                fn = Op::fmin;
                binary = true;
            } else if (word == "max") {
                fn = Op::fmax;
                binary = true;
            } else if (word == "abs") {
                fn = Op::fabs;
            } else if (word == "exp") {
                fn = Op::fexp;
            } else if (word == "cosh") {
                fn = Op::fcosh;
            } else {
                fail("unknown identifier '" + word + "'");
            }
            if (!consume('(')) fail("expected '(' after '" + word + "'");
            NodePtr first = parse_expr();
            NodePtr second;
            if (binary) {
                if (!consume(',')) fail("expected ',' in '" + word + "'");
                second = parse_expr();
            }
            if (!consume(')')) fail("missing ')' after '" + word + "'");
            return make(fn, first, second);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

double eval_node(const Expression::Node& n, double t, double b) {
    switch (n.op) {
        case Op::number: return n.value;
        case Op::var_t: return t;
        case Op::var_b: return b;
        case Op::add: return eval_node(*n.left, t, b) + eval_node(*n.right, t, b);
        case Op::sub: return eval_node(*n.left, t, b) - eval_node(*n.right, t, b);
        case Op::mul: return eval_node(*n.left, t, b) * eval_node(*n.right, t, b);
        case Op::neg: return -eval_node(*n.left, t, b);
        case Op::fmin: return std::min(eval_node(*n.left, t, b), eval_node(*n.right, t, b));
        case Op::fmax: return std::max(eval_node(*n.left, t, b), eval_node(*n.right, t, b));
        case Op::fabs: return std::abs(eval_node(*n.left, t, b));
        case Op::fexp: return std::exp(eval_node(*n.left, t, b));
        case Op::fcosh: return std::cosh(eval_node(*n.left, t, b));
    }
    return 0.0;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Parser parser(text);
    Expression e;
    e.root_ = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input");
    e.text_ = text;
    return e;
}

double Expression::eval(double t, double b) const { return eval_node(*root_, t, b); }

EnvelopeFn Expression::as_function() const {
    auto root = root_;
    return [root](double t, double b) { return eval_node(*root, t, b); };
}

}  // namespace drbsde
