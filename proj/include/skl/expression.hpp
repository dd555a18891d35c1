#pragma once

// Small recursive-descent parser for target functions given on the command line.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | '+' unary | power
//   power  := atom ('^' unary)?          right associative
//   atom   := number | variable | '(' expr ')'

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skl/target.hpp"

namespace skl {

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Compiled expression over a fixed list of variable names.
class Expression {
public:
    using Node = std::function<double(const double*)>;

    static Expression parse(std::string_view text, std::vector<std::string> variables) {
        Parser p{text, 0, variables};
        Node root = p.expr();
        p.skip_ws();
        if (p.pos != text.size())
            throw ParseError("unexpected '" + std::string(1, text[p.pos]) + "' at position " + std::to_string(p.pos));
        return Expression(std::string(text), std::move(variables), std::move(root));
    }

    [[nodiscard]] double operator()(const double* values) const { return root_(values); }
    [[nodiscard]] const std::string& text() const noexcept { return text_; }

private:
    Expression(std::string text, std::vector<std::string> vars, Node root)
        : text_(std::move(text)), variables_(std::move(vars)), root_(std::move(root)) {}

    struct Parser {
        std::string_view s;
        std::size_t pos;
        const std::vector<std::string>& vars;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        Node expr() {
            Node lhs = term();
            for (;;) {
                if (eat('+')) {
                    lhs = [a = lhs, b = term()](const double* v) { return a(v) + b(v); };
                } else if (eat('-')) {
                    lhs = [a = lhs, b = term()](const double* v) { return a(v) - b(v); };
                } else {
                    return lhs;
                }
            }
        }

        Node term() {
            Node lhs = unary();
            for (;;) {
                if (eat('*')) {
                    lhs = [a = lhs, b = unary()](const double* v) { return a(v) * b(v); };
                } else if (eat('/')) {
                    lhs = [a = lhs, b = unary()](const double* v) { return a(v) / b(v); };
                } else {
                    return lhs;
                }
            }
        }

        Node unary() {
            if (eat('-')) return [a = unary()](const double* v) { return -a(v); };
            if (eat('+')) return unary();
            return power();
        }

        Node power() {
            Node base = atom();
            if (eat('^')) {
                Node exponent = unary();
                return [a = std::move(base), b = std::move(exponent)](const double* v) {
                    const double e = b(v);
                    const double x = a(v);
                    if (e == std::floor(e) && std::abs(e) <= 64) {
                        const double r = ipow(x, static_cast<int>(std::abs(e)));
                        return e < 0 ? 1.0 / r : r;
                    }
                    return std::pow(x, e);
                };
            }
            return base;
        }

        Node atom() {
            skip_ws();
            if (pos >= s.size()) throw ParseError("unexpected end of expression");
            if (eat('(')) {
                Node inner = expr();
                if (!eat(')')) throw ParseError("missing ')' at position " + std::to_string(pos));
                return inner;
            }
            const char c = s[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                const std::string rest(s.substr(pos));
                char* end = nullptr;
                const double value = std::strtod(rest.c_str(), &end);
                if (end == rest.c_str()) throw ParseError("bad number at position " + std::to_string(pos));
                pos += static_cast<std::size_t>(end - rest.c_str());
                return [value](const double*) { return value; };
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                const std::size_t start = pos;
                while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
                const std::string name(s.substr(start, pos - start));
                for (std::size_t i = 0; i < vars.size(); ++i)
                    if (vars[i] == name) return [i](const double* v) { return v[i]; };
                throw ParseError("unknown variable '" + name + "'");
            }
            throw ParseError("unexpected '" + std::string(1, c) + "' at position " + std::to_string(pos));
        }
    };

    std::string text_;
    std::vector<std::string> variables_;
    Node root_;
};

/// Resolve a univariate selector: `table1-poly`, `e<k>`, `const:<c>`, or an expression in y.
[[nodiscard]] inline TargetFunction resolve_function(const std::string& selector) {
    if (selector == "table1-poly") return functions::table1_poly();
    if (selector.rfind("const:", 0) == 0) return functions::constant(std::stod(selector.substr(6)));
    if (selector.size() >= 2 && selector[0] == 'e' &&
        selector.find_first_not_of("0123456789", 1) == std::string::npos)
        return functions::monomial(std::stoi(selector.substr(1)));
    auto e = std::make_shared<Expression>(Expression::parse(selector, {"y"}));
    return TargetFunction(selector, [e](double y) { return (*e)(&y); });
}

/// Resolve a bivariate selector: `fig3-poly`, `const:<c>`, or an expression in y1, y2.
[[nodiscard]] inline BivariateFunction resolve_bivariate(const std::string& selector) {
    if (selector == "fig3-poly") return functions::fig3_poly();
    if (selector.rfind("const:", 0) == 0) return functions::constant2(std::stod(selector.substr(6)));
    auto e = std::make_shared<Expression>(Expression::parse(selector, {"y1", "y2"}));
    return BivariateFunction(selector, [e](double a, double b) {
        const double v[2] = {a, b};
        return (*e)(v);
    });
}

} // namespace skl
