#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzy {

// Immutable closed-form expression in a single variable.
//
// The variable is anonymous; printing chooses its letter ('a' for levels,
// 'x' for abscissae). Construction goes through the free functions below,
// which fold constants but never approximate.
class Expr {
public:
    enum class Kind {
        constant,
        variable,
        add,
        sub,
        scale,    // c * child
        product,
        power,    // child ^ (num/den), den in {1, 2}
        sqrt,
        sin,
        cos,
        asin,
        acos,
        inverse,  // numeric inverse of a monotone expression, applied to child
    };

    Expr();  // the constant 0
    static Expr constant(double c);
    static Expr variable();

    Kind kind() const;
    bool is_constant() const { return kind() == Kind::constant; }
    bool depends_on_variable() const;
    // Constant value, or the factor of a scale node.
    double coefficient() const;
    int power_num() const;
    int power_den() const;
    const std::vector<Expr>& children() const;

    double operator()(double t) const;
    Expr derivative() const;
    // this(inner(t))
    Expr substitute(const Expr& inner) const;

    // False when an internal numeric-inverse node is present.
    bool printable() const;
    std::string to_string(char var) const;

    // Inverse nodes: the function being inverted, its domain and direction.
    struct InverseData;
    const InverseData& inverse_data() const;

    bool same_as(const Expr& other) const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n);
    std::shared_ptr<const Node> node_;

    friend Expr make_node(Kind, double, int, int, std::vector<Expr>);
    friend Expr numeric_inverse(const Expr&, double, double);
};

struct Expr::InverseData {
    Expr fn;
    Expr fn_slope;
    double lo = 0, hi = 0;
    bool increasing = true;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator*(double c, const Expr& e);
Expr pow(const Expr& base, int num, int den = 1);
Expr sqrt(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr asin(const Expr& e);
Expr acos(const Expr& e);

// Inverse of f restricted to [lo, hi], where f is strictly monotone there.
// The result is evaluated by safeguarded Newton iteration.
Expr numeric_inverse(const Expr& f, double lo, double hi);

// Closed-form inverse of f on [lo, hi] when it exists in the grammar.
std::optional<Expr> symbolic_inverse(const Expr& f, double lo, double hi);

// Either of the above, preferring the closed form.
Expr invert(const Expr& f, double lo, double hi);

// Root of f(t) = y on [lo, hi] for monotone f; clamps to the bracket.
double solve_monotone(const Expr& f, double lo, double hi, double y);

// Parses the expression grammar with the given variable letter.
// Throws ParseError with a 1-based column (line 0).
Expr parse_expr(std::string_view text, char var);

// Shortest round-trip decimal form of a double.
std::string format_number(double v);

}  // namespace fuzzy
