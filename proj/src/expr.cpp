#include "fuzzy/expr.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fuzzy/errors.hpp"

namespace fuzzy {

namespace {
constexpr double kDomainSlack = 1e-12;
constexpr double kPi = std::numbers::pi;
}  // namespace

struct Expr::Node {
    Kind kind = Kind::constant;
    double c = 0.0;
    int num = 1;
    int den = 1;
    std::vector<Expr> kids;
    std::shared_ptr<const InverseData> inv;
};

Expr::Expr() : node_(std::make_shared<Node>()) {}
Expr::Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Expr make_node(Expr::Kind k, double c, int num, int den, std::vector<Expr> kids) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->c = c;
    n->num = num;
    n->den = den;
    n->kids = std::move(kids);
    return Expr(std::move(n));
}

Expr Expr::constant(double c) { return make_node(Kind::constant, c, 1, 1, {}); }
Expr Expr::variable() { return make_node(Kind::variable, 0.0, 1, 1, {}); }

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::coefficient() const { return node_->c; }
int Expr::power_num() const { return node_->num; }
int Expr::power_den() const { return node_->den; }
const std::vector<Expr>& Expr::children() const { return node_->kids; }

const Expr::InverseData& Expr::inverse_data() const {
    if (!node_->inv) throw std::logic_error("not an inverse node");
    return *node_->inv;
}

bool Expr::depends_on_variable() const {
    if (kind() == Kind::variable) return true;
    for (const auto& k : children())
        if (k.depends_on_variable()) return true;
    return false;
}

bool Expr::printable() const {
    if (kind() == Kind::inverse) return false;
    if (kind() == Kind::constant && !std::isfinite(coefficient())) return false;
    if (kind() == Kind::scale && !std::isfinite(coefficient())) return false;
    for (const auto& k : children())
        if (!k.printable()) return false;
    return true;
}

namespace {

double clamp_nonneg(double v) { return (v < 0 && v > -kDomainSlack) ? 0.0 : v; }

double clamp_unit(double v) {
    if (v > 1 && v < 1 + kDomainSlack) return 1.0;
    if (v < -1 && v > -1 - kDomainSlack) return -1.0;
    return v;
}

double eval_power(double b, int num, int den) {
    if (den == 2) {
        double s = std::sqrt(clamp_nonneg(b));
        return num == 1 ? s : std::pow(s, num);
    }
    return std::pow(b, num);
}

}  // namespace

double Expr::operator()(double t) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::constant: return n.c;
        case Kind::variable: return t;
        case Kind::add: return n.kids[0](t) + n.kids[1](t);
        case Kind::sub: return n.kids[0](t) - n.kids[1](t);
        case Kind::scale: return n.c * n.kids[0](t);
        case Kind::product: return n.kids[0](t) * n.kids[1](t);
        case Kind::power: return eval_power(n.kids[0](t), n.num, n.den);
        case Kind::sqrt: return std::sqrt(clamp_nonneg(n.kids[0](t)));
        case Kind::sin: return std::sin(n.kids[0](t));
        case Kind::cos: return std::cos(n.kids[0](t));
        case Kind::asin: return std::asin(clamp_unit(n.kids[0](t)));
        case Kind::acos: return std::acos(clamp_unit(n.kids[0](t)));
        case Kind::inverse:
            return solve_monotone(n.inv->fn, n.inv->lo, n.inv->hi, n.kids[0](t));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.coefficient() + b.coefficient());
    if (a.is_constant() && a.coefficient() == 0) return b;
    if (b.is_constant() && b.coefficient() == 0) return a;
    return make_node(Expr::Kind::add, 0, 1, 1, {a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.coefficient() - b.coefficient());
    if (b.is_constant() && b.coefficient() == 0) return a;
    if (a.is_constant() && a.coefficient() == 0) return -1.0 * b;
    return make_node(Expr::Kind::sub, 0, 1, 1, {a, b});
}

Expr operator-(const Expr& a) { return -1.0 * a; }

Expr operator*(double c, const Expr& e) {
    if (c == 1) return e;
    if (e.is_constant()) return Expr::constant(c * e.coefficient());
    if (c == 0) return Expr::constant(0);
    if (e.kind() == Expr::Kind::scale) return make_node(Expr::Kind::scale, c * e.coefficient(), 1, 1, {e.children()[0]});
    return make_node(Expr::Kind::scale, c, 1, 1, {e});
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant()) return a.coefficient() * b;
    if (b.is_constant()) return b.coefficient() * a;
    return make_node(Expr::Kind::product, 0, 1, 1, {a, b});
}

Expr pow(const Expr& base, int num, int den) {
    if (den != 1 && den != 2) throw std::invalid_argument("power denominator must be 1 or 2");
    if (den == 2 && num % 2 == 0) {
        num /= 2;
        den = 1;
    }
    if (num == 0) return Expr::constant(1);
    if (num == 1 && den == 1) return base;
    if (base.is_constant()) return Expr::constant(eval_power(base.coefficient(), num, den));
    return make_node(Expr::Kind::power, 0, num, den, {base});
}

Expr sqrt(const Expr& e) {
    if (e.is_constant()) return Expr::constant(std::sqrt(clamp_nonneg(e.coefficient())));
    return make_node(Expr::Kind::sqrt, 0, 1, 1, {e});
}

Expr sin(const Expr& e) {
    if (e.is_constant()) return Expr::constant(std::sin(e.coefficient()));
    return make_node(Expr::Kind::sin, 0, 1, 1, {e});
}

Expr cos(const Expr& e) {
    if (e.is_constant()) return Expr::constant(std::cos(e.coefficient()));
    return make_node(Expr::Kind::cos, 0, 1, 1, {e});
}

Expr asin(const Expr& e) {
    if (e.is_constant()) return Expr::constant(std::asin(clamp_unit(e.coefficient())));
    return make_node(Expr::Kind::asin, 0, 1, 1, {e});
}

Expr acos(const Expr& e) {
    if (e.is_constant()) return Expr::constant(std::acos(clamp_unit(e.coefficient())));
    return make_node(Expr::Kind::acos, 0, 1, 1, {e});
}

Expr numeric_inverse(const Expr& f, double lo, double hi) {
    auto data = std::make_shared<Expr::InverseData>();
    data->fn = f;
    data->fn_slope = f.derivative();
    data->lo = lo;
    data->hi = hi;
    data->increasing = f(hi) >= f(lo);
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::inverse;
    n->kids = {Expr::variable()};
    n->inv = std::move(data);
    return Expr(std::move(n));
}

Expr Expr::substitute(const Expr& inner) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::constant: return *this;
        case Kind::variable: return inner;
        case Kind::add: return n.kids[0].substitute(inner) + n.kids[1].substitute(inner);
        case Kind::sub: return n.kids[0].substitute(inner) - n.kids[1].substitute(inner);
        case Kind::scale: return n.c * n.kids[0].substitute(inner);
        case Kind::product: return n.kids[0].substitute(inner) * n.kids[1].substitute(inner);
        case Kind::power: return fuzzy::pow(n.kids[0].substitute(inner), n.num, n.den);
        case Kind::sqrt: return fuzzy::sqrt(n.kids[0].substitute(inner));
        case Kind::sin: return fuzzy::sin(n.kids[0].substitute(inner));
        case Kind::cos: return fuzzy::cos(n.kids[0].substitute(inner));
        case Kind::asin: return fuzzy::asin(n.kids[0].substitute(inner));
        case Kind::acos: return fuzzy::acos(n.kids[0].substitute(inner));
        case Kind::inverse: {
            auto copy = std::make_shared<Node>(n);
            copy->kids = {n.kids[0].substitute(inner)};
            return Expr(std::move(copy));
        }
    }
    return *this;
}

Expr Expr::derivative() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::constant: return constant(0);
        case Kind::variable: return constant(1);
        case Kind::add: return n.kids[0].derivative() + n.kids[1].derivative();
        case Kind::sub: return n.kids[0].derivative() - n.kids[1].derivative();
        case Kind::scale: return n.c * n.kids[0].derivative();
        case Kind::product:
            return n.kids[0].derivative() * n.kids[1] + n.kids[0] * n.kids[1].derivative();
        case Kind::power: {
            double factor = static_cast<double>(n.num) / n.den;
            return (factor * fuzzy::pow(n.kids[0], n.num - n.den, n.den)) * n.kids[0].derivative();
        }
        case Kind::sqrt:
            return (0.5 * fuzzy::pow(n.kids[0], -1, 2)) * n.kids[0].derivative();
        case Kind::sin: return fuzzy::cos(n.kids[0]) * n.kids[0].derivative();
        case Kind::cos: return (-1.0 * fuzzy::sin(n.kids[0])) * n.kids[0].derivative();
        case Kind::asin:
            return fuzzy::pow(constant(1) - fuzzy::pow(n.kids[0], 2), -1, 2) * n.kids[0].derivative();
        case Kind::acos:
            return (-1.0 * fuzzy::pow(constant(1) - fuzzy::pow(n.kids[0], 2), -1, 2)) *
                   n.kids[0].derivative();
        case Kind::inverse: {
            Expr self_at_var = *this;
            Expr outer = fuzzy::pow(n.inv->fn_slope.substitute(self_at_var), -1);
            return outer * n.kids[0].derivative();
        }
    }
    return constant(0);
}

bool Expr::same_as(const Expr& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind()) return false;
    const Node& a = *node_;
    const Node& b = *o.node_;
    if (a.kind == Kind::constant || a.kind == Kind::scale) {
        if (std::bit_cast<std::uint64_t>(a.c) != std::bit_cast<std::uint64_t>(b.c)) return false;
    }
    if (a.num != b.num || a.den != b.den || a.kids.size() != b.kids.size()) return false;
    if (a.kind == Kind::inverse) {
        if (a.inv->lo != b.inv->lo || a.inv->hi != b.inv->hi || !a.inv->fn.same_as(b.inv->fn)) return false;
    }
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!a.kids[i].same_as(b.kids[i])) return false;
    return true;
}

// ---------------------------------------------------------------- printing

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

namespace {

bool is_sum(const Expr& e) { return e.kind() == Expr::Kind::add || e.kind() == Expr::Kind::sub; }
bool is_term(const Expr& e) {
    return e.kind() == Expr::Kind::product || e.kind() == Expr::Kind::scale;
}

std::string print(const Expr& e, char var);

std::string wrap(const std::string& s) { return "(" + s + ")"; }

std::string print_constant(double c) {
    if (!std::isfinite(c)) throw std::logic_error("non-finite constant has no text form");
    if (std::signbit(c)) return wrap(format_number(c));
    return format_number(c);
}

std::string print(const Expr& e, char var) {
    using K = Expr::Kind;
    const auto& k = e.children();
    switch (e.kind()) {
        case K::constant: return print_constant(e.coefficient());
        case K::variable: return std::string(1, var);
        case K::add: {
            std::string r = print(k[1], var);
            return print(k[0], var) + " + " + (is_sum(k[1]) ? wrap(r) : r);
        }
        case K::sub: {
            std::string r = print(k[1], var);
            return print(k[0], var) + " - " + (is_sum(k[1]) ? wrap(r) : r);
        }
        case K::scale: {
            std::string r = print(k[0], var);
            return print_constant(e.coefficient()) + "*" + (is_sum(k[0]) || is_term(k[0]) ? wrap(r) : r);
        }
        case K::product: {
            std::string l = print(k[0], var);
            std::string r = print(k[1], var);
            return (is_sum(k[0]) ? wrap(l) : l) + "*" + (is_sum(k[1]) || is_term(k[1]) ? wrap(r) : r);
        }
        case K::power: {
            std::string b = print(k[0], var);
            bool atomic = k[0].kind() == K::variable || k[0].kind() == K::sqrt || k[0].kind() == K::sin ||
                          k[0].kind() == K::cos || k[0].kind() == K::asin || k[0].kind() == K::acos;
            std::string ex;
            if (e.power_den() == 1 && e.power_num() >= 0)
                ex = std::to_string(e.power_num());
            else if (e.power_den() == 1)
                ex = wrap(std::to_string(e.power_num()));
            else
                ex = wrap(std::to_string(e.power_num()) + "/" + std::to_string(e.power_den()));
            return (atomic ? b : wrap(b)) + "^" + ex;
        }
        case K::sqrt: return "sqrt(" + print(k[0], var) + ")";
        case K::sin: return "sin(" + print(k[0], var) + ")";
        case K::cos: return "cos(" + print(k[0], var) + ")";
        case K::asin: return "asin(" + print(k[0], var) + ")";
        case K::acos: return "acos(" + print(k[0], var) + ")";
        case K::inverse: throw std::logic_error("numeric inverse has no text form");
    }
    return {};
}

}  // namespace

std::string Expr::to_string(char var) const { return print(*this, var); }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(std::string_view s, char var) : s_(s), var_(var) {}

    Expr run() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    char var_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(0, static_cast<int>(pos_) + 1, msg);
    }

    void skip() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expr() {
        Expr acc = term();
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Expr term() {
        Expr acc = power();
        while (eat('*')) acc = acc * power();
        return acc;
    }

    Expr power() {
        Expr base = atom();
        while (eat('^')) {
            skip();
            bool paren = eat('(');
            bool neg = eat('-');
            int num = integer();
            int den = 1;
            if (paren && eat('/')) den = integer();
            if (paren) expect(')');
            if (den != 1 && den != 2) fail("power denominator must be 1 or 2");
            base = fuzzy::pow(base, neg ? -num : num, den);
        }
        return base;
    }

    int integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        int v = 0;
        std::from_chars(s_.data() + start, s_.data() + pos_, v);
        return v;
    }

    Expr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '-') {
            ++pos_;
            return -power();
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string_view id = s_.substr(start, pos_ - start);
            if (id.size() == 1 && id[0] == var_) return Expr::variable();
            Expr (*fn)(const Expr&) = nullptr;
            if (id == "sqrt") fn = &fuzzy::sqrt;
            else if (id == "sin") fn = &fuzzy::sin;
            else if (id == "cos") fn = &fuzzy::cos;
            else if (id == "asin") fn = &fuzzy::asin;
            else if (id == "acos") fn = &fuzzy::acos;
            if (!fn) {
                pos_ = start;
                fail("unknown identifier '" + std::string(id) + "'");
            }
            expect('(');
            Expr arg = expr();
            expect(')');
            return fn(arg);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Expr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        double v = 0;
        auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (res.ec != std::errc() || res.ptr != s_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return Expr::constant(v);
    }
};

}  // namespace

Expr parse_expr(std::string_view text, char var) { return Parser(text, var).run(); }

// ---------------------------------------------------------------- inversion

double solve_monotone(const Expr& f, double lo, double hi, double y) {
    double flo = f(lo), fhi = f(hi);
    bool inc = fhi >= flo;
    if (inc ? y <= flo : y >= flo) return lo;
    if (inc ? y >= fhi : y <= fhi) return hi;
    // g(t) = f(t) - y changes sign across [a, b]; sign convention normalised to increasing.
    double sgn = inc ? 1.0 : -1.0;
    double a = lo, b = hi;
    double x = lo + (hi - lo) * (y - flo) / (fhi - flo);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    Expr slope;
    bool have_slope = false;
    for (int it = 0; it < 200; ++it) {
        double g = sgn * (f(x) - y);
        if (g == 0) return x;
        if (g < 0)
            a = x;
        else
            b = x;
        if (b - a <= 2 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x))) break;
        if (!have_slope) {
            slope = f.derivative();
            have_slope = true;
        }
        double d = sgn * slope(x);
        double next = (std::isfinite(d) && d != 0) ? x - g / d : std::numeric_limits<double>::quiet_NaN();
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (next == x) break;
        x = next;
    }
    return x;
}

namespace {

using Poly = std::array<double, 3>;  // c0 + c1 t + c2 t^2

std::optional<Poly> as_polynomial(const Expr& e) {
    using K = Expr::Kind;
    const auto& k = e.children();
    switch (e.kind()) {
        case K::constant: return Poly{e.coefficient(), 0, 0};
        case K::variable: return Poly{0, 1, 0};
        case K::add:
        case K::sub: {
            auto a = as_polynomial(k[0]);
            auto b = as_polynomial(k[1]);
            if (!a || !b) return std::nullopt;
            double s = e.kind() == K::add ? 1.0 : -1.0;
            return Poly{(*a)[0] + s * (*b)[0], (*a)[1] + s * (*b)[1], (*a)[2] + s * (*b)[2]};
        }
        case K::scale: {
            auto a = as_polynomial(k[0]);
            if (!a) return std::nullopt;
            double c = e.coefficient();
            return Poly{c * (*a)[0], c * (*a)[1], c * (*a)[2]};
        }
        case K::product: {
            auto a = as_polynomial(k[0]);
            auto b = as_polynomial(k[1]);
            if (!a || !b) return std::nullopt;
            if (((*a)[2] != 0 && ((*b)[1] != 0 || (*b)[2] != 0)) || ((*b)[2] != 0 && (*a)[1] != 0))
                return std::nullopt;
            return Poly{(*a)[0] * (*b)[0], (*a)[0] * (*b)[1] + (*a)[1] * (*b)[0],
                        (*a)[0] * (*b)[2] + (*a)[1] * (*b)[1] + (*a)[2] * (*b)[0]};
        }
        case K::power: {
            if (e.power_den() != 1 || e.power_num() != 2) return std::nullopt;
            auto a = as_polynomial(k[0]);
            if (!a || (*a)[2] != 0) return std::nullopt;
            return Poly{(*a)[0] * (*a)[0], 2 * (*a)[0] * (*a)[1], (*a)[1] * (*a)[1]};
        }
        default: return std::nullopt;
    }
}

// Given e(t) = y on t in [lo, hi], express t through y (an Expr in the variable).
std::optional<Expr> peel(const Expr& e, const Expr& y, double lo, double hi);

std::optional<Expr> solve_polynomial(const Expr& e, const Expr& y, double lo, double hi) {
    auto p = as_polynomial(e);
    if (!p) return std::nullopt;
    auto [c0, c1, c2] = *p;
    if (c2 == 0) {
        if (c1 == 0) return std::nullopt;
        return (1.0 / c1) * (y - Expr::constant(c0));
    }
    // t = (-c1 +- sqrt(c1^2 - 4 c2 (c0 - y))) / (2 c2)
    Expr disc = Expr::constant(c1 * c1 - 4 * c2 * c0) + (4 * c2) * y;
    double tm = 0.5 * (lo + hi);
    double ym = e(tm);
    double dm = std::sqrt(std::max(0.0, c1 * c1 - 4 * c2 * (c0 - ym)));
    double plus = (-c1 + dm) / (2 * c2);
    double minus = (-c1 - dm) / (2 * c2);
    double s = std::fabs(plus - tm) <= std::fabs(minus - tm) ? 1.0 : -1.0;
    return (1.0 / (2 * c2)) * (Expr::constant(-c1) + s * fuzzy::sqrt(disc));
}

bool within(double v, double a, double b) {
    double slack = 1e-9 * (1 + std::max(std::fabs(a), std::fabs(b)));
    return v >= std::min(a, b) - slack && v <= std::max(a, b) + slack;
}

std::optional<Expr> peel(const Expr& e, const Expr& y, double lo, double hi) {
    using K = Expr::Kind;
    const auto& k = e.children();
    double tm = 0.5 * (lo + hi);
    switch (e.kind()) {
        case K::variable: return y;
        case K::constant: return std::nullopt;
        case K::add:
            if (!k[1].depends_on_variable()) return peel(k[0], y - k[1], lo, hi);
            if (!k[0].depends_on_variable()) return peel(k[1], y - k[0], lo, hi);
            break;
        case K::sub:
            if (!k[1].depends_on_variable()) return peel(k[0], y + k[1], lo, hi);
            if (!k[0].depends_on_variable()) return peel(k[1], k[0] - y, lo, hi);
            break;
        case K::scale: return peel(k[0], (1.0 / e.coefficient()) * y, lo, hi);
        case K::power: {
            int n = e.power_num(), d = e.power_den();
            double s = k[0](tm) < 0 ? -1.0 : 1.0;
            if (n == 2 && d == 1) return peel(k[0], s * fuzzy::sqrt(y), lo, hi);
            if (n == 1 && d == 2) return peel(k[0], fuzzy::pow(y, 2), lo, hi);
            if (n == -1 && d == 1) return peel(k[0], fuzzy::pow(y, -1), lo, hi);
            if (n == -2 && d == 1) return peel(k[0], s * fuzzy::pow(y, -1, 2), lo, hi);
            if (n == -1 && d == 2) return peel(k[0], fuzzy::pow(y, -2), lo, hi);
            break;
        }
        case K::sqrt: return peel(k[0], fuzzy::pow(y, 2), lo, hi);
        case K::sin: {
            double m = k[0](tm);
            double kk = std::round(m / kPi);
            double a = k[0](lo), b = k[0](hi);
            if (!within(a, kk * kPi - kPi / 2, kk * kPi + kPi / 2) ||
                !within(b, kk * kPi - kPi / 2, kk * kPi + kPi / 2))
                return std::nullopt;
            bool even = std::fmod(std::fabs(kk), 2.0) == 0;
            Expr base = even ? Expr::constant(kk * kPi) + fuzzy::asin(y) : Expr::constant(kk * kPi) - fuzzy::asin(y);
            return peel(k[0], base, lo, hi);
        }
        case K::cos: {
            double m = k[0](tm);
            double kk = std::floor(m / kPi);
            double a = k[0](lo), b = k[0](hi);
            if (!within(a, kk * kPi, (kk + 1) * kPi) || !within(b, kk * kPi, (kk + 1) * kPi)) return std::nullopt;
            bool even = std::fmod(std::fabs(kk), 2.0) == 0;
            Expr base = even ? Expr::constant(kk * kPi) + fuzzy::acos(y)
                             : Expr::constant((kk + 1) * kPi) - fuzzy::acos(y);
            return peel(k[0], base, lo, hi);
        }
        case K::asin: return peel(k[0], fuzzy::sin(y), lo, hi);
        case K::acos: return peel(k[0], fuzzy::cos(y), lo, hi);
        default: break;
    }
    return solve_polynomial(e, y, lo, hi);
}

}  // namespace

std::optional<Expr> symbolic_inverse(const Expr& f, double lo, double hi) {
    auto g = peel(f, Expr::variable(), lo, hi);
    if (!g) return std::nullopt;
    double flo = f(lo), fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi) || flo == fhi) return std::nullopt;
    double span = std::max(1.0, std::fabs(hi - lo));
    for (int i = 0; i <= 16; ++i) {
        double y = flo + (fhi - flo) * i / 16.0;
        if (i == 16) y = fhi;
        double t = (*g)(y);
        double expect = i == 0 ? lo : (i == 16 ? hi : solve_monotone(f, lo, hi, y));
        if (!std::isfinite(t) || std::fabs(t - expect) > 1e-9 * span) return std::nullopt;
    }
    return g;
}

Expr invert(const Expr& f, double lo, double hi) {
    if (auto g = symbolic_inverse(f, lo, hi)) return *g;
    return numeric_inverse(f, lo, hi);
}

}  // namespace fuzzy
