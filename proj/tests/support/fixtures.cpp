#include "support/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fuzzy/expr.hpp"

namespace fixtures {

using namespace fuzzy;
constexpr double pi = std::numbers::pi;

FuzzyNum from_text_pieces(const std::vector<std::string>& lines) {
    std::vector<MembershipPiece> pieces;
    for (const auto& line : lines) {
        std::istringstream in(line);
        MembershipPiece p;
        std::string lc, hc, mono;
        in >> p.lo >> lc >> p.hi >> hc >> mono;
        std::string rest;
        std::getline(in, rest);
        p.lo_closed = lc == "closed";
        p.hi_closed = hc == "closed";
        p.mono = *mono_from_string(mono);
        p.expr = parse_expr(rest, 'x');
        pieces.push_back(p);
    }
    return from_membership_pieces(pieces);
}

namespace {
std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}
}  // namespace

Example triangular() {
    Segment l{0, 1, parse_expr("a - 1", 'a'), Mono::increasing, std::nullopt};
    Segment r{0, 1, parse_expr("1 - a", 'a'), Mono::decreasing, std::nullopt};
    return {"eapc1m", FuzzyNum(CutCurve::left_continuous({l}), CutCurve::left_continuous({r})), [](double x) {
                if (x < -1 || x > 1) return 0.0;
                return x <= 0 ? x + 1 : 1 - x;
            }};
}

Example truncated_parabola() {
    double h = std::sqrt(0.5);
    Segment l0{0, 0.5, Expr::constant(-h), Mono::constant, std::nullopt};
    Segment l1{0.5, 1, parse_expr("(-1)*sqrt(1 - a)", 'a'), Mono::increasing, std::nullopt};
    Segment r0{0, 0.5, Expr::constant(h), Mono::constant, std::nullopt};
    Segment r1{0.5, 1, parse_expr("sqrt(1 - a)", 'a'), Mono::decreasing, std::nullopt};
    return {"eapc1w", FuzzyNum(CutCurve::left_continuous({l0, l1}), CutCurve::left_continuous({r0, r1})),
            [h](double x) { return std::fabs(x) <= h ? 1 - x * x : 0.0; }};
}

Example unsm() {
    FuzzyNum fz = from_text_pieces({
        "-2 closed -1 open increasing (-0.5)*(x^2 + 2*x)",
        "-1 closed -0.5 closed constant 0.5",
        "-0.5 open 0 closed increasing 2*x^2 + 2*x + 1",
        "0 open 0.5 open decreasing 2*x^2 - 2*x + 1",
        "0.5 closed 1 closed constant 0.5",
        "1 open 2 closed decreasing (-0.5)*(x^2 - 2*x)",
    });
    return {"unsm", fz, [](double t) {
                if (t < -2 || t > 2) return 0.0;
                if (t < -1) return -0.5 * (t * t + 2 * t);
                if (t <= -0.5) return 0.5;
                if (t <= 0) return 2 * t * t + 2 * t + 1;
                if (t < 0.5) return 2 * t * t - 2 * t + 1;
                if (t <= 1) return 0.5;
                return -0.5 * (t * t - 2 * t);
            }};
}

Example eapcn() {
    FuzzyNum fz = from_text_pieces({
        "-1 closed 0 open increasing 0.5*x + 0.5",
        "0 closed 0 closed constant 1",
        "0 open 1 closed decreasing (-0.5)*x + 0.5",
    });
    return {"eapcn", fz, [](double t) {
                if (t < -1 || t > 1) return 0.0;
                if (t == 0) return 1.0;
                return t < 0 ? 0.5 * t + 0.5 : -0.5 * t + 0.5;
            }};
}

Example eapnd() {
    FuzzyNum fz = from_text_pieces({
        "-0.5 closed 0 open increasing 0.5 + x",
        "0 closed 1 closed increasing 0.5 + 0.5*x",
        "1 open 2 closed decreasing 2 - x",
    });
    return {"eapnd", fz, [](double t) {
                if (t < -0.5 || t > 2) return 0.0;
                if (t < 0) return 0.5 + t;
                if (t <= 1) return 0.5 + 0.5 * t;
                return 2 - t;
            }};
}

Example eapnd_p() {
    double a = -pi / 2 - std::sqrt(0.5), b = -pi / 2, c = pi / 2, d = 1 + pi / 2;
    FuzzyNum fz = from_text_pieces({
        num(a) + " closed " + num(b) + " closed increasing 0.5 - (x + " + num(pi / 2) + ")^2",
        num(b) + " closed " + num(c) + " closed increasing 0.25*sin(x) + 0.75",
        num(c) + " closed " + num(d) + " closed decreasing 1 - (x - " + num(pi / 2) + ")^2",
    });
    return {"eapnd_p", fz, [=](double t) {
                if (t < a || t > d) return 0.0;
                if (t <= b) return 0.5 - (t + pi / 2) * (t + pi / 2);
                if (t <= c) return 0.25 * std::sin(t) + 0.75;
                return 1 - (t - pi / 2) * (t - pi / 2);
            }};
}

Example eapnc() {
    FuzzyNum fz = from_text_pieces({
        "1 closed 2 closed increasing x - 1",
        "2 closed 2.5 closed decreasing 3 - x",
        "2.5 open 2.8 closed decreasing 2.8 - x",
    });
    return {"eapnc", fz, [](double t) {
                if (t < 1 || t > 2.8) return 0.0;
                if (t <= 2) return t - 1;
                if (t <= 2.5) return 3 - t;
                return 2.8 - t;
            }};
}

Example eapnc_z() {
    double b = 0.3 * pi, c = 0.4 * pi, d = 0.4 * pi + std::sqrt(0.3);
    FuzzyNum fz = from_text_pieces({
        "-2 closed 0 closed increasing 1 - 0.25*x^2",
        "0 closed " + num(b) + " closed decreasing 0.25*cos(" + num(10.0 / 3) + "*x) + 0.75",
        num(b) + " closed " + num(c) + " closed decreasing 0.4 + 0.1*cos(10*(x - " + num(b) + "))",
        num(c) + " closed " + num(d) + " closed decreasing 0.3 - (x - " + num(c) + ")^2",
    });
    return {"eapnc_z", fz, [=](double t) {
                if (t < -2 || t > d) return 0.0;
                if (t <= 0) return 1 - t * t / 4;
                if (t <= b) return 0.25 * std::cos(10 * t / 3) + 0.75;
                if (t <= c) return 0.4 + 0.1 * std::cos(10 * (t - b));
                return 0.3 - (t - c) * (t - c);
            }};
}

Example parabola(double p) {
    Segment l{0, 1, (-p) * sqrt(Expr::constant(1) - Expr::variable()), Mono::increasing, std::nullopt};
    Segment r{0, 1, p * sqrt(Expr::constant(1) - Expr::variable()), Mono::decreasing, std::nullopt};
    return {"w" + num(p), FuzzyNum(CutCurve::left_continuous({l}), CutCurve::left_continuous({r})),
            [p](double t) { return std::fabs(t) <= p ? 1 - (t / p) * (t / p) : 0.0; }};
}

std::vector<Example> reference_numbers() { return {triangular(), unsm(), eapcn(), eapnd(), eapnc()}; }

std::vector<Example> all_examples() {
    return {triangular(), truncated_parabola(), unsm(), eapcn(), eapnd(), eapnd_p(), eapnc(), eapnc_z(), parabola(1),
            parabola(0.5)};
}

std::string path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".fz"; }

}  // namespace fixtures
