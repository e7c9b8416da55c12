#include "fuzzy/convolve.hpp"

#include <algorithm>
#include <cmath>

namespace fuzzy {

namespace {

Mono combine_mono(Mono a, Mono b) {
    if (a == Mono::constant) return b;
    return a;
}

CutCurve add_curves(const CutCurve& cu, const CutCurve& cv) {
    std::vector<double> b = cu.breakpoints();
    auto bv = cv.breakpoints();
    b.insert(b.end(), bv.begin(), bv.end());
    b.push_back(0.0);
    b.push_back(1.0);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());

    std::vector<Segment> segs;
    std::vector<double> pts;
    pts.push_back(cu(0.0) + cv(0.0));
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const Segment& su = cu.segments()[cu.segment_above(b[i])];
        const Segment& sv = cv.segments()[cv.segment_above(b[i])];
        Segment s;
        s.lo = b[i];
        s.hi = b[i + 1];
        s.expr = su.expr + sv.expr;
        s.mono = combine_mono(su.mono, sv.mono);
        // A constant partner only translates the abscissa.
        if (sv.mono == Mono::constant && su.level_of)
            s.level_of = su.level_of->substitute(Expr::variable() - sv.expr);
        else if (su.mono == Mono::constant && sv.level_of)
            s.level_of = sv.level_of->substitute(Expr::variable() - su.expr);
        segs.push_back(std::move(s));
        pts.push_back(cu(b[i + 1]) + cv(b[i + 1]));
    }
    return CutCurve(std::move(segs), std::move(pts));
}

CutCurve scale_curve(double r, const CutCurve& c) {
    std::vector<Segment> segs;
    for (const auto& s : c.segments()) {
        Segment t;
        t.lo = s.lo;
        t.hi = s.hi;
        t.expr = r * s.expr;
        t.mono = s.mono;
        if (r < 0 && s.mono != Mono::constant)
            t.mono = s.mono == Mono::increasing ? Mono::decreasing : Mono::increasing;
        if (s.level_of) t.level_of = s.level_of->substitute((1.0 / r) * Expr::variable());
        segs.push_back(std::move(t));
    }
    std::vector<double> pts;
    for (double p : c.point_values()) pts.push_back(r * p);
    return CutCurve(std::move(segs), std::move(pts));
}

}  // namespace

FuzzyNum convolve(const FuzzyNum& u, const FuzzyNum& v) {
    require_valid(u);
    require_valid(v);
    FuzzyNum w(add_curves(u.left(), v.left()), add_curves(u.right(), v.right()));
    require_valid(w);
    return w;
}

FuzzyNum scale(double r, const FuzzyNum& v) {
    if (r == 0.0) return crisp(0.0);
    if (r > 0) return FuzzyNum(scale_curve(r, v.left()), scale_curve(r, v.right()));
    return FuzzyNum(scale_curve(r, v.right()), scale_curve(r, v.left()));
}

double endpoint(const FuzzyNum& u, const EndpointSpec& spec) {
    const CutCurve& c = spec.branch == Side::left ? u.left() : u.right();
    return spec.kind == CutKind::cut ? c(spec.alpha) : c.right_limit(spec.alpha);
}

double endpoint_value(const FuzzyNum& u, const FuzzyNum& v, const EndpointSpec& spec) {
    return std::min(membership(u, endpoint(u, spec)), membership(v, endpoint(v, spec)));
}

Prediction predicted_derivative(const FuzzyNum& u, const FuzzyNum& v, const EndpointSpec& spec, Side side,
                                const Tolerances& tol) {
    const Side outer = spec.branch;
    const double sign = outer == Side::left ? 1.0 : -1.0;
    const double xu = endpoint(u, spec);
    const double xv = endpoint(v, spec);
    const double phi = symbolic_slope(u, xu, side).value;
    const double psi = symbolic_slope(v, xv, side).value;
    auto is_zero = [&](double s) { return std::fabs(s) <= tol.zero; };
    auto expected_sign = [&](double s) { return std::isfinite(s) && s * sign > tol.zero; };
    auto harmonic = [](double a, double b) { return 1.0 / (1.0 / a + 1.0 / b); };
    auto at_level = [&](double level) {
        EndpointSpec s = spec;
        s.alpha = level;
        return endpoint(u, s) + endpoint(v, s);
    };

    Prediction p;
    p.rule = "unpredicted";
    auto set = [&](double slope, double level, const char* rule) {
        p.applicable = true;
        p.slope = slope;
        p.level = level;
        p.x = at_level(level);
        p.rule = rule;
        return p;
    };

    if (side == outer) {
        p.level = spec.alpha;
        p.x = xu + xv;
        if (is_zero(phi) || is_zero(psi)) return set(0.0, spec.alpha, "zero");
        if (spec.kind == CutKind::strong) return p;
        auto outer_limit = [&](const FuzzyNum& f, double x) {
            return outer == Side::left ? membership_left_limit(f, x) : membership_right_limit(f, x);
        };
        if (outer_limit(v, xv) < spec.alpha - tol.level) return set(phi, spec.alpha, "dominance");
        if (outer_limit(u, xu) < spec.alpha - tol.level) return set(psi, spec.alpha, "dominance");
        if (expected_sign(phi) && expected_sign(psi)) return set(harmonic(phi, psi), spec.alpha, "harmonic");
        return p;
    }

    // Inner side: the statements refer to the level reached at the endpoints.
    const double bu = membership(u, xu);
    const double bv = membership(v, xv);
    if (std::fabs(bu - bv) <= tol.level) {
        double b = std::min(bu, bv);
        p.level = b;
        p.x = at_level(b);
        if (is_zero(phi) || is_zero(psi)) return set(0.0, b, "zero");
        if (spec.kind == CutKind::cut && expected_sign(phi) && expected_sign(psi))
            return set(harmonic(phi, psi), b, "harmonic");
        return p;
    }
    const bool u_lower = bu < bv;
    const double b = u_lower ? bu : bv;
    const double s = u_lower ? phi : psi;
    p.level = b;
    p.x = at_level(b);
    if (is_zero(s)) return set(0.0, b, "zero");
    if (spec.kind == CutKind::cut) return set(s, b, "dominance");
    return p;
}

}  // namespace fuzzy
