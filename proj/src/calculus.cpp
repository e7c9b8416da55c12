#include "fuzzy/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "fuzzy/errors.hpp"

namespace fuzzy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kJumpTol = 1e-12;
constexpr double kSnapLevel = 1e-9;

double x_tol(double x) { return 1e-10 * (1.0 + std::fabs(x)); }

// Derivative of a segment expression at alpha, approached from inside the segment.
double one_sided_derivative(const Segment& s, double alpha, bool from_below) {
    Expr d = s.expr.derivative();
    double v = d(alpha);
    for (double delta = 1e-13; std::isnan(v) && delta <= 1e-8; delta *= 10) {
        double a = from_below ? alpha - delta : alpha + delta;
        a = std::clamp(a, s.lo, s.hi);
        v = d(a);
    }
    return v;
}

double slope_from(double d, double sign) {
    if (std::isnan(d)) return d;
    if (d == 0) return sign * kInf;
    if (std::isinf(d)) return 0.0;
    return 1.0 / d;
}

// Snaps a computed level onto a breakpoint when the curve value there hits x.
template <class ValueAt>
double snap_level(const CutCurve& c, double m, double x, ValueAt value_at) {
    for (double b : c.breakpoints()) {
        if (std::fabs(m - b) <= kSnapLevel && std::fabs(value_at(b) - x) <= x_tol(x)) return b;
    }
    if (std::fabs(1.0 - m) <= kSnapLevel) return 1.0;
    return m;
}

}  // namespace

bool ExtendedSlope::finite() const { return std::isfinite(value); }

ExtendedSlope symbolic_slope(const FuzzyNum& fz, double x, Side side) {
    Interval sup = fz.support();
    Interval core = fz.core();
    if (!(x >= sup.lo && x <= sup.hi)) throw DomainError("abscissa " + format_number(x) + " outside the support");
    double u = membership(fz, x);
    ExtendedSlope r{0.0, side};
    if (side == Side::left) {
        double lim = membership_left_limit(fz, x);
        if (u - lim > kJumpTol) return r.value = kInf, r;
        if (lim - u > kJumpTol) return r.value = -kInf, r;
        if (x <= sup.lo) return r;
        if (x > core.lo && x <= core.hi) return r;
        if (x <= core.lo) {
            const CutCurve& c = fz.left();
            if (c(u) < x - x_tol(x)) return r;  // inside a plateau
            double m = snap_level(c, u, x, [&](double b) { return c(b); });
            const Segment& s = c.segments()[c.segment_below(m)];
            if (s.mono == Mono::constant) return r.value = kInf, r;
            r.value = slope_from(one_sided_derivative(s, m, true), 1.0);
            return r;
        }
        const CutCurve& c = fz.right();
        if (c.right_limit(u) < x - x_tol(x)) return r;
        double m = snap_level(c, u, x, [&](double b) { return c.right_limit(b); });
        if (m >= 1.0) return r;
        const Segment& s = c.segments()[c.segment_above(m)];
        if (s.mono == Mono::constant) return r.value = kInf, r;
        r.value = slope_from(one_sided_derivative(s, m, false), -1.0);
        return r;
    }
    double lim = membership_right_limit(fz, x);
    if (u - lim > kJumpTol) return r.value = -kInf, r;
    if (lim - u > kJumpTol) return r.value = kInf, r;
    if (x >= sup.hi) return r;
    if (x >= core.lo && x < core.hi) return r;
    if (x < core.lo) {
        const CutCurve& c = fz.left();
        if (c.right_limit(u) > x + x_tol(x)) return r;
        double m = snap_level(c, u, x, [&](double b) { return c.right_limit(b); });
        if (m >= 1.0) return r;
        const Segment& s = c.segments()[c.segment_above(m)];
        if (s.mono == Mono::constant) return r.value = -kInf, r;
        r.value = slope_from(one_sided_derivative(s, m, false), 1.0);
        return r;
    }
    const CutCurve& c = fz.right();
    if (c(u) > x + x_tol(x)) return r;
    double m = snap_level(c, u, x, [&](double b) { return c(b); });
    const Segment& s = c.segments()[c.segment_below(m)];
    if (s.mono == Mono::constant) return r.value = -kInf, r;
    r.value = slope_from(one_sided_derivative(s, m, true), -1.0);
    return r;
}

ExtendedSlope left_deriv(const FuzzyNum& fz, double x) { return symbolic_slope(fz, x, Side::left); }
ExtendedSlope right_deriv(const FuzzyNum& fz, double x) { return symbolic_slope(fz, x, Side::right); }

std::vector<double> junctions(const FuzzyNum& fz) {
    std::vector<double> xs;
    for (const CutCurve* c : {&fz.left(), &fz.right()}) {
        xs.push_back((*c)(0.0));
        xs.push_back(c->right_limit(0.0));
        xs.push_back((*c)(1.0));
        for (double b : c->breakpoints()) {
            xs.push_back((*c)(b));
            xs.push_back(c->right_limit(b));
        }
    }
    std::sort(xs.begin(), xs.end());
    std::vector<double> out;
    for (double x : xs) {
        if (out.empty() || std::fabs(x - out.back()) > 1e-12 * (1 + std::fabs(x))) out.push_back(x);
    }
    return out;
}

ExtendedSlope numeric_slope(const FuzzyNum& fz, double x, Side side) {
    double dist = 1e-3 * 2;
    for (double j : junctions(fz)) {
        double d = std::fabs(j - x);
        if (d > 1e-12 * (1 + std::fabs(x))) dist = std::min(dist, d);
    }
    double h0 = std::min(1e-3, dist / 2);
    double u0 = membership(fz, x);
    constexpr int n = 5;
    double D[n];
    for (int k = 0; k < n; ++k) {
        double h = h0 * std::pow(10.0, -k);
        D[k] = side == Side::left ? (u0 - membership(fz, x - h)) / h : (membership(fz, x + h) - u0) / h;
    }
    ExtendedSlope r{0.0, side};
    // Growth by more than ~3x per decade over the finest steps means the quotient diverges.
    double g1 = std::fabs(D[n - 1]) / std::max(std::fabs(D[n - 2]), 1e-300);
    double g2 = std::fabs(D[n - 2]) / std::max(std::fabs(D[n - 3]), 1e-300);
    if (std::fabs(D[n - 1]) > 1e2 && g1 > 2.5 && g2 > 2.5) {
        r.value = std::copysign(kInf, D[n - 1]);
        return r;
    }
    double R[n - 1];
    for (int k = 0; k + 1 < n; ++k) R[k] = (10.0 * D[k + 1] - D[k]) / 9.0;
    r.value = R[2];
    return r;
}

// ---------------------------------------------------------------- classification

const char* to_string(PointKind k) { return k == PointKind::kink ? "kink" : "jump"; }

const char* to_string(Branch b) {
    switch (b) {
        case Branch::left: return "left";
        case Branch::right: return "right";
        case Branch::core_endpoint: return "core-endpoint";
    }
    return "?";
}

std::vector<SingularPoint> classify_points(const FuzzyNum& fz, const Tolerances& tol) {
    std::vector<SingularPoint> out;
    if (fz.degenerate()) return out;
    Interval sup = fz.support();
    Interval core = fz.core();
    // Levels recovered from abscissae carry rounding; snap them to the cut
    // breakpoints they stand for so smoother knots land exactly.
    std::vector<double> known = fz.left().breakpoints();
    for (double b : fz.right().breakpoints()) known.push_back(b);
    known.push_back(0.0);
    known.push_back(1.0);
    auto snap = [&](double level) {
        for (double b : known)
            if (std::fabs(b - level) <= 1e-10) return b;
        return level;
    };
    for (double x : junctions(fz)) {
        if (!(x > sup.lo && x < sup.hi)) continue;
        SingularPoint p;
        p.x = x;
        p.level = snap(membership(fz, x));
        p.left_limit = snap(membership_left_limit(fz, x));
        p.right_limit = snap(membership_right_limit(fz, x));
        p.left_slope = left_deriv(fz, x).value;
        p.right_slope = right_deriv(fz, x).value;
        bool jump = std::max(std::fabs(p.level - p.left_limit), std::fabs(p.level - p.right_limit)) > tol.level;
        bool kink = false;
        if (!jump) {
            if (!std::isfinite(p.left_slope) || !std::isfinite(p.right_slope)) {
                kink = true;
            } else {
                double scale = 1.0 + std::max(std::fabs(p.left_slope), std::fabs(p.right_slope));
                kink = std::fabs(p.left_slope - p.right_slope) > tol.slope * scale;
            }
        }
        if (!jump && !kink) continue;
        p.kind = jump ? PointKind::jump : PointKind::kink;
        if (x < core.lo) {
            p.branch = Branch::left;
            p.limit = p.left_limit;
        } else if (x > core.hi) {
            p.branch = Branch::right;
            p.limit = p.right_limit;
        } else {
            p.branch = Branch::core_endpoint;
            if (core.lo == core.hi)
                p.limit = std::min(p.left_limit, p.right_limit);
            else
                p.limit = x == core.lo ? p.left_limit : p.right_limit;
        }
        if (!jump) p.limit = p.level;
        out.push_back(p);
    }
    return out;
}

ClassFlags class_membership(const FuzzyNum& fz, const Tolerances& tol) {
    ClassFlags f;
    if (fz.degenerate()) {
        f.in_FT = f.in_FN = f.in_FC = f.in_FD = true;
        return f;
    }
    auto points = classify_points(fz, tol);

    // Continuity on the support: cut functions strictly monotone above the base levels.
    auto strict_above = [](const CutCurve& c, double base) {
        for (const auto& s : c.segments()) {
            if (s.hi <= base + 1e-12) continue;
            if (s.mono == Mono::constant) return false;
        }
        return true;
    };
    bool fc = strict_above(fz.left(), fz.base_level_left()) && strict_above(fz.right(), fz.base_level_right());
    for (const auto& p : points)
        if (p.kind == PointKind::jump) fc = false;

    bool fn = true;
    for (const auto& p : points)
        if (p.branch != Branch::core_endpoint) fn = false;

    auto no_plateau = [](const CutCurve& c) {
        std::vector<double> levels = c.breakpoints();
        levels.push_back(0.0);
        for (double b : levels) {
            double a = c(b), s = c.right_limit(b);
            if (std::fabs(a - s) > 1e-12 * (1 + std::fabs(a))) return false;
        }
        return true;
    };

    f.in_FC = fc;
    f.in_FN = fn;
    f.in_FT = fn && no_plateau(fz.left()) && no_plateau(fz.right());
    f.in_FD = fc && points.empty();
    return f;
}

// ---------------------------------------------------------------- metric

namespace {

struct Box {
    double ub;
    double s, t;
    double us, ut, vs, vt;
    const Segment* su;
    const Segment* sv;
    bool operator<(const Box& o) const { return ub < o.ub; }
};

double range_bound(double us, double ut, double vs, double vt) {
    double ulo = std::min(us, ut), uhi = std::max(us, ut);
    double vlo = std::min(vs, vt), vhi = std::max(vs, vt);
    return std::max(std::fabs(ulo - vhi), std::fabs(uhi - vlo));
}

}  // namespace

MetricResult sup_metric(const FuzzyNum& u, const FuzzyNum& v) {
    double lb = 0.0;
    double magnitude = 0.0;
    std::priority_queue<Box> heap;
    auto push = [&](double s, double t, double us, double ut, double vs, double vt, const Segment* su,
                    const Segment* sv) {
        heap.push(Box{range_bound(us, ut, vs, vt), s, t, us, ut, vs, vt, su, sv});
        lb = std::max({lb, std::fabs(us - vs), std::fabs(ut - vt)});
        magnitude = std::max({magnitude, std::fabs(us), std::fabs(ut), std::fabs(vs), std::fabs(vt)});
    };
    for (int side = 0; side < 2; ++side) {
        const CutCurve& cu = side == 0 ? u.left() : u.right();
        const CutCurve& cv = side == 0 ? v.left() : v.right();
        std::vector<double> b = cu.breakpoints();
        auto bv = cv.breakpoints();
        b.insert(b.end(), bv.begin(), bv.end());
        b.push_back(0.0);
        b.push_back(1.0);
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        for (double a : b) {
            lb = std::max(lb, std::fabs(cu(a) - cv(a)));
            magnitude = std::max({magnitude, std::fabs(cu(a)), std::fabs(cv(a))});
        }
        for (std::size_t i = 0; i + 1 < b.size(); ++i) {
            const Segment* su = &cu.segments()[cu.segment_above(b[i])];
            const Segment* sv = &cv.segments()[cv.segment_above(b[i])];
            constexpr int pieces = 8;
            double prev_a = b[i];
            double pu = su->expr(prev_a), pv = sv->expr(prev_a);
            for (int k = 1; k <= pieces; ++k) {
                double a = k == pieces ? b[i + 1] : b[i] + (b[i + 1] - b[i]) * k / pieces;
                double nu = su->expr(a), nv = sv->expr(a);
                push(prev_a, a, pu, nu, pv, nv, su, sv);
                prev_a = a;
                pu = nu;
                pv = nv;
            }
        }
    }
    constexpr int budget = 200000;
    for (int it = 0; it < budget && !heap.empty(); ++it) {
        const Box top = heap.top();
        if (top.ub <= lb + 1e-13 * (1.0 + lb)) break;
        heap.pop();
        double m = 0.5 * (top.s + top.t);
        if (!(m > top.s && m < top.t)) continue;
        double um = top.su->expr(m), vm = top.sv->expr(m);
        push(top.s, m, top.us, um, top.vs, vm, top.su, top.sv);
        push(m, top.t, um, top.ut, vm, top.vt, top.su, top.sv);
    }
    double ub = heap.empty() ? lb : std::max(lb, heap.top().ub);
    double rounding = 16 * std::numeric_limits<double>::epsilon() * (1.0 + magnitude);
    return {lb, (ub - lb) + rounding};
}

// ---------------------------------------------------------------- Lipschitz

namespace {

double min_abs_derivative(const Segment& s, double lo, double hi) {
    Expr d = s.expr.derivative();
    auto f = [&](double a, bool from_below) {
        double v = d(a);
        for (double delta = 1e-13; std::isnan(v) && delta <= 1e-8; delta *= 10)
            v = d(std::clamp(from_below ? a - delta : a + delta, lo, hi));
        return std::fabs(v);
    };
    constexpr int n = 256;
    double best = kInf;
    int best_k = 0;
    std::vector<double> grid(n + 1);
    for (int k = 0; k <= n; ++k) {
        grid[k] = k == n ? hi : lo + (hi - lo) * k / n;
        double v = f(grid[k], k == n);
        if (v < best) {
            best = v;
            best_k = k;
        }
    }
    double a = grid[std::max(0, best_k - 1)];
    double b = grid[std::min(n, best_k + 1)];
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = b - g * (b - a), e = a + g * (b - a);
    double fc = f(c, false), fe = f(e, false);
    for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
        if (fc < fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - g * (b - a);
            fc = f(c, false);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + g * (b - a);
            fe = f(e, false);
        }
    }
    return std::min({best, fc, fe});
}

}  // namespace

double lipschitz_estimate(const FuzzyNum& fz) {
    if (fz.degenerate()) return 0.0;
    if (!class_membership(fz).in_FC) return kInf;
    double k = 0.0;
    for (int side = 0; side < 2; ++side) {
        const CutCurve& c = side == 0 ? fz.left() : fz.right();
        double base = side == 0 ? fz.base_level_left() : fz.base_level_right();
        for (const auto& s : c.segments()) {
            if (s.mono == Mono::constant || s.hi <= base + 1e-12) continue;
            double lo = std::max(s.lo, base);
            double m = min_abs_derivative(s, lo, s.hi);
            // A vanishing cut derivative (up to rounding) is a vertical tangent.
            double scale = std::fabs(s.expr(s.hi) - s.expr(lo)) / (s.hi - lo);
            if (!(m > 1e-12 * scale)) return kInf;
            k = std::max(k, 1.0 / m);
        }
    }
    return k;
}

}  // namespace fuzzy
