#include "fuzzy/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fuzzy/errors.hpp"

namespace fuzzy {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::not_applicable: return "not-applicable";
    }
    return "?";
}

const char* to_string(Theorem t) {
    switch (t) {
        case Theorem::rap: return "rap";
        case Theorem::rndp: return "rndp";
        case Theorem::rncp: return "rncp";
        case Theorem::none: return "none";
    }
    return "?";
}

const ConditionVerdict& ConditionReport::at(const std::string& id) const {
    for (const auto& c : conditions)
        if (c.id == id) return c;
    throw DomainError("unknown condition " + id);
}

bool ConditionReport::holds(const std::string& group) const {
    for (const auto& c : conditions) {
        bool member = c.id == group || c.id.rfind(group + "-", 0) == 0;
        if (member && c.verdict == Verdict::fail) return false;
    }
    return true;
}

namespace {

bool same_x(double a, double b) { return std::fabs(a - b) <= 1e-12 * (1 + std::fabs(a)); }

// Accumulates zero-slope requirements for one condition.
struct Requirement {
    ConditionVerdict v;
    explicit Requirement(std::string id) { v.id = std::move(id); }
    void check(double level, double slope, const Tolerances& tol) {
        if (v.verdict == Verdict::not_applicable) v.verdict = Verdict::pass;
        if (std::fabs(slope) > tol.zero) {
            v.verdict = Verdict::fail;
            v.witness_levels.push_back(level);
            std::ostringstream os;
            os.precision(17);
            if (!v.detail.empty()) os << "; ";
            os << "slope " << slope << " at level " << level;
            v.detail += os.str();
        }
    }
};

}  // namespace

ConditionReport check_smoother_conditions(const FuzzyNum& u, const FuzzyNum& w, const Tolerances& tol) {
    require_valid(u);
    require_valid(w);
    ConditionReport rep;
    ClassFlags uf = class_membership(u, tol);
    ClassFlags wf = class_membership(w, tol);
    rep.u_in_FN = uf.in_FN;
    rep.u_in_FC = uf.in_FC;
    rep.w_in_FD = wf.in_FD && !w.degenerate();

    auto points = classify_points(u, tol);
    Interval sup = u.support();
    Interval core = u.core();
    auto singular_at = [&](double x) {
        if (!(x > sup.lo && x < sup.hi)) return false;
        for (const auto& p : points)
            if (same_x(p.x, x)) return true;
        return false;
    };
    // Level data of u carries rounding; a breakpoint of w within tol.level
    // is taken to be the same level.
    auto snap = [&](const CutCurve& c, double level) {
        for (double b : c.breakpoints())
            if (std::fabs(b - level) <= tol.level) return b;
        return level;
    };
    // w'_+ at w^-(level) and w'_- at w^+(level).
    auto rising = [&](double level) { return right_deriv(w, w.left()(snap(w.left(), level))).value; };
    auto falling = [&](double level) { return left_deriv(w, w.right()(snap(w.right(), level))).value; };

    ConditionVerdict c1;
    c1.id = "i";
    double ul = u.base_level_left(), ur = u.base_level_right();
    double wl = w.base_level_left(), wr = w.base_level_right();
    bool ok = std::fabs(ul - wl) <= tol.level && std::fabs(ur - wr) <= tol.level;
    c1.verdict = ok ? Verdict::pass : Verdict::fail;
    if (!ok) {
        std::ostringstream os;
        os.precision(17);
        os << "base levels of w (" << wl << ", " << wr << ") differ from u (" << ul << ", " << ur << ")";
        c1.detail = os.str();
        if (std::fabs(ul - wl) > tol.level) c1.witness_levels.push_back(wl);
        if (std::fabs(ur - wr) > tol.level) c1.witness_levels.push_back(wr);
    }
    rep.conditions.push_back(c1);

    Requirement c21("ii-1"), c22("ii-2"), c31("iii-1"), c32("iii-2"), c41("iv-1"), c42("iv-2"), c51("v-1"),
        c52("v-2");
    if (singular_at(core.lo)) c21.check(1.0, left_deriv(w, w.left()(1.0)).value, tol);
    if (singular_at(core.hi)) c22.check(1.0, right_deriv(w, w.right()(1.0)).value, tol);
    if (singular_at(u.left().right_limit(ul))) c31.check(0.0, rising(0.0), tol);
    if (singular_at(u.right().right_limit(ur))) c32.check(0.0, falling(0.0), tol);
    for (const auto& p : points) {
        if (p.branch == Branch::left) c41.check(p.level, rising(p.level), tol);
        if (p.branch == Branch::right) c42.check(p.level, falling(p.level), tol);
        if (p.kind != PointKind::jump) continue;
        if (p.x <= core.lo && p.left_limit < p.level - tol.level) c51.check(p.left_limit, rising(p.left_limit), tol);
        if (p.x >= core.hi && p.right_limit < p.level - tol.level)
            c52.check(p.right_limit, falling(p.right_limit), tol);
    }
    for (auto* r : {&c21, &c22, &c31, &c32, &c41, &c42, &c51, &c52}) rep.conditions.push_back(r->v);

    bool i = rep.holds("i"), ii = rep.holds("ii"), iv = rep.holds("iv"), v = rep.holds("v");
    if (!rep.w_in_FD) {
        rep.reason = w.degenerate() ? "smoother has degenerate support" : "smoother is not in F_D";
    } else if (uf.in_FN && uf.in_FC && i && ii) {
        rep.theorem = Theorem::rap;
    } else if (uf.in_FC && i && ii && iv) {
        rep.theorem = Theorem::rndp;
    } else if (i && ii && iv && v) {
        rep.theorem = Theorem::rncp;
    } else {
        for (const auto& c : rep.conditions) {
            if (c.verdict == Verdict::fail && c.id.rfind("iii", 0) != 0) {
                rep.reason = "condition (" + c.id + ") fails";
                break;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- families

namespace {

constexpr double kHypTol = 1e-12;

Expr var() { return Expr::variable(); }
Expr num(double c) { return Expr::constant(c); }

void require(bool cond, const std::string& hypothesis, const std::string& detail = "") {
    if (!cond) throw ValidationError(hypothesis, "family hypothesis " + hypothesis + " violated" +
                                                    (detail.empty() ? "" : ": " + detail));
}

double deriv_at(const Expr& d, double t, double inward) {
    double v = d(t);
    for (double delta = 1e-13; std::isnan(v) && delta <= 1e-8; delta *= 10) v = d(t + inward * delta);
    return v;
}

// Strict monotonicity on [0,1] by dense sampling; dir = +1 increasing.
bool strictly_monotone(const Expr& f, double dir) {
    constexpr int n = 512;
    double prev = f(0.0);
    for (int k = 1; k <= n; ++k) {
        double cur = f(static_cast<double>(k) / n);
        if (!(dir * (cur - prev) > 0)) return false;
        prev = cur;
    }
    return true;
}

CutCurve curve(std::vector<Segment> segs) { return CutCurve::left_continuous(std::move(segs)); }

Segment seg(double lo, double hi, Expr e, Mono m, std::optional<Expr> level_of = std::nullopt) {
    return Segment{lo, hi, std::move(e), m, std::move(level_of)};
}

FuzzyNum make_w(double p, double l, double r) {
    Expr root = sqrt(num(1) - var());
    Expr level = num(1) - pow((1.0 / p) * var(), 2);
    std::vector<Segment> left, right;
    if (l > 0) left.push_back(seg(0, l, num(-p * std::sqrt(1 - l)), Mono::constant));
    left.push_back(seg(l, 1, (-p) * root, Mono::increasing, level));
    if (r > 0) right.push_back(seg(0, r, num(p * std::sqrt(1 - r)), Mono::constant));
    right.push_back(seg(r, 1, p * root, Mono::decreasing, level));
    return FuzzyNum(curve(std::move(left)), curve(std::move(right)));
}

}  // namespace

FuzzyNum family(const FamilySpec& spec) {
    const double p = spec.p;
    require(p > 0 && std::isfinite(p), "p>0");
    FuzzyNum out;
    switch (spec.kind) {
        case FamilyKind::w:
            out = make_w(p, 0, 0);
            break;
        case FamilyKind::v:
            require(spec.l >= 0 && spec.l < 1, "0<=l<1");
            require(spec.r >= 0 && spec.r < 1, "0<=r<1");
            out = make_w(p, spec.l, spec.r);
            break;
        case FamilyKind::Z: {
            require(spec.f.has_value(), "generator f given");
            const Expr& f = *spec.f;
            require(std::fabs(f(0.0) - 1) <= kHypTol, "f(0)=1");
            require(std::fabs(f(1.0)) <= kHypTol, "f(1)=0");
            require(strictly_monotone(f, -1), "f strictly decreasing");
            Expr d = f.derivative();
            double d_end = deriv_at(d, 1.0, -1);
            bool vertical = d_end == -std::numeric_limits<double>::infinity();
            if (!vertical) {
                double d3 = deriv_at(d, 1 - 1e-3, -1), d6 = deriv_at(d, 1 - 1e-6, -1), d12 = deriv_at(d, 1 - 1e-12, -1);
                vertical = d12 < d6 && d6 < d3 && d12 < 0 && std::fabs(d12) >= 2 * std::fabs(d6);
            }
            require(vertical, "f'(1-)=-inf", "derivative does not diverge at 1");
            std::optional<Expr> g = symbolic_inverse(f, 0, 1);
            std::optional<Expr> ll, lr;
            if (g) {
                ll = g->substitute((-1.0 / p) * var());
                lr = g->substitute((1.0 / p) * var());
            }
            out = FuzzyNum(curve({seg(0, 1, (-p) * f, Mono::increasing, ll)}),
                           curve({seg(0, 1, p * f, Mono::decreasing, lr)}));
            break;
        }
        case FamilyKind::xi: {
            require(spec.l >= 0 && spec.l < 1, "0<=l<1");
            require(spec.r >= 0 && spec.r < 1, "0<=r<1");
            require(spec.a < spec.b && spec.b < spec.c && spec.c < spec.d, "a<b<c<d");
            require(spec.f.has_value(), "generator f given");
            require(spec.g.has_value(), "generator g given");
            const Expr& f = *spec.f;
            const Expr& g = *spec.g;
            require(std::fabs(f(0.0) - spec.l) <= kHypTol, "f(0)=l");
            require(std::fabs(f(1.0) - 1) <= kHypTol, "f(1)=1");
            require(strictly_monotone(f, 1), "f increasing");
            require(std::fabs(deriv_at(f.derivative(), 1.0, -1)) <= 1e-9, "f'_-(1)=0");
            require(std::fabs(g(0.0) - 1) <= kHypTol, "g(0)=1");
            require(std::fabs(g(1.0) - spec.r) <= kHypTol, "g(1)=r");
            require(strictly_monotone(g, -1), "g decreasing");
            require(std::fabs(deriv_at(g.derivative(), 0.0, 1)) <= 1e-9, "g'_+(0)=0");
            double pa = p * spec.a, pb = p * spec.b, pc = p * spec.c, pd = p * spec.d;
            Expr finv = invert(f, 0, 1), ginv = invert(g, 0, 1);
            std::vector<Segment> left, right;
            if (spec.l > 0) left.push_back(seg(0, spec.l, num(pa), Mono::constant));
            left.push_back(seg(spec.l, 1, num(pa) + (pb - pa) * finv, Mono::increasing,
                               f.substitute((1.0 / (pb - pa)) * (var() - num(pa)))));
            if (spec.r > 0) right.push_back(seg(0, spec.r, num(pd), Mono::constant));
            right.push_back(seg(spec.r, 1, num(pc) + (pd - pc) * ginv, Mono::decreasing,
                                g.substitute((1.0 / (pd - pc)) * (var() - num(pc)))));
            out = FuzzyNum(curve(std::move(left)), curve(std::move(right)));
            break;
        }
    }
    require_valid(out);
    return out;
}

// ---------------------------------------------------------------- synthesis

KnotLevels required_levels(const FuzzyNum& u, const Tolerances& tol) {
    require_valid(u);
    KnotLevels k;
    double base_l = u.base_level_left(), base_r = u.base_level_right();
    k.left = {base_l, 1.0};
    k.right = {base_r, 1.0};
    Interval core = u.core();
    for (const auto& p : classify_points(u, tol)) {
        if (p.branch == Branch::left) k.left.push_back(p.level);
        if (p.branch == Branch::right) k.right.push_back(p.level);
        if (p.kind != PointKind::jump) continue;
        if (p.x <= core.lo && p.left_limit < p.level - tol.level) k.left.push_back(p.left_limit);
        if (p.x >= core.hi && p.right_limit < p.level - tol.level) k.right.push_back(p.right_limit);
    }
    auto tidy = [](std::vector<double>& v, double base) {
        for (double& x : v) x = std::clamp(x, base, 1.0);
        std::sort(v.begin(), v.end());
        std::vector<double> out;
        for (double x : v)
            if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
        if (out.back() != 1.0) out.back() = 1.0;
        v = out;
    };
    tidy(k.left, base_l);
    tidy(k.right, base_r);
    return k;
}

namespace {

// One branch of the synthesized smoother: half-cosine steps between knots,
// leaving the core at (approximately) 0. dir = -1 for the left branch.
CutCurve cosine_branch(const std::vector<double>& knots, double half, std::optional<double> cap, double dir) {
    const double pi = std::numbers::pi;
    std::size_t m = knots.size() - 1;
    if (m == 0) return curve({seg(0, 1, num(dir * half), Mono::constant)});
    std::vector<double> dx(m, half / static_cast<double>(m));
    if (cap) {
        for (std::size_t k = 0; k < m; ++k) dx[k] = std::max(dx[k], (knots[k + 1] - knots[k]) * pi / (2 * *cap));
    }
    double width = 0;
    for (double d : dx) width += d;
    double x = dir * width;
    std::vector<Segment> segs;
    if (knots[0] > 0) segs.push_back(seg(0, knots[0], num(x), Mono::constant));
    Mono mono = dir < 0 ? Mono::increasing : Mono::decreasing;
    for (std::size_t k = 0; k < m; ++k) {
        double lo = knots[k], hi = knots[k + 1], dl = hi - lo;
        Expr arg = num(1) - (2.0 / dl) * (var() - num(lo));
        Expr e = num(x) + (-dir * dx[k] / pi) * acos(arg);
        Expr level = num(lo) + (dl / 2) * (num(1) - cos((pi / dx[k]) * (var() - num(x))));
        Segment s = seg(lo, hi, e, mono, level);
        x = s.expr(hi);
        segs.push_back(std::move(s));
    }
    return curve(std::move(segs));
}

CutCurve shift_curve(const CutCurve& c, double s) {
    if (s == 0.0) return c;
    std::vector<Segment> segs;
    for (const auto& sg : c.segments()) {
        Segment t = sg;
        t.expr = sg.expr - num(s);
        if (sg.level_of) t.level_of = sg.level_of->substitute(var() + num(s));
        segs.push_back(std::move(t));
    }
    std::vector<double> pts;
    for (double v : c.point_values()) pts.push_back(v - s);
    return CutCurve(std::move(segs), std::move(pts));
}

}  // namespace

FuzzyNum synthesize_smoother(const FuzzyNum& u, double p, const SynthesisOptions& opts) {
    if (!(p > 0) || !std::isfinite(p)) throw DomainError("support width must be positive");
    if (opts.lipschitz_cap && !(*opts.lipschitz_cap > 0)) throw DomainError("lipschitz cap must be positive");
    KnotLevels k = required_levels(u);
    FuzzyNum w(cosine_branch(k.left, p / 2, opts.lipschitz_cap, -1.0),
               cosine_branch(k.right, p / 2, opts.lipschitz_cap, 1.0));
    require_valid(w);
    if (opts.preserve_core) w = core_preserving_shift(w);
    return w;
}

FuzzyNum core_preserving_shift(const FuzzyNum& w) {
    require_valid(w);
    FuzzyNum out(shift_curve(w.left(), w.left()(1.0)), shift_curve(w.right(), w.right()(1.0)));
    require_valid(out);
    return out;
}

}  // namespace fuzzy
