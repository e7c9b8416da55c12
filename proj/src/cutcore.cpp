#include "fuzzy/cutcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fuzzy/errors.hpp"

namespace fuzzy {

namespace {

constexpr double kLevelSnap = 1e-10;

double value_tol(double v) { return 1e-9 * (1.0 + std::fabs(v)); }

void check_level(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("level outside [0,1]: " + format_number(alpha));
}

}  // namespace

const char* to_string(Mono m) {
    switch (m) {
        case Mono::increasing: return "increasing";
        case Mono::decreasing: return "decreasing";
        case Mono::constant: return "constant";
    }
    return "?";
}

std::optional<Mono> mono_from_string(const std::string& s) {
    if (s == "increasing") return Mono::increasing;
    if (s == "decreasing") return Mono::decreasing;
    if (s == "constant") return Mono::constant;
    return std::nullopt;
}

// ---------------------------------------------------------------- CutCurve

CutCurve::CutCurve(std::vector<Segment> segments, std::vector<double> point_values)
    : segs_(std::move(segments)), points_(std::move(point_values)) {
    if (segs_.empty()) throw StructuralError("cut curve has no segments");
    if (segs_.front().lo != 0.0) throw StructuralError("first segment must start at level 0");
    if (segs_.back().hi != 1.0) throw StructuralError("last segment must end at level 1");
    for (std::size_t i = 0; i < segs_.size(); ++i) {
        if (!(segs_[i].lo < segs_[i].hi))
            throw StructuralError("empty level interval at segment " + std::to_string(i + 1));
        if (i + 1 < segs_.size() && segs_[i].hi != segs_[i + 1].lo) {
            throw StructuralError(segs_[i].hi < segs_[i + 1].lo ? "gap between level intervals at " +
                                                                       format_number(segs_[i].hi)
                                                                 : "overlapping level intervals at " +
                                                                       format_number(segs_[i + 1].lo));
        }
    }
    if (points_.size() != segs_.size() + 1) throw StructuralError("point value count does not match segments");
}

CutCurve CutCurve::left_continuous(std::vector<Segment> segments) {
    std::vector<double> pts;
    if (!segments.empty()) {
        pts.push_back(segments.front().expr(segments.front().lo));
        for (const auto& s : segments) pts.push_back(s.expr(s.hi));
    }
    return CutCurve(std::move(segments), std::move(pts));
}

std::size_t CutCurve::segment_below(double alpha) const {
    if (alpha <= 0) return 0;
    auto it = std::lower_bound(segs_.begin(), segs_.end(), alpha,
                               [](const Segment& s, double a) { return s.hi < a; });
    if (it == segs_.end()) return segs_.size() - 1;
    return static_cast<std::size_t>(it - segs_.begin());
}

std::size_t CutCurve::segment_above(double alpha) const {
    if (alpha >= 1) return segs_.size() - 1;
    auto it = std::upper_bound(segs_.begin(), segs_.end(), alpha,
                               [](double a, const Segment& s) { return a < s.hi; });
    if (it == segs_.end()) return segs_.size() - 1;
    return static_cast<std::size_t>(it - segs_.begin());
}

double CutCurve::operator()(double alpha) const {
    check_level(alpha);
    if (alpha == 0.0) return points_.front();
    if (alpha == 1.0) return points_.back();
    std::size_t i = segment_below(alpha);
    if (alpha == segs_[i].hi) return points_[i + 1];
    return segs_[i].expr(alpha);
}

double CutCurve::right_limit(double alpha) const {
    check_level(alpha);
    if (alpha == 1.0) return points_.back();
    return segs_[segment_above(alpha)].expr(alpha);
}

double CutCurve::left_limit(double alpha) const {
    check_level(alpha);
    if (alpha == 0.0) return points_.front();
    return segs_[segment_below(alpha)].expr(alpha);
}

std::vector<double> CutCurve::breakpoints() const {
    std::vector<double> b;
    for (std::size_t i = 0; i + 1 < segs_.size(); ++i) b.push_back(segs_[i].hi);
    return b;
}

// ---------------------------------------------------------------- FuzzyNum

namespace {
CutCurve constant_curve(double c) {
    Segment s{0.0, 1.0, Expr::constant(c), Mono::constant, std::nullopt};
    return CutCurve::left_continuous({s});
}
}  // namespace

FuzzyNum::FuzzyNum() : left_(constant_curve(0)), right_(constant_curve(0)) {}
FuzzyNum::FuzzyNum(CutCurve left, CutCurve right) : left_(std::move(left)), right_(std::move(right)) {}

FuzzyNum crisp(double value) { return FuzzyNum(constant_curve(value), constant_curve(value)); }

bool FuzzyNum::degenerate() const { return support().lo == support().hi; }
double FuzzyNum::base_level_left() const { return membership(*this, support().lo); }
double FuzzyNum::base_level_right() const { return membership(*this, support().hi); }

// ---------------------------------------------------------------- validation

bool ValidationReport::ok() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const auto& c) { return c.pass; });
}

const ValidationClause* ValidationReport::first_failure() const {
    for (const auto& c : clauses)
        if (!c.pass) return &c;
    return nullptr;
}

namespace {

void fail(ValidationClause& c, double level, std::string detail) {
    if (!c.pass) return;
    c.pass = false;
    c.witness = level;
    c.detail = std::move(detail);
}

// dir = +1 for a nondecreasing curve, -1 for a nonincreasing one.
void check_curve(const CutCurve& curve, double dir, ValidationClause& clause) {
    const auto& segs = curve.segments();
    const auto& pts = curve.point_values();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!std::isfinite(pts[i])) {
            fail(clause, i == 0 ? 0.0 : segs[i - 1].hi, "stored value is not finite");
            return;
        }
    }
    for (const auto& s : segs) {
        Mono wrong = dir > 0 ? Mono::decreasing : Mono::increasing;
        if (s.mono == wrong) {
            fail(clause, s.lo, std::string("segment tagged ") + to_string(s.mono));
            return;
        }
        constexpr int n = 32;
        double prev = s.expr(s.lo);
        Expr slope = s.expr.derivative();
        for (int k = 0; k <= n; ++k) {
            double a = s.lo + (s.hi - s.lo) * k / n;
            if (k == n) a = s.hi;
            double v = s.expr(a);
            if (!std::isfinite(v)) {
                fail(clause, a, "value is not finite");
                return;
            }
            if (s.mono == Mono::constant) {
                if (std::fabs(v - prev) > value_tol(v)) {
                    fail(clause, a, "constant segment varies");
                    return;
                }
            } else {
                if (dir * (v - prev) < -value_tol(v)) {
                    fail(clause, a, "curve is not monotone");
                    return;
                }
                if (k > 0 && k < n) {
                    double d = slope(a);
                    if (std::isnan(d)) {
                        fail(clause, a, "derivative undefined inside segment");
                        return;
                    }
                    if (dir * d < -value_tol(d)) {
                        fail(clause, a, "derivative has the wrong sign");
                        return;
                    }
                }
            }
            prev = v;
        }
        if (s.mono != Mono::constant && !(dir * (s.expr(s.hi) - s.expr(s.lo)) > 0)) {
            fail(clause, s.lo, "segment tagged strictly monotone is flat");
            return;
        }
    }
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        double b = segs[i].hi;
        double below = segs[i].expr(b);
        double above = segs[i + 1].expr(b);
        double stored = pts[i + 1];
        if (dir * (above - below) < -value_tol(below) || dir * (stored - below) < -value_tol(below) ||
            dir * (above - stored) < -value_tol(stored)) {
            fail(clause, b, "curve is not monotone across the breakpoint");
            return;
        }
        if (std::fabs(stored - below) > value_tol(below)) {
            fail(clause, b, "not left-continuous: stored value " + format_number(stored) +
                                " differs from the limit from below " + format_number(below));
            return;
        }
    }
    double top = segs.back().expr(1.0);
    if (std::fabs(pts.back() - top) > value_tol(top)) {
        fail(clause, 1.0, "not left-continuous at level 1");
    }
}

}  // namespace

ValidationReport validate(const FuzzyNum& fz) {
    ValidationReport r;
    r.clauses = {
        {"i", "left cut nondecreasing, left-continuous, bounded", true, std::nullopt, {}},
        {"ii", "right cut nonincreasing, left-continuous, bounded", true, std::nullopt, {}},
        {"iii", "cuts right-continuous at level 0", true, std::nullopt, {}},
        {"iv", "core ordered: u-(1) <= u+(1)", true, std::nullopt, {}},
    };
    check_curve(fz.left(), +1.0, r.clauses[0]);
    check_curve(fz.right(), -1.0, r.clauses[1]);
    for (const CutCurve* c : {&fz.left(), &fz.right()}) {
        double stored = c->point_values().front();
        double lim = c->segments().front().expr(0.0);
        if (std::fabs(stored - lim) > value_tol(lim))
            fail(r.clauses[2], 0.0, "value at 0 " + format_number(stored) + " differs from the right limit " +
                                        format_number(lim));
    }
    double cl = fz.left().point_values().back();
    double cr = fz.right().point_values().back();
    if (!(cl <= cr + value_tol(cr)))
        fail(r.clauses[3], 1.0, "u-(1) = " + format_number(cl) + " exceeds u+(1) = " + format_number(cr));
    return r;
}

void require_valid(const FuzzyNum& fz) {
    auto rep = validate(fz);
    if (const auto* f = rep.first_failure()) {
        std::string msg = "clause (" + f->id + ") " + f->name;
        if (f->witness) msg += " fails at level " + format_number(*f->witness);
        if (!f->detail.empty()) msg += ": " + f->detail;
        throw ValidationError(f->id, msg);
    }
}

// ---------------------------------------------------------------- cuts

Interval alpha_cut(const FuzzyNum& fz, double alpha) {
    check_level(alpha);
    return {fz.left()(alpha), fz.right()(alpha)};
}

Interval strong_cut(const FuzzyNum& fz, double alpha) {
    check_level(alpha);
    if (alpha == 1.0) return fz.core();
    return {fz.left().right_limit(alpha), fz.right().right_limit(alpha)};
}

// ---------------------------------------------------------------- membership

namespace {

double segment_root(const Segment& s, double x) {
    if (s.level_of) {
        double r = (*s.level_of)(x);
        if (std::isfinite(r)) return std::clamp(r, s.lo, s.hi);
    }
    return solve_monotone(s.expr, s.lo, s.hi, x);
}

// sup of the down-closed level set {alpha : pred(curve(alpha))}; -1 when empty.
template <class Pred>
double sup_levels(const CutCurve& c, double x, Pred pred) {
    const auto& segs = c.segments();
    const auto& pts = c.point_values();
    std::size_t n = segs.size();
    if (pred(pts[n])) return 1.0;
    for (std::size_t i = n; i-- > 0;) {
        const Segment& s = segs[i];
        double vlo = s.expr(s.lo);
        if (pred(vlo)) {
            if (pred(s.expr(s.hi))) return s.hi;
            return segment_root(s, x);
        }
        if (pred(pts[i])) return s.lo;
    }
    return -1.0;
}

double combine(double a, double b) { return (a < 0 || b < 0) ? 0.0 : std::min(a, b); }

}  // namespace

double membership(const FuzzyNum& fz, double x) {
    if (std::isnan(x)) throw DomainError("abscissa is NaN");
    return combine(sup_levels(fz.left(), x, [x](double v) { return v <= x; }),
                   sup_levels(fz.right(), x, [x](double v) { return v >= x; }));
}

double membership_left_limit(const FuzzyNum& fz, double x) {
    return combine(sup_levels(fz.left(), x, [x](double v) { return v < x; }),
                   sup_levels(fz.right(), x, [x](double v) { return v >= x; }));
}

double membership_right_limit(const FuzzyNum& fz, double x) {
    return combine(sup_levels(fz.left(), x, [x](double v) { return v <= x; }),
                   sup_levels(fz.right(), x, [x](double v) { return v > x; }));
}

// ---------------------------------------------------------------- from membership pieces

namespace {

struct Element {
    bool point = true;
    double a = 0, b = 0;  // abscissae (a == b for points)
    double va = 0, vb = 0;
    const MembershipPiece* piece = nullptr;
};

double snap(double v) {
    if (std::fabs(v) <= kLevelSnap) return 0.0;
    if (std::fabs(v - 1.0) <= kLevelSnap) return 1.0;
    return v;
}

[[noreturn]] void reject(const std::string& clause, const std::string& msg) {
    throw ValidationError(clause, "clause (" + clause + "): " + msg);
}

void check_piece_shape(const MembershipPiece& p, const std::string& clause) {
    constexpr int n = 32;
    double prev = p.expr(p.lo);
    for (int k = 0; k <= n; ++k) {
        double t = k == n ? p.hi : p.lo + (p.hi - p.lo) * k / n;
        double v = p.expr(t);
        if (!std::isfinite(v)) reject(clause, "membership piece is not finite at x = " + format_number(t));
        bool bad = false;
        if (p.mono == Mono::increasing) bad = v < prev - value_tol(v);
        if (p.mono == Mono::decreasing) bad = v > prev + value_tol(v);
        if (p.mono == Mono::constant) bad = std::fabs(v - prev) > value_tol(v);
        if (bad)
            reject(clause, std::string("membership piece tagged ") + to_string(p.mono) +
                               " is not so near x = " + format_number(t));
        prev = v;
    }
}

std::vector<Element> build_elements(const std::vector<MembershipPiece>& pieces) {
    if (pieces.empty()) throw StructuralError("no membership pieces");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].lo > pieces[i].hi) throw StructuralError("membership piece with reversed interval");
        if (pieces[i].lo == pieces[i].hi && !(pieces[i].lo_closed && pieces[i].hi_closed))
            throw StructuralError("degenerate membership piece must be closed");
        if (i + 1 < pieces.size()) {
            if (pieces[i].hi < pieces[i + 1].lo)
                throw StructuralError("gap between membership pieces at " + format_number(pieces[i].hi));
            if (pieces[i].hi > pieces[i + 1].lo)
                throw StructuralError("overlapping membership pieces at " + format_number(pieces[i + 1].lo));
        }
    }
    // Distinct abscissae of piece ends.
    std::vector<double> xs;
    for (const auto& p : pieces) {
        xs.push_back(p.lo);
        xs.push_back(p.hi);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    auto point_value = [&](double x, bool outer) {
        std::optional<double> val;
        for (const auto& p : pieces) {
            bool covers = (p.lo == x && p.lo_closed) || (p.hi == x && p.hi_closed);
            if (!covers) continue;
            double v = snap(p.expr(x));
            if (val && std::fabs(*val - v) > value_tol(v))
                reject("i", "membership pieces disagree at x = " + format_number(x));
            if (!val) val = v;
        }
        if (!val) {
            if (!outer) reject("i", "membership undefined at inner abscissa x = " + format_number(x));
            val = 0.0;
        }
        return *val;
    };

    std::vector<Element> elems;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        double x = xs[k];
        Element pt;
        pt.point = true;
        pt.a = pt.b = x;
        pt.va = pt.vb = point_value(x, k == 0 || k + 1 == xs.size());
        elems.push_back(pt);
        if (k + 1 < xs.size()) {
            const MembershipPiece* owner = nullptr;
            for (const auto& p : pieces)
                if (p.lo == x && p.hi == xs[k + 1]) owner = &p;
            if (!owner) throw StructuralError("no membership piece covers (" + format_number(x) + ", " +
                                              format_number(xs[k + 1]) + ")");
            Element in;
            in.point = false;
            in.a = x;
            in.b = xs[k + 1];
            in.va = snap(owner->expr(in.a));
            in.vb = snap(owner->expr(in.b));
            in.piece = owner;
            elems.push_back(in);
        }
    }
    for (const auto& e : elems) {
        for (double v : {e.va, e.vb})
            if (!(v >= -kLevelSnap && v <= 1 + kLevelSnap))
                reject("i", "membership value " + format_number(v) + " outside [0,1] near x = " + format_number(e.a));
    }
    return elems;
}

// Walks one branch from the support end toward the core. `outward` is the
// abscissa direction of the walk (+1 rising branch read left to right).
std::vector<Segment> walk_branch(const std::vector<const Element*>& path, double core_x, bool rising,
                                 const std::string& clause) {
    std::vector<Segment> segs;
    double level = 0.0;
    bool started = false;
    auto add_const = [&](double lo, double hi, double x) {
        if (hi > lo) segs.push_back(Segment{lo, hi, Expr::constant(x), Mono::constant, std::nullopt});
    };
    for (const Element* e : path) {
        if (e->point) {
            double v = e->va;
            if (!started) {
                started = true;
                add_const(0.0, v, e->a);
                level = v;
                continue;
            }
            if (v < level - kLevelSnap) reject(clause, "membership not monotone on the branch at x = " + format_number(e->a));
            if (v > level + kLevelSnap) {
                add_const(level, v, e->a);
                level = v;
            }
            continue;
        }
        // Interior of a piece; the walk enters at `enter` and leaves at `leave`.
        double enter = rising ? e->va : e->vb;
        double leave = rising ? e->vb : e->va;
        if (std::fabs(enter - level) <= kLevelSnap) enter = level;
        if (enter < level)
            reject(clause, "membership not monotone on the branch near x = " + format_number(rising ? e->a : e->b));
        if (enter > level)
            reject(clause, "membership not upper semicontinuous at x = " + format_number(rising ? e->a : e->b));
        const MembershipPiece& p = *e->piece;
        Mono expected = rising ? Mono::increasing : Mono::decreasing;
        if (p.mono == Mono::constant) continue;
        if (p.mono != expected)
            reject(clause, std::string("piece tagged ") + to_string(p.mono) + " on the " +
                               (rising ? "rising" : "falling") + " branch at x = " + format_number(p.lo));
        if (!(leave > level)) reject(clause, "strictly monotone piece is flat at x = " + format_number(p.lo));
        Segment s;
        s.lo = level;
        s.hi = leave;
        s.expr = invert(p.expr, e->a, e->b);
        s.mono = rising ? Mono::increasing : Mono::decreasing;
        s.level_of = p.expr;
        segs.push_back(s);
        level = leave;
    }
    if (!started) level = 0.0;
    if (level < 1.0) add_const(level, 1.0, core_x);
    return segs;
}

}  // namespace

FuzzyNum from_membership_pieces(const std::vector<MembershipPiece>& pieces) {
    for (const auto& p : pieces)
        if (p.lo < p.hi) check_piece_shape(p, p.mono == Mono::decreasing ? "ii" : "i");
    std::vector<Element> elems = build_elements(pieces);

    auto is_one = [](const Element& e) { return e.va == 1.0 && e.vb == 1.0; };
    std::size_t first = elems.size(), last = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (is_one(elems[i]) || (elems[i].point && elems[i].va == 1.0)) {
            first = std::min(first, i);
            last = i;
        }
    }
    if (first == elems.size()) reject("iv", "membership never reaches 1, the core is empty");
    for (std::size_t i = first; i <= last; ++i)
        if (!is_one(elems[i])) reject("iv", "core is not an interval near x = " + format_number(elems[i].a));

    std::vector<const Element*> left_path, right_path;
    for (std::size_t i = 0; i < first; ++i) left_path.push_back(&elems[i]);
    for (std::size_t i = elems.size(); i-- > last + 1;) right_path.push_back(&elems[i]);

    auto lsegs = walk_branch(left_path, elems[first].a, true, "i");
    auto rsegs = walk_branch(right_path, elems[last].b, false, "ii");
    FuzzyNum fz(CutCurve::left_continuous(std::move(lsegs)), CutCurve::left_continuous(std::move(rsegs)));
    require_valid(fz);
    return fz;
}

// ---------------------------------------------------------------- sampling

std::vector<SampleRow> sample(const FuzzyNum& fz, const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("empty level grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        check_level(grid[i]);
        if (i > 0 && grid[i] < grid[i - 1]) throw DomainError("level grid is not sorted");
    }
    std::vector<double> levels = grid;
    for (const CutCurve* c : {&fz.left(), &fz.right()}) {
        auto b = c->breakpoints();
        levels.insert(levels.end(), b.begin(), b.end());
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<SampleRow> rows;
    rows.reserve(levels.size());
    for (double a : levels) rows.push_back({a, fz.left()(a), fz.right()(a)});
    return rows;
}

std::vector<double> uniform_grid(std::size_t n) {
    std::vector<double> g;
    if (n == 0) return g;
    if (n == 1) return {0.0};
    for (std::size_t i = 0; i < n; ++i) g.push_back(i + 1 == n ? 1.0 : static_cast<double>(i) / (n - 1));
    return g;
}

}  // namespace fuzzy
