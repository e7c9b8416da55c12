#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuzzy/expr.hpp"

namespace fuzzy {

enum class Mono { increasing, decreasing, constant };

const char* to_string(Mono m);
std::optional<Mono> mono_from_string(const std::string& s);

struct Interval {
    double lo = 0;
    double hi = 0;
};

// One piece of a cut curve: expr (in the level) on the level interval [lo, hi].
struct Segment {
    double lo = 0;
    double hi = 1;
    Expr expr;
    Mono mono = Mono::constant;
    // Membership level as a function of the abscissa, when known in closed form.
    std::optional<Expr> level_of;
};

// Piecewise level function on [0,1].
//
// Segments are contiguous and cover [0,1]. Point values are stored separately
// for 0, every inner breakpoint and 1, so any continuity convention can be
// represented; a valid curve stores the limit from below at breakpoints.
class CutCurve {
public:
    CutCurve() = default;
    CutCurve(std::vector<Segment> segments, std::vector<double> point_values);
    // Point values taken as limits from below (and the right limit at 0).
    static CutCurve left_continuous(std::vector<Segment> segments);

    double operator()(double alpha) const;
    // lim_{b -> alpha+}; equals the value at 1 for alpha = 1.
    double right_limit(double alpha) const;
    // lim_{b -> alpha-}; equals the value at 0 for alpha = 0.
    double left_limit(double alpha) const;

    const std::vector<Segment>& segments() const { return segs_; }
    const std::vector<double>& point_values() const { return points_; }
    // Inner breakpoints, increasing.
    std::vector<double> breakpoints() const;
    // Index of the segment whose half-open interval (lo, hi] contains alpha
    // (segment 0 for alpha = 0).
    std::size_t segment_below(double alpha) const;
    // Index of the segment whose interval [lo, hi) contains alpha
    // (last segment for alpha = 1).
    std::size_t segment_above(double alpha) const;

private:
    std::vector<Segment> segs_;
    std::vector<double> points_;
};

class FuzzyNum {
public:
    FuzzyNum();  // the crisp number 0
    FuzzyNum(CutCurve left, CutCurve right);

    const CutCurve& left() const { return left_; }
    const CutCurve& right() const { return right_; }

    Interval support() const { return {left_(0), right_(0)}; }
    Interval core() const { return {left_(1), right_(1)}; }
    bool degenerate() const;
    // u(u^-(0)) and u(u^+(0)).
    double base_level_left() const;
    double base_level_right() const;

private:
    CutCurve left_;
    CutCurve right_;
};

struct ValidationClause {
    std::string id;      // "i" .. "iv"
    std::string name;
    bool pass = true;
    std::optional<double> witness;  // level where the clause fails
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationClause> clauses;
    bool ok() const;
    const ValidationClause* first_failure() const;
};

ValidationReport validate(const FuzzyNum& fz);
// Throws ValidationError naming the first failing clause.
void require_valid(const FuzzyNum& fz);

Interval alpha_cut(const FuzzyNum& fz, double alpha);
Interval strong_cut(const FuzzyNum& fz, double alpha);

double membership(const FuzzyNum& fz, double x);
// One-sided limits of the membership function.
double membership_left_limit(const FuzzyNum& fz, double x);
double membership_right_limit(const FuzzyNum& fz, double x);

struct MembershipPiece {
    double lo = 0;
    double hi = 0;
    bool lo_closed = true;
    bool hi_closed = true;
    Mono mono = Mono::constant;
    Expr expr;  // in the abscissa
};

FuzzyNum from_membership_pieces(const std::vector<MembershipPiece>& pieces);

struct SampleRow {
    double alpha;
    double lo;
    double hi;
};

// Rows at the requested levels plus every breakpoint of either curve.
std::vector<SampleRow> sample(const FuzzyNum& fz, const std::vector<double>& grid);
std::vector<double> uniform_grid(std::size_t n);

FuzzyNum crisp(double value);

}  // namespace fuzzy
