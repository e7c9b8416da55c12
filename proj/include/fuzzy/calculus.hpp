#pragma once

#include <string>
#include <vector>

#include "fuzzy/cutcore.hpp"

namespace fuzzy {

enum class Side { left, right };

// A one-sided membership slope; value may be +inf or -inf.
struct ExtendedSlope {
    double value = 0;
    Side side = Side::left;
    bool finite() const;
};

struct Tolerances {
    double slope = 1e-6;   // relative discrepancy that makes a kink
    double level = 1e-9;   // membership gap that makes a jump
    double zero = 1e-9;    // |slope| below this counts as a zero slope
};

// Symbolic route: reciprocal of the cut derivative at the matching level.
ExtendedSlope left_deriv(const FuzzyNum& fz, double x);
ExtendedSlope right_deriv(const FuzzyNum& fz, double x);
ExtendedSlope symbolic_slope(const FuzzyNum& fz, double x, Side side);

// Numeric route: Richardson-extrapolated one-sided differences of membership.
// The ladder starts at h0 = min(1e-3, half the distance to the nearest junction).
ExtendedSlope numeric_slope(const FuzzyNum& fz, double x, Side side);

// Abscissae where the membership function can fail to be smooth: images of
// cut breakpoints (both one-sided limits) plus support and core ends.
std::vector<double> junctions(const FuzzyNum& fz);

enum class PointKind { kink, jump };
enum class Branch { left, right, core_endpoint };
const char* to_string(PointKind k);
const char* to_string(Branch b);

struct SingularPoint {
    double x = 0;
    PointKind kind = PointKind::kink;
    Branch branch = Branch::left;
    double level = 0;         // u(x)
    double limit = 0;         // outer one-sided limit (left limit on the rising side)
    double left_limit = 0;
    double right_limit = 0;
    double left_slope = 0;
    double right_slope = 0;
};

// Non-differentiable inner points of the support, in increasing order.
std::vector<SingularPoint> classify_points(const FuzzyNum& fz, const Tolerances& tol = {});

struct ClassFlags {
    bool in_FT = false;
    bool in_FN = false;
    bool in_FC = false;
    bool in_FD = false;
};

ClassFlags class_membership(const FuzzyNum& fz, const Tolerances& tol = {});

struct MetricResult {
    double value = 0;
    double certified_gap = 0;
};

MetricResult sup_metric(const FuzzyNum& u, const FuzzyNum& v);

// Lipschitz constant of the membership function; +inf outside F_C.
double lipschitz_estimate(const FuzzyNum& fz);

}  // namespace fuzzy
