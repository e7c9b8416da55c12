#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuzzy/calculus.hpp"
#include "fuzzy/cutcore.hpp"

namespace fuzzy {

enum class Verdict { pass, fail, not_applicable };
enum class Theorem { rap, rndp, rncp, none };
const char* to_string(Verdict v);
const char* to_string(Theorem t);

struct ConditionVerdict {
    std::string id;  // "i", "ii-1", ..., "v-2"
    Verdict verdict = Verdict::not_applicable;
    std::vector<double> witness_levels;  // levels whose zero-slope requirement failed
    std::string detail;
};

struct ConditionReport {
    std::vector<ConditionVerdict> conditions;
    bool u_in_FN = false;
    bool u_in_FC = false;
    bool w_in_FD = false;
    Theorem theorem = Theorem::none;
    std::string reason;  // why no theorem applies, empty otherwise

    const ConditionVerdict& at(const std::string& id) const;
    // Condition group passes: every part is pass or not-applicable.
    bool holds(const std::string& group) const;
};

// Evaluates the smoother conditions for w against u and picks the first of
// rap, rndp, rncp whose premises hold. Condition (iii) is reported but no
// theorem depends on it.
ConditionReport check_smoother_conditions(const FuzzyNum& u, const FuzzyNum& w, const Tolerances& tol = {});

enum class FamilyKind { w, Z, v, xi };

struct FamilySpec {
    FamilyKind kind = FamilyKind::w;
    double p = 1;
    double l = 0, r = 0;          // base levels (v and xi)
    std::optional<Expr> f, g;     // generators (Z uses f; xi uses f and g)
    double a = -1, b = 0, c = 0, d = 1;  // knots for xi, scaled by p
};

// Member of a parametric smoother family; hypotheses on parameters and
// generators are checked and a violation throws ValidationError naming it.
FuzzyNum family(const FamilySpec& spec);

struct SynthesisOptions {
    bool preserve_core = false;
    std::optional<double> lipschitz_cap;  // max membership slope of the smoother
};

// Builds a smoother for u on a support of width p: every required level
// becomes a knot where the membership of w has zero slope.
FuzzyNum synthesize_smoother(const FuzzyNum& u, double p, const SynthesisOptions& opts = {});

// Knot levels used by synthesize_smoother for the left and right branches.
struct KnotLevels {
    std::vector<double> left;
    std::vector<double> right;
};
KnotLevels required_levels(const FuzzyNum& u, const Tolerances& tol = {});

// Translates each cut curve so that the core becomes {0}.
FuzzyNum core_preserving_shift(const FuzzyNum& w);

}  // namespace fuzzy
