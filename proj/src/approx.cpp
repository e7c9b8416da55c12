#include "fuzzy/approx.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzy/convolve.hpp"
#include "fuzzy/errors.hpp"

namespace fuzzy {

bool ErrorReport::all_satisfied() const {
    return std::all_of(steps.begin(), steps.end(), [](const StepError& s) { return s.satisfied; });
}

std::vector<double> DifferentiabilityReport::failures() const {
    std::vector<double> xs;
    for (const auto& p : probes)
        if (!p.pass) xs.push_back(p.x);
    return xs;
}

DifferentiabilityReport verify_smoothness(const FuzzyNum& fz, std::size_t grid_points, const Tolerances& tol) {
    require_valid(fz);
    DifferentiabilityReport rep;
    if (fz.degenerate()) return rep;
    Interval sup = fz.support();
    std::vector<double> xs;
    for (double x : junctions(fz))
        if (x > sup.lo && x < sup.hi) xs.push_back(x);
    for (std::size_t i = 0; i < grid_points; ++i)
        xs.push_back(sup.lo + (sup.hi - sup.lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(grid_points));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (double x : xs) {
        ProbeVerdict p;
        p.x = x;
        p.value = membership(fz, x);
        p.left_limit = membership_left_limit(fz, x);
        p.right_limit = membership_right_limit(fz, x);
        p.left_slope = left_deriv(fz, x).value;
        p.right_slope = right_deriv(fz, x).value;
        if (std::max(std::fabs(p.value - p.left_limit), std::fabs(p.value - p.right_limit)) > tol.level) {
            p.pass = false;
            p.issue = "jump";
        } else if (!std::isfinite(p.left_slope) || !std::isfinite(p.right_slope) ||
                   std::fabs(p.left_slope - p.right_slope) >
                       tol.slope * (1 + std::max(std::fabs(p.left_slope), std::fabs(p.right_slope)))) {
            p.pass = false;
            p.issue = "kink";
        }
        if (!p.pass) rep.in_FD = false;
        rep.probes.push_back(p);
    }
    return rep;
}

std::vector<double> default_schedule(std::size_t n) {
    std::vector<double> s;
    for (std::size_t k = 1; k <= n; ++k) s.push_back(1.0 / static_cast<double>(k));
    return s;
}

Approximation approximate(const FuzzyNum& u, const FuzzyNum& zeta, const std::vector<double>& schedule) {
    if (schedule.empty()) throw DomainError("schedule is empty");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] > 0) || !std::isfinite(schedule[i]))
            throw DomainError("schedule entries must be positive");
        if (i > 0 && !(schedule[i] < schedule[i - 1])) throw DomainError("schedule must be strictly decreasing");
    }
    Approximation out;
    out.conditions = check_smoother_conditions(u, zeta);
    if (out.conditions.theorem == Theorem::none) {
        // A smoother outside F_D is named as such before any condition.
        std::string cond = "F_D";
        for (const auto& c : out.conditions.conditions) {
            if (!out.conditions.w_in_FD) break;
            if (c.verdict == Verdict::fail && c.id.rfind("iii", 0) != 0) {
                cond = c.id;
                break;
            }
        }
        throw RefusedError(cond, "not a smoother: " + out.conditions.reason);
    }
    out.schedule = schedule;
    const double reach = std::max(std::fabs(zeta.left()(0.0)), std::fabs(zeta.right()(0.0)));
    for (double p : schedule) {
        FuzzyNum w = scale(p, zeta);
        FuzzyNum step = convolve(u, w);
        MetricResult m = sup_metric(step, u);
        StepError e;
        e.p = p;
        e.measured = m.value;
        e.certified_gap = m.certified_gap;
        e.bound = p * reach;
        e.satisfied = e.measured <= e.bound + e.certified_gap;
        if (!out.errors.steps.empty()) {
            const StepError& prev = out.errors.steps.back();
            if (e.measured > prev.measured + prev.certified_gap + e.certified_gap) out.errors.monotone = false;
        }
        out.errors.steps.push_back(e);
        out.smoothness.push_back(verify_smoothness(step));
        out.smoothers.push_back(std::move(w));
        out.steps.push_back(std::move(step));
    }
    return out;
}

PreservationReport preservation_report(const FuzzyNum& u, const Approximation& seq) {
    PreservationReport rep;
    Interval core = u.core();
    for (const auto& s : seq.steps) {
        Interval c = s.core();
        bool same = c.lo == core.lo && c.hi == core.hi;
        rep.core_per_step.push_back(same);
        rep.core_preserved = rep.core_preserved && same;
    }
    bool applicable = !seq.smoothers.empty();
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const FuzzyNum& w = seq.smoothers[i];
        double kw = lipschitz_estimate(w);
        double ks = lipschitz_estimate(seq.steps[i]);
        rep.smoother_K.push_back(kw);
        rep.step_K.push_back(ks);
        bool premises = std::isfinite(kw) && w.base_level_left() <= u.base_level_left() + 1e-12 &&
                        w.base_level_right() <= u.base_level_right() + 1e-12;
        applicable = applicable && premises;
        if (premises && !(ks <= kw + 1e-6)) rep.lipschitz_ok = false;
    }
    rep.lipschitz_applicable = applicable;
    return rep;
}

}  // namespace fuzzy
