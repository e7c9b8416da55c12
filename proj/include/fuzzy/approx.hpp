#pragma once

#include <string>
#include <vector>

#include "fuzzy/calculus.hpp"
#include "fuzzy/cutcore.hpp"
#include "fuzzy/smoother.hpp"

namespace fuzzy {

struct StepError {
    double p = 0;
    double measured = 0;       // d∞(step, u)
    double certified_gap = 0;  // residual search error of the measurement
    double bound = 0;          // p * max(|ζ⁺(0)|, |ζ⁻(0)|)
    bool satisfied = false;    // measured <= bound + certified_gap
};

struct ErrorReport {
    std::vector<StepError> steps;
    bool monotone = true;  // measured errors nonincreasing along the schedule
    bool all_satisfied() const;
};

struct ProbeVerdict {
    double x = 0;
    bool pass = true;
    double value = 0;
    double left_limit = 0;
    double right_limit = 0;
    double left_slope = 0;
    double right_slope = 0;
    std::string issue;  // "jump" or "kink" when failing
};

struct DifferentiabilityReport {
    std::vector<ProbeVerdict> probes;
    bool in_FD = true;
    std::vector<double> failures() const;
};

// Probes every junction inside the support and a uniform interior grid of
// grid_points abscissae, comparing one-sided limits and slopes.
DifferentiabilityReport verify_smoothness(const FuzzyNum& fz, std::size_t grid_points = 1000,
                                          const Tolerances& tol = {});

std::vector<double> default_schedule(std::size_t n = 20);

struct Approximation {
    std::vector<double> schedule;
    std::vector<FuzzyNum> smoothers;  // p_n * ζ
    std::vector<FuzzyNum> steps;      // u ∇ (p_n * ζ)
    ErrorReport errors;
    std::vector<DifferentiabilityReport> smoothness;
    ConditionReport conditions;
};

// Throws RefusedError naming the failing condition when ζ is not a smoother
// of u, and DomainError for a schedule that is not positive and decreasing.
Approximation approximate(const FuzzyNum& u, const FuzzyNum& zeta, const std::vector<double>& schedule);

struct PreservationReport {
    bool core_preserved = true;
    std::vector<bool> core_per_step;
    bool lipschitz_applicable = false;  // smoother base levels do not exceed u's and K is finite
    std::vector<double> smoother_K;
    std::vector<double> step_K;
    bool lipschitz_ok = true;  // step_K <= smoother_K + 1e-6 wherever applicable
};

PreservationReport preservation_report(const FuzzyNum& u, const Approximation& seq);

}  // namespace fuzzy
