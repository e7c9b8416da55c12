#pragma once

#include <string>

#include "fuzzy/calculus.hpp"
#include "fuzzy/cutcore.hpp"

namespace fuzzy {

// Sup-min convolution, computed level-wise as exact cut addition on the
// merged breakpoint partition. Both inputs and the result are validated.
FuzzyNum convolve(const FuzzyNum& u, const FuzzyNum& v);

// r * v; r = 0 gives the crisp zero.
FuzzyNum scale(double r, const FuzzyNum& v);

enum class CutKind { cut, strong };

struct EndpointSpec {
    Side branch = Side::left;  // which endpoint of the level set
    CutKind kind = CutKind::cut;
    double alpha = 0;
};

// Abscissa of the requested endpoint of u.
double endpoint(const FuzzyNum& u, const EndpointSpec& spec);

// min of the memberships of u and v at their corresponding endpoints.
double endpoint_value(const FuzzyNum& u, const FuzzyNum& v, const EndpointSpec& spec);

struct Prediction {
    bool applicable = false;
    double slope = 0;  // one-sided slope of u∇v at x (may be infinite)
    double x = 0;
    double level = 0;  // level whose endpoint x is
    std::string rule;  // "zero", "harmonic", "dominance" or "unpredicted"
};

// One-sided slope of u∇v at an endpoint of one of its level sets, derived
// from slopes and level data of u and v alone. Returns rule "unpredicted"
// when no clause's premises hold.
Prediction predicted_derivative(const FuzzyNum& u, const FuzzyNum& v, const EndpointSpec& spec, Side side,
                                const Tolerances& tol = {});

}  // namespace fuzzy
