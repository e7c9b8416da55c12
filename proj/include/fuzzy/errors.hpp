#pragma once

#include <stdexcept>
#include <string>

namespace fuzzy {

// Malformed segment coverage, overlapping intervals and similar shape defects.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arguments outside the domain of an operation (levels outside [0,1], empty grids...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A fuzzy-number axiom does not hold; `clause` names which one.
struct ValidationError : std::runtime_error {
    ValidationError(std::string clause_name, const std::string& what)
        : std::runtime_error(what), clause(std::move(clause_name)) {}
    std::string clause;
};

struct ParseError : std::runtime_error {
    ParseError(int line_no, int column_no, const std::string& what)
        : std::runtime_error(what), line(line_no), column(column_no) {}
    int line;
    int column;
};

// The operation declines to run because a theorem premise fails.
struct RefusedError : std::runtime_error {
    RefusedError(std::string condition_name, const std::string& what)
        : std::runtime_error(what), condition(std::move(condition_name)) {}
    std::string condition;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fuzzy
