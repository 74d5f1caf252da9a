#pragma once

#include <stdexcept>
#include <string>

namespace flagprod {

// Precondition violations on caller-supplied data.
class InvalidInput : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A configured size budget (simplex count, matrix size, subset enumeration)
// was exceeded.
class ResourceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// spectral_report on a graph with an isolated vertex.
class DegenerateDegree : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// A substitution hit a pole (t_i = 1 in f(t/(1-t)), t_i = -1 in f(-t/(1+t))).
class PoleError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// 1/q is not certified to lie in the region of convergence of the growth series.
class ConvergenceError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

}  // namespace flagprod
