#ifndef SSFA_ERROR_HPP
#define SSFA_ERROR_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace ssfa {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested order exceeds the available expansion coefficients.
class order_too_large : public error {
public:
    order_too_large(int requested, int available)
        : error("order " + std::to_string(requested) + " exceeds the " + std::to_string(available) +
                " available coefficients"),
          requested_(requested), available_(available)
    {
    }
    int requested() const noexcept { return requested_; }
    int available() const noexcept { return available_; }

private:
    int requested_;
    int available_;
};

// Malformed arguments: non-finite inputs, zero reference values, bad grids.
class invalid_input : public error {
public:
    using error::error;
};

// The parameter equations could not be satisfied to the residual contract.
class non_convergence : public error {
public:
    non_convergence(const std::string& what, double achieved_residual)
        : error(what + " (achieved relative residual " + format_residual(achieved_residual) + ")"),
          residual_(achieved_residual)
    {
    }
    double achieved_residual() const noexcept { return residual_; }

private:
    static std::string format_residual(double r)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", r);
        return buf;
    }

    double residual_;
};

// The approximant has no real value at the requested point or limit.
class domain_violation : public error {
public:
    using error::error;
};

// Malformed JSON or schema violations in input files.
class parse_error : public error {
public:
    using error::error;
};

} // namespace ssfa

#endif
