#ifndef SSFA_CASES_HPP
#define SSFA_CASES_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "approximant.hpp"
#include "error.hpp"
#include "precision.hpp"
#include "series.hpp"
#include "solver.hpp"

namespace ssfa {

template <class Real>
Real pi()
{
    using std::acos;
    return acos(Real(-1));
}

/// Gamma(h / 2) for a positive integer h. Integer arguments are factorials;
/// half-integers use Gamma(m + 1/2) = sqrt(pi) prod_{j<m} (j + 1/2).
template <class Real>
Real gamma_half_integer(unsigned twice_argument)
{
    using std::sqrt;
    if (twice_argument == 0)
        throw invalid_input("gamma has a pole at zero");
    Real result(1);
    if (twice_argument % 2 == 0) {
        for (unsigned j = 2; j < twice_argument / 2; ++j)
            result *= Real(j);
        return result;
    }
    const unsigned m = twice_argument / 2;
    for (unsigned j = 0; j < m; ++j)
        result *= Real(j) + Real(0.5);
    return result * sqrt(pi<Real>());
}

/// A benchmark expansion with a known large-variable limit.
///
/// `expansion(n)` yields the n-th coefficient (n >= 1) of the expansion as
/// written, i.e. before dividing by the leading term `amplitude`.
template <class Real>
struct case_definition {
    std::string name;
    std::string description;
    std::function<Real(int)> expansion;
    Real amplitude;
    Real exponent;
    Real substitution_power;
    std::optional<asymptotic_form<Real>> exact_limit;
    int max_order = 0;
};

namespace detail {

template <class Real>
std::function<Real(int)> literal_coefficients(std::vector<std::string> literals)
{
    return [literals = std::move(literals)](int n) { return from_decimal<Real>(literals.at(static_cast<std::size_t>(n - 1))); };
}

} // namespace detail

/// The eight built-in benchmarks, with values at the current working
/// precision. Physical variables: g (coupling), x, z = 1/(ga)^4, omega.
template <class Real>
std::vector<case_definition<Real>> builtin_cases()
{
    using std::cbrt;
    using std::sqrt;
    const Real pi_ = pi<Real>();
    const Real one(1), zero(0);
    std::vector<case_definition<Real>> cases;

    cases.push_back({"partition_function",
                     "zero-dimensional oscillator partition function Z(g), strong coupling in g",
                     [](int n) {
                         // (-1)^n Gamma(2n + 1/2) / (sqrt(pi) n!)
                         const auto un = static_cast<unsigned>(n);
                         Real v = gamma_half_integer<Real>(4 * un + 1) / sqrt(pi<Real>()) /
                                  gamma_half_integer<Real>(2 * un + 2);
                         return n % 2 == 0 ? v : Real(-v);
                     },
                     one, zero, one, asymptotic_form<Real>{from_decimal<Real>("1.022765"), Real(-1) / 4}, 40});

    cases.push_back({"anharmonic_oscillator",
                     "ground-state energy E(g) of the quartic anharmonic oscillator, E(0) = 1/2",
                     detail::literal_coefficients<Real>({"0.75", "-2.625", "20.8125", "-241.2890625",
                                                         "3580.98046875", "-63982.8134766", "1329733.72705",
                                                         "-31448214.6928", "833541603.263", "-24478940702.8"}),
                     Real(1) / 2, zero, one,
                     asymptotic_form<Real>{from_decimal<Real>("0.667986"), Real(1) / 3}, 10});

    cases.push_back({"mittag_leffler", "Mittag-Leffler function exp(x^2) erfc(x), large x",
                     [](int n) {
                         const Real v = 1 / gamma_half_integer<Real>(static_cast<unsigned>(n) + 2);
                         return n % 2 == 0 ? v : Real(-v);
                     },
                     one, zero, one, asymptotic_form<Real>{1 / sqrt(pi_), Real(-1)}, 40});

    cases.push_back({"schwinger_lattice", "vector-boson function f(z) of the lattice massive Schwinger model",
                     detail::literal_coefficients<Real>({"2", "-10", "78.66667", "-7.362222e2", "7.572929e3",
                                                         "-8.273669e4", "9.428034e5", "-1.108358e7",
                                                         "1.334636e8", "-1.637996e9"}),
                     one, zero, one, asymptotic_form<Real>{from_decimal<Real>("1.1284"), Real(1) / 4}, 10});

    cases.push_back({"schwinger_continuum",
                     "continuum Schwinger model ground-state energy E/g in x = m/g, weak coupling",
                     detail::literal_coefficients<Real>({"-0.219", "0.1907"}), from_decimal<Real>("0.5642"), zero,
                     one, asymptotic_form<Real>{from_decimal<Real>("0.6417"), Real(-1) / 3}, 2});

    cases.push_back({"harmonium", "two-electron harmonium ground-state energy E(omega), series in omega^(1/3)",
                     [](int n) {
                         if (n == 1)
                             return Real((3 + sqrt(Real(3))) / 2);
                         return Real(Real(7) / (36 * cbrt(Real(4))));
                     },
                     Real(3) / cbrt(Real(16)), Real(2) / 3, Real(1) / 3, asymptotic_form<Real>{Real(3), one}, 2});

    cases.push_back({"cusp_dimension", "planar cusp anomalous dimension Gamma(g), series in g^2",
                     [pi_](int n) {
                         if (n == 1)
                             return Real(-4 * pi_ * pi_ / 3);
                         return Real(44 * pi_ * pi_ * pi_ * pi_ / 45);
                     },
                     Real(4), Real(2), Real(2), asymptotic_form<Real>{Real(2), one}, 2});

    cases.push_back({"polymer_chain", "polymer chain expansion factor alpha(g), strong coupling",
                     [rest = detail::literal_coefficients<Real>(
                          {"-2.075385396", "6.296879676", "-25.05725072", "116.134785", "-594.71663"})](int n) {
                         return n == 1 ? Real(Real(4) / 3) : rest(n - 1);
                     },
                     one, zero, one, asymptotic_form<Real>{from_decimal<Real>("1.531"), from_decimal<Real>("0.3544")},
                     6});
    return cases;
}

template <class Real>
case_definition<Real> find_case(const std::string& name)
{
    for (auto& c : builtin_cases<Real>())
        if (c.name == name)
            return c;
    throw invalid_input("unknown case '" + name + "'");
}

/// First k coefficients of the expansion exactly as written (not normalized).
template <class Real>
std::vector<Real> expansion_coefficients(const case_definition<Real>& c, int k)
{
    if (k < 1)
        throw invalid_input("order must be positive");
    if (k > c.max_order)
        throw order_too_large(k, c.max_order);
    std::vector<Real> out;
    for (int n = 1; n <= k; ++n)
        out.push_back(c.expansion(n));
    return out;
}

/// First k normalized coefficients (leading term divided out).
template <class Real>
std::vector<Real> coefficients(const case_definition<Real>& c, int k)
{
    auto out = expansion_coefficients(c, k);
    for (auto& a : out)
        a /= c.amplitude;
    return out;
}

template <class Real>
power_series<Real> case_series(const case_definition<Real>& c, int k)
{
    return power_series<Real>(coefficients(c, k), c.amplitude, c.exponent, c.substitution_power);
}

template <class Real>
struct convergence_row {
    int k = 0;
    bool failed = false;
    std::string failure;
    factor_parameters<Real> parameters;
    Real max_relative_residual{0};
    std::optional<asymptotic_form<Real>> predicted;
    std::optional<error_report<Real>> errors;
};

template <class Real>
struct convergence_table {
    std::string case_name;
    std::vector<convergence_row<Real>> rows;
};

/// Full pipeline per order: moments, even solve, assembly, large-variable
/// limit and percentage errors. Numerical failures mark the row instead of
/// aborting the table.
template <class Real>
convergence_table<Real> make_convergence_table(const case_definition<Real>& c, std::vector<int> orders,
                                               const solver_options<Real>& opts = {})
{
    for (const int k : orders) {
        if (k < 2 || k % 2 != 0)
            throw invalid_input("table orders must be even and at least 2, got " + std::to_string(k));
        if (k > c.max_order)
            throw order_too_large(k, c.max_order);
    }
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

    convergence_table<Real> table{c.name, {}};
    for (const int k : orders) {
        convergence_row<Real> row;
        row.k = k;
        try {
            const auto series = case_series(c, k);
            const auto d = compute_log_derivatives(series);
            row.parameters = solve_even(d, opts);
            row.max_relative_residual = max_relative_residual(row.parameters, d);
            const auto approx = assemble(series, row.parameters);
            row.predicted = asymptotic(approx, opts.tol);
            if (c.exact_limit)
                row.errors = percentage_errors(*row.predicted, *c.exact_limit);
        } catch (const error& e) {
            row.failed = true;
            row.failure = e.what();
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace ssfa

#endif
