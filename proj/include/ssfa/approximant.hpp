#ifndef SSFA_APPROXIMANT_HPP
#define SSFA_APPROXIMANT_HPP

#include <cstddef>
#include <vector>

#include "complex.hpp"
#include "error.hpp"
#include "precision.hpp"
#include "series.hpp"
#include "solver.hpp"

namespace ssfa {

/// f*(x) = amplitude * x^exponent * prod_j (1 + rate_j x^p)^{power_j}
template <class Real>
struct factor_approximant {
    Real amplitude{1};
    Real exponent{0};
    Real substitution_power{1};
    factor_parameters<Real> parameters;
};

/// Leading large-variable behaviour f ~ amplitude * x^exponent.
template <class Real>
struct asymptotic_form {
    Real amplitude;
    Real exponent;
};

/// Percentage deviations of a predicted power law from a reference one.
template <class Real>
struct error_report {
    Real amplitude_error_percent;
    Real exponent_error_percent;
};

template <class Real>
factor_approximant<Real> assemble(const power_series<Real>& series, factor_parameters<Real> params)
{
    return {series.amplitude(), series.exponent(), series.substitution_power(), std::move(params)};
}

namespace detail {

// Product of base_j^{power_j} over the factors, with conjugate pairs
// combined into |z|^2 before they touch the running product.
template <class Real, class BaseFn>
complex<Real> conjugate_aware_product(const std::vector<binomial_factor<Real>>& factors, BaseFn base_of)
{
    complex<Real> product{Real(1)};
    for (std::size_t j = 0; j < factors.size(); ++j) {
        const auto& f = factors[j];
        const complex<Real> term = pow(base_of(f), f.power);
        if (f.rate.im != 0 && j + 1 < factors.size() && factors[j + 1].rate == conj(f.rate) &&
            factors[j + 1].power == conj(f.power)) {
            product *= complex<Real>{norm(term)};
            ++j;
        } else {
            product *= term;
        }
    }
    return product;
}

template <class Real>
bool is_integer(const Real& v)
{
    using std::floor;
    return floor(v) == v;
}

} // namespace detail

/// Value of the approximant at a physical point x > 0 (principal branches).
template <class Real>
Real evaluate(const factor_approximant<Real>& approx, const Real& x)
{
    using std::abs;
    using std::pow;
    if (!is_finite(x) || !(x > 0))
        throw invalid_input("evaluation point must be positive");
    const Real t = pow(x, approx.substitution_power);
    for (const auto& f : approx.parameters.factors) {
        if (f.rate.im != 0)
            continue;
        const Real base = 1 + f.rate.re * t;
        if (base == 0 || (base < 0 && !(f.power.im == 0 && detail::is_integer(f.power.re))))
            throw domain_violation("factor base 1 + A t is not positive at x = " + to_decimal(x, 8));
    }
    const complex<Real> product = detail::conjugate_aware_product<Real>(
        approx.parameters.factors, [&t](const binomial_factor<Real>& f) { return complex<Real>{Real(1)} + f.rate * complex<Real>{t}; });
    if (abs(product.im) > pow10<Real>(-10) * abs(product.re))
        throw domain_violation("approximant is not real at x = " + to_decimal(x, 8));
    return approx.amplitude * pow(x, approx.exponent) * product.re;
}

/// Taylor coefficients 1..k of prod_j (1 + rate_j t)^{power_j}, built from
/// truncated binomial series. The matching condition says these reproduce
/// the source coefficients.
template <class Real>
std::vector<Real> reexpand(const factor_approximant<Real>& approx, int k)
{
    if (k < 1)
        throw invalid_input("order must be positive");
    using cplx = complex<Real>;
    const auto len = static_cast<std::size_t>(k);
    std::vector<cplx> acc(len);
    for (const auto& f : approx.parameters.factors) {
        // binom(n, m) A^m = binom(n, m-1) A^{m-1} * (n - m + 1)/m * A
        std::vector<cplx> binomial(len);
        cplx term{Real(1)};
        for (std::size_t m = 1; m <= len; ++m) {
            term = term * (f.power - cplx{Real(static_cast<unsigned>(m - 1))}) *
                   f.rate / cplx{Real(static_cast<unsigned>(m))};
            binomial[m - 1] = term;
        }
        acc = multiply_unit_series<cplx>(acc, binomial, len);
    }
    std::vector<Real> out;
    out.reserve(len);
    for (const auto& c : acc)
        out.push_back(c.re);
    return out;
}

/// B = A prod_j A_j^{n_j},  gamma = alpha + p sum_j n_j.
template <class Real>
asymptotic_form<Real> asymptotic(const factor_approximant<Real>& approx,
                                 const tolerances<Real>& tol = tolerances<Real>::working())
{
    using std::abs;
    complex<Real> power_sum{};
    for (const auto& f : approx.parameters.factors)
        power_sum += f.power;
    const complex<Real> product = detail::conjugate_aware_product<Real>(
        approx.parameters.factors, [](const binomial_factor<Real>& f) { return f.rate; });

    if (abs(power_sum.im) > tol.imaginary * std::max(Real(1), Real(abs(power_sum.re))))
        throw domain_violation("sum of factor powers is not real");
    if (abs(product.im) > tol.imaginary * abs(product.re))
        throw domain_violation("large-variable amplitude is not real");
    return {approx.amplitude * product.re, approx.exponent + approx.substitution_power * power_sum.re};
}

template <class Real>
error_report<Real> percentage_errors(const asymptotic_form<Real>& predicted, const asymptotic_form<Real>& exact)
{
    if (exact.amplitude == 0 || exact.exponent == 0)
        throw invalid_input("percentage error undefined for a zero reference; compare absolute differences");
    return {(predicted.amplitude - exact.amplitude) / exact.amplitude * 100,
            (predicted.exponent - exact.exponent) / exact.exponent * 100};
}

} // namespace ssfa

#endif
