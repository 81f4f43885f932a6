#ifndef SSFA_SOLVER_HPP
#define SSFA_SOLVER_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "complex.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "precision.hpp"
#include "roots.hpp"
#include "series.hpp"

namespace ssfa {

/// One factor (1 + rate * t)^power of a factor approximant.
template <class Real>
struct binomial_factor {
    complex<Real> rate;
    complex<Real> power;
};

/// Control parameters matching `order` expansion terms.
template <class Real>
struct factor_parameters {
    int order = 0;
    std::vector<binomial_factor<Real>> factors;
};

template <class Real>
struct solver_options {
    tolerances<Real> tol = tolerances<Real>::working();
    int max_iterations = 200; // odd-order Newton iterations
};

/// k/2 factors for even k, (k+1)/2 for odd k.
constexpr int number_of_factors(int k)
{
    return (k + 1) / 2;
}

/// |sum_j power_j rate_j^n - D_n| for n = 1..order.
template <class Real>
std::vector<Real> residuals(const factor_parameters<Real>& params, const log_derivatives<Real>& d)
{
    if (d.order() < params.order)
        throw order_too_large(params.order, d.order());
    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(params.order));
    std::vector<complex<Real>> powers;
    for (const auto& f : params.factors)
        powers.push_back(f.rate);
    for (int n = 1; n <= params.order; ++n) {
        complex<Real> sum{};
        for (std::size_t j = 0; j < params.factors.size(); ++j) {
            sum += params.factors[j].power * powers[j];
            powers[j] *= params.factors[j].rate;
        }
        out.push_back(abs(sum - complex<Real>{d[n]}));
    }
    return out;
}

// Largest |residual_n| / max(1, |D_n|).
template <class Real>
Real max_relative_residual(const factor_parameters<Real>& params, const log_derivatives<Real>& d)
{
    using std::abs;
    const auto r = residuals(params, d);
    Real worst(0);
    for (int n = 1; n <= params.order; ++n) {
        const Real scale = std::max(Real(1), Real(abs(d[n])));
        worst = std::max(worst, Real(r[static_cast<std::size_t>(n - 1)] / scale));
    }
    return worst;
}

namespace detail {

// Descending |rate|, then descending Re(rate), then descending Im(rate).
template <class Real>
void sort_factors(std::vector<binomial_factor<Real>>& factors)
{
    std::stable_sort(factors.begin(), factors.end(), [](const auto& x, const auto& y) {
        const Real mx = abs(x.rate), my = abs(y.rate);
        if (mx != my)
            return mx > my;
        if (x.rate.re != y.rate.re)
            return x.rate.re > y.rate.re;
        return x.rate.im > y.rate.im;
    });
}

template <class Real>
void prune_factors(std::vector<binomial_factor<Real>>& factors, const Real& threshold)
{
    std::erase_if(factors, [&](const auto& f) { return abs(f.power) < threshold || abs(f.rate) == 0; });
}

// Real rates get real powers; a complex rate followed by its conjugate gets
// conjugate powers. Removes rounding asymmetry left by the complex solves.
template <class Real>
void enforce_conjugate_closure(std::vector<binomial_factor<Real>>& factors)
{
    for (std::size_t j = 0; j < factors.size(); ++j) {
        auto& f = factors[j];
        if (f.rate.im == 0) {
            f.power.im = 0;
            continue;
        }
        if (j + 1 < factors.size() && factors[j + 1].rate == conj(f.rate)) {
            auto& g = factors[j + 1];
            const complex<Real> mean{(f.power.re + g.power.re) / 2, (f.power.im - g.power.im) / 2};
            f.power = mean;
            g.power = conj(mean);
            ++j;
        }
    }
}

template <class Real>
bool all_zero(const log_derivatives<Real>& d)
{
    return std::all_of(d.values.begin(), d.values.end(), [](const Real& v) { return v == 0; });
}

template <class Real>
log_derivatives<Real> leading(const log_derivatives<Real>& d, int k)
{
    return {{d.values.begin(), d.values.begin() + k}};
}

} // namespace detail

/// Prony-type solve of  sum_{j=1}^{N} n_j A_j^m = D_m,  m = 1..2N.
///
/// The moments of a weighted power sum obey a linear recurrence whose
/// characteristic polynomial has the A_j as roots. The recurrence comes from
/// an N x N Hankel system in D_1..D_{2N}; the weights then follow from the
/// first N equations, a transposed Vandermonde system. A Hankel system that
/// is rank deficient at working precision means the moments are generated by
/// fewer factors, and N is reduced until it is not.
template <class Real>
factor_parameters<Real> solve_even(const log_derivatives<Real>& d, const solver_options<Real>& opts = {})
{
    const int k = d.order();
    if (k < 2 || k % 2 != 0)
        throw invalid_input("solve_even needs an even number of moments, got " + std::to_string(k));

    factor_parameters<Real> result;
    result.order = k;
    if (detail::all_zero(d))
        return result;

    for (int n_factors = k / 2; n_factors >= 1; --n_factors) {
        const auto n = static_cast<std::size_t>(n_factors);
        dense_matrix<Real> hankel(n);
        std::vector<Real> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                hankel(i, j) = d.values[i + j];
            rhs[i] = -d.values[i + n];
        }
        auto recurrence = solve_complete_pivoting<Real>(std::move(hankel), std::move(rhs));
        if (recurrence.solution.empty() || recurrence.pivot_ratio < opts.tol.rank)
            continue;

        // z^N + q_{N-1} z^{N-1} + ... + q_0, ascending storage.
        std::vector<Real> characteristic = std::move(recurrence.solution);
        characteristic.emplace_back(1);
        auto roots = polynomial_roots<Real>(characteristic);

        Real largest(0);
        for (const auto& r : roots)
            largest = std::max(largest, abs(r));
        std::erase_if(roots, [&](const auto& r) { return abs(r) <= opts.tol.rank * largest; });
        if (roots.empty())
            continue;

        const std::size_t m = roots.size();
        dense_matrix<complex<Real>> vandermonde(m);
        std::vector<complex<Real>> moments(m);
        for (std::size_t j = 0; j < m; ++j) {
            complex<Real> p = roots[j];
            for (std::size_t i = 0; i < m; ++i) {
                vandermonde(i, j) = p;
                p *= roots[j];
            }
        }
        for (std::size_t i = 0; i < m; ++i)
            moments[i] = complex<Real>{d.values[i]};
        auto weights = solve_complete_pivoting<Real>(std::move(vandermonde), std::move(moments));
        if (weights.solution.empty())
            continue;

        result.factors.clear();
        for (std::size_t j = 0; j < m; ++j)
            result.factors.push_back({roots[j], weights.solution[j]});
        detail::enforce_conjugate_closure(result.factors);
        detail::prune_factors(result.factors, opts.tol.prune);
        detail::sort_factors(result.factors);

        const Real achieved = max_relative_residual(result, d);
        if (achieved <= opts.tol.residual)
            return result;
        throw non_convergence("even-order parameter equations not satisfied", to_double(achieved));
    }
    throw non_convergence("moment sequence admits no factor representation", 1.0);
}

/// Odd order k: N = (k+1)/2 factors with the first rate pinned to one.
///
/// Damped (Levenberg) Newton on the k unknowns n_1, A_2..A_N, n_2..n_N.
template <class Real>
factor_parameters<Real> solve_odd(const log_derivatives<Real>& d, const solver_options<Real>& opts = {})
{
    const int k = d.order();
    if (k < 1 || k % 2 == 0)
        throw invalid_input("solve_odd needs an odd number of moments, got " + std::to_string(k));

    using cplx = complex<Real>;
    const cplx one{Real(1)};
    factor_parameters<Real> result;
    result.order = k;

    if (k == 1) {
        result.factors.push_back({one, cplx{d[1]}});
        detail::prune_factors(result.factors, opts.tol.prune);
        return result;
    }

    // With A_1 = 1 the differences D_{m+1} - D_m = sum_{j>1} n_j (A_j - 1) A_j^m
    // form an even-order moment problem, which gives the starting point.
    // Fall back to the even solution for D_1..D_{k-1} plus a weightless
    // factor at rate one when that reduction is unusable.
    cplx pinned_power{};
    std::vector<binomial_factor<Real>> free;
    bool seeded = false;
    try {
        log_derivatives<Real> differences;
        for (int m = 1; m < k; ++m)
            differences.values.push_back(d[m + 1] - d[m]);
        const auto reduced = solve_even(differences, opts);
        cplx sum{};
        for (const auto& f : reduced.factors) {
            const cplx shifted = f.rate - one;
            if (abs(shifted) <= opts.tol.rank)
                throw non_convergence("factor at rate one", 1.0);
            const cplx power = f.power / shifted;
            free.push_back({f.rate, power});
            sum += power * f.rate;
        }
        pinned_power = cplx{d[1]} - sum;
        seeded = true;
    } catch (const non_convergence&) {
        free.clear();
    }
    if (!seeded) {
        for (const auto& f : solve_even(detail::leading(d, k - 1), opts).factors) {
            if (abs(f.rate - one) <= opts.tol.rank)
                pinned_power += f.power;
            else
                free.push_back(f);
        }
    }

    const auto assemble = [&](const cplx& pinned, const std::vector<binomial_factor<Real>>& others) {
        factor_parameters<Real> p;
        p.order = k;
        p.factors.push_back({one, pinned});
        p.factors.insert(p.factors.end(), others.begin(), others.end());
        return p;
    };
    const auto residual_vector = [&](const factor_parameters<Real>& p) {
        std::vector<cplx> r(static_cast<std::size_t>(k));
        for (int n = 1; n <= k; ++n) {
            cplx sum{};
            for (const auto& f : p.factors)
                sum += f.power * pow(f.rate, static_cast<unsigned>(n));
            r[static_cast<std::size_t>(n - 1)] = sum - cplx{d[n]};
        }
        return r;
    };
    const auto merit = [&](const std::vector<cplx>& r) {
        using std::abs;
        Real worst(0);
        for (int n = 1; n <= k; ++n)
            worst = std::max(worst, Real(abs(r[static_cast<std::size_t>(n - 1)]) /
                                         std::max(Real(1), Real(abs(d[n])))));
        return worst;
    };

    // Unknown layout: [pinned power, rate_1, power_1, rate_2, power_2, ...].
    std::vector<cplx> x{pinned_power};
    for (const auto& f : free) {
        x.push_back(f.rate);
        x.push_back(f.power);
    }
    const auto unpack = [&](const std::vector<cplx>& v) {
        std::vector<binomial_factor<Real>> others;
        for (std::size_t i = 1; i + 1 < v.size(); i += 2)
            others.push_back({v[i], v[i + 1]});
        return assemble(v[0], others);
    };

    auto current = unpack(x);
    auto r = residual_vector(current);
    Real best = merit(r);
    Real damping(0);
    const std::size_t unknowns = x.size();

    for (int it = 0; it < opts.max_iterations && best > opts.tol.residual; ++it) {
        // Jacobian rows n = 1..k.
        std::vector<std::vector<cplx>> jac(static_cast<std::size_t>(k), std::vector<cplx>(unknowns));
        for (int n = 1; n <= k; ++n) {
            auto& row = jac[static_cast<std::size_t>(n - 1)];
            row[0] = one;
            for (std::size_t i = 1; i + 1 < unknowns; i += 2) {
                const cplx prev = pow(x[i], static_cast<unsigned>(n - 1));
                row[i] = x[i + 1] * cplx{Real(n)} * prev;
                row[i + 1] = prev * x[i];
            }
        }
        // Normal equations (J^H J + mu I) dx = -J^H r.
        dense_matrix<cplx> normal(unknowns);
        std::vector<cplx> gradient(unknowns);
        Real diag_max(0);
        for (std::size_t a = 0; a < unknowns; ++a) {
            for (std::size_t b = 0; b < unknowns; ++b) {
                cplx s{};
                for (std::size_t n = 0; n < jac.size(); ++n)
                    s += conj(jac[n][a]) * jac[n][b];
                normal(a, b) = s;
            }
            cplx g{};
            for (std::size_t n = 0; n < jac.size(); ++n)
                g += conj(jac[n][a]) * r[n];
            gradient[a] = -g;
            diag_max = std::max(diag_max, normal(a, a).re);
        }

        bool accepted = false;
        for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
            dense_matrix<cplx> lhs = normal;
            for (std::size_t a = 0; a < unknowns; ++a)
                lhs(a, a) += cplx{damping * diag_max};
            auto step = solve_complete_pivoting<Real>(std::move(lhs), gradient);
            if (!step.solution.empty()) {
                std::vector<cplx> trial = x;
                for (std::size_t a = 0; a < unknowns; ++a)
                    trial[a] += step.solution[a];
                auto trial_params = unpack(trial);
                auto trial_r = residual_vector(trial_params);
                const Real m = merit(trial_r);
                if (m < best) {
                    x = std::move(trial);
                    current = std::move(trial_params);
                    r = std::move(trial_r);
                    best = m;
                    damping /= 10;
                    accepted = true;
                    break;
                }
            }
            damping = damping == 0 ? pow10<Real>(-12) : Real(damping * 10);
        }
        if (!accepted)
            break;
    }

    result = current;
    detail::enforce_conjugate_closure(result.factors);
    detail::prune_factors(result.factors, opts.tol.prune);
    detail::sort_factors(result.factors);
    const Real achieved = max_relative_residual(result, d);
    if (achieved > opts.tol.residual)
        throw non_convergence("odd-order Newton iteration did not converge", to_double(achieved));
    return result;
}

/// Dispatches on parity.
template <class Real>
factor_parameters<Real> solve(const log_derivatives<Real>& d, const solver_options<Real>& opts = {})
{
    return d.order() % 2 == 0 ? solve_even(d, opts) : solve_odd(d, opts);
}

} // namespace ssfa

#endif
