#ifndef SSFA_SERIES_HPP
#define SSFA_SERIES_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "precision.hpp"

namespace ssfa {

/// Truncated small-variable expansion
///
///     f(x) ~ amplitude * x^exponent * (1 + a_1 t + a_2 t^2 + ... + a_k t^k),   t = x^p
///
/// with the leading coefficient normalized to one. Expansions given with a
/// dimensional leading term are divided through by it before they get here;
/// the leading term becomes `amplitude`.
template <class Real>
class power_series {
public:
    power_series(std::vector<Real> coefficients, Real amplitude = Real(1), Real exponent = Real(0),
                 Real substitution_power = Real(1))
        : amplitude_(std::move(amplitude)), exponent_(std::move(exponent)),
          substitution_power_(std::move(substitution_power)), coefficients_(std::move(coefficients))
    {
        if (coefficients_.empty())
            throw invalid_input("power series needs at least one coefficient");
        for (const Real& a : coefficients_)
            if (!is_finite(a))
                throw invalid_input("power series coefficient is not finite");
        if (!is_finite(amplitude_) || !is_finite(exponent_))
            throw invalid_input("power series prefactor is not finite");
        if (!is_finite(substitution_power_) || !(substitution_power_ > 0))
            throw invalid_input("substitution power must be positive and finite");
    }

    const Real& amplitude() const noexcept { return amplitude_; }
    const Real& exponent() const noexcept { return exponent_; }
    const Real& substitution_power() const noexcept { return substitution_power_; }
    std::span<const Real> coefficients() const noexcept { return coefficients_; }
    int order() const noexcept { return static_cast<int>(coefficients_.size()); }

    // Leading k coefficients as a new series with the same prefactor.
    power_series truncated(int k) const
    {
        if (k < 1)
            throw invalid_input("order must be positive");
        if (k > order())
            throw order_too_large(k, order());
        return power_series({coefficients_.begin(), coefficients_.begin() + k}, amplitude_, exponent_,
                            substitution_power_);
    }

private:
    Real amplitude_;
    Real exponent_;
    Real substitution_power_;
    std::vector<Real> coefficients_;
};

/// Moments D_1..D_k of the parameter equations  sum_j n_j A_j^n = D_n.
template <class Real>
struct log_derivatives {
    std::vector<Real> values;

    int order() const noexcept { return static_cast<int>(values.size()); }
    const Real& operator[](int n) const { return values[static_cast<std::size_t>(n - 1)]; } // 1-based
};

// Taylor coefficients c_1..c_k of ln(1 + sum a_m t^m), from
// c_n = a_n - (1/n) sum_{m=1}^{n-1} m c_m a_{n-m}.
template <class Real>
std::vector<Real> series_log(std::span<const Real> a)
{
    const std::size_t k = a.size();
    std::vector<Real> c(k);
    for (std::size_t n = 1; n <= k; ++n) {
        Real acc(0);
        for (std::size_t m = 1; m < n; ++m)
            acc += Real(static_cast<unsigned>(m)) * c[m - 1] * a[n - m - 1];
        c[n - 1] = a[n - 1] - acc / Real(static_cast<unsigned>(n));
    }
    return c;
}

// D_n = (-1)^{n-1} n c_n, with c the logarithm coefficients of the first k
// terms. Since ln(1 + b t) contributes (-1)^{n-1} b^n / n to c_n, D_n is the
// power sum of the b's when the series factors into binomials.
template <class Real>
log_derivatives<Real> compute_log_derivatives(const power_series<Real>& series, int k)
{
    if (k < 1)
        throw invalid_input("order must be positive");
    if (k > series.order())
        throw order_too_large(k, series.order());
    const auto c = series_log<Real>(series.coefficients().first(static_cast<std::size_t>(k)));
    log_derivatives<Real> d;
    d.values.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        Real v = Real(static_cast<unsigned>(i + 1)) * c[i];
        d.values.push_back(i % 2 == 0 ? v : Real(-v));
    }
    return d;
}

template <class Real>
log_derivatives<Real> compute_log_derivatives(const power_series<Real>& series)
{
    return compute_log_derivatives(series, series.order());
}

// a_n -> a_n lambda^n. Equivalent to the substitution t -> lambda t.
template <class Real>
power_series<Real> rescale(const power_series<Real>& series, const Real& lambda)
{
    if (!is_finite(lambda) || !(lambda > 0))
        throw invalid_input("rescale factor must be positive and finite");
    std::vector<Real> scaled;
    scaled.reserve(static_cast<std::size_t>(series.order()));
    Real power = lambda;
    for (const Real& a : series.coefficients()) {
        scaled.push_back(a * power);
        power *= lambda;
    }
    return power_series<Real>(std::move(scaled), series.amplitude(), series.exponent(),
                              series.substitution_power());
}

// Product of two truncated series with implicit unit constant terms; the
// result keeps orders 1..k.
template <class Scalar>
std::vector<Scalar> multiply_unit_series(std::span<const Scalar> lhs, std::span<const Scalar> rhs,
                                         std::size_t k)
{
    std::vector<Scalar> out(k);
    for (std::size_t n = 1; n <= k; ++n) {
        Scalar acc = (n <= lhs.size() ? lhs[n - 1] : Scalar{}) + (n <= rhs.size() ? rhs[n - 1] : Scalar{});
        for (std::size_t m = 1; m < n; ++m)
            if (m <= lhs.size() && n - m <= rhs.size())
                acc += lhs[m - 1] * rhs[n - m - 1];
        out[n - 1] = acc;
    }
    return out;
}

} // namespace ssfa

#endif
