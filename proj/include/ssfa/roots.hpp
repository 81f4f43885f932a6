#ifndef SSFA_ROOTS_HPP
#define SSFA_ROOTS_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "complex.hpp"
#include "error.hpp"
#include "linalg.hpp"

namespace ssfa {

namespace detail {

// Parlett-Reinsch balancing with radix 2: a diagonal similarity that
// equalizes row and column norms without rounding error.
template <class Real>
void balance(dense_matrix<Real>& a)
{
    using std::abs;
    const std::size_t n = a.size();
    const Real radix(2);
    const Real radix_sq = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            Real c(0), r(0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    c += abs(a(j, i));
                    r += abs(a(i, j));
                }
            if (c == 0 || r == 0)
                continue;
            Real g = r / radix;
            Real f(1);
            const Real s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix_sq;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix_sq;
            }
            if ((c + r) / f < Real(0.95) * s) {
                done = false;
                const Real inv = 1 / f;
                for (std::size_t j = 0; j < n; ++j)
                    a(i, j) *= inv;
                for (std::size_t j = 0; j < n; ++j)
                    a(j, i) *= f;
            }
        }
    }
}

template <class Real>
Real copy_sign(const Real& magnitude_of, const Real& sign_of)
{
    using std::abs;
    return sign_of >= 0 ? Real(abs(magnitude_of)) : Real(-abs(magnitude_of));
}

// Eigenvalues of an upper Hessenberg matrix by the Francis double-shift QR
// iteration. Indices are 1-based internally to keep the shift bookkeeping
// readable; the matrix is copied into an (n+1)x(n+1) workspace.
template <class Real>
std::vector<complex<Real>> hessenberg_eigenvalues(const dense_matrix<Real>& h, int max_iterations = 100)
{
    using std::abs;
    using std::sqrt;
    const int n = static_cast<int>(h.size());
    dense_matrix<Real> a(static_cast<std::size_t>(n + 1));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            a(i, j) = h(i - 1, j - 1);
    auto at = [&a](int i, int j) -> Real& { return a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };

    const Real eps = std::numeric_limits<Real>::epsilon();
    std::vector<Real> wr(static_cast<std::size_t>(n + 1)), wi(static_cast<std::size_t>(n + 1));
    auto out_r = [&wr](int i) -> Real& { return wr[static_cast<std::size_t>(i)]; };
    auto out_i = [&wi](int i) -> Real& { return wi[static_cast<std::size_t>(i)]; };

    Real anorm(0);
    for (int i = 1; i <= n; ++i)
        for (int j = std::max(i - 1, 1); j <= n; ++j)
            anorm += abs(at(i, j));

    int nn = n;
    Real t(0);
    Real p, q, r, s, w, x, y, z;
    while (nn >= 1) {
        int its = 0;
        int l = 1;
        do {
            for (l = nn; l >= 2; --l) {
                s = abs(at(l - 1, l - 1)) + abs(at(l, l));
                if (s == 0)
                    s = anorm;
                if (abs(at(l, l - 1)) <= eps * s) {
                    at(l, l - 1) = 0;
                    break;
                }
            }
            x = at(nn, nn);
            if (l == nn) { // one root found
                out_r(nn) = x + t;
                out_i(nn--) = 0;
            } else {
                y = at(nn - 1, nn - 1);
                w = at(nn, nn - 1) * at(nn - 1, nn);
                if (l == nn - 1) { // two roots found
                    p = Real(0.5) * (y - x);
                    q = p * p + w;
                    z = sqrt(abs(q));
                    x += t;
                    if (q >= 0) {
                        z = p + copy_sign(z, p);
                        out_r(nn - 1) = out_r(nn) = x + z;
                        if (z != 0)
                            out_r(nn) = x - w / z;
                        out_i(nn - 1) = out_i(nn) = 0;
                    } else {
                        out_r(nn - 1) = out_r(nn) = x + p;
                        out_i(nn) = z;
                        out_i(nn - 1) = -z;
                    }
                    nn -= 2;
                } else {
                    if (its == max_iterations)
                        throw non_convergence("QR iteration did not converge for companion matrix", 1.0);
                    if (its > 0 && its % 10 == 0) { // exceptional shift
                        t += x;
                        for (int i = 1; i <= nn; ++i)
                            at(i, i) -= x;
                        s = abs(at(nn, nn - 1)) + abs(at(nn - 1, nn - 2));
                        y = x = Real(0.75) * s;
                        w = Real(-0.4375) * s * s;
                    }
                    ++its;
                    int m = nn - 2;
                    for (; m >= l; --m) {
                        z = at(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / at(m + 1, m) + at(m, m + 1);
                        q = at(m + 1, m + 1) - z - r - s;
                        r = at(m + 2, m + 1);
                        s = abs(p) + abs(q) + abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l)
                            break;
                        const Real u = abs(at(m, m - 1)) * (abs(q) + abs(r));
                        const Real v = abs(p) * (abs(at(m - 1, m - 1)) + abs(z) + abs(at(m + 1, m + 1)));
                        if (u <= eps * v)
                            break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        at(i, i - 2) = 0;
                        if (i != m + 2)
                            at(i, i - 3) = 0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = at(k, k - 1);
                            q = at(k + 1, k - 1);
                            r = 0;
                            if (k != nn - 1)
                                r = at(k + 2, k - 1);
                            x = abs(p) + abs(q) + abs(r);
                            if (x != 0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = copy_sign(Real(sqrt(p * p + q * q + r * r)), p);
                        if (s != 0) {
                            if (k == m) {
                                if (l != m)
                                    at(k, k - 1) = -at(k, k - 1);
                            } else {
                                at(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; ++j) {
                                p = at(k, j) + q * at(k + 1, j);
                                if (k != nn - 1) {
                                    p += r * at(k + 2, j);
                                    at(k + 2, j) -= p * z;
                                }
                                at(k + 1, j) -= p * y;
                                at(k, j) -= p * x;
                            }
                            const int mmin = nn < k + 3 ? nn : k + 3;
                            for (int i = l; i <= mmin; ++i) {
                                p = x * at(i, k) + y * at(i, k + 1);
                                if (k != nn - 1) {
                                    p += z * at(i, k + 2);
                                    at(i, k + 2) -= p * r;
                                }
                                at(i, k + 1) -= p * q;
                                at(i, k) -= p;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }

    std::vector<complex<Real>> ev;
    ev.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        ev.emplace_back(out_r(i), out_i(i));
    return ev;
}

// Horner evaluation of p and p' for ascending coefficients.
template <class Real, class Scalar>
std::pair<Scalar, Scalar> evaluate_with_derivative(std::span<const Real> c, const Scalar& z)
{
    Scalar p{c.back()};
    Scalar dp{};
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        dp = dp * z + p;
        p = p * z + Scalar{c[i]};
    }
    return {p, dp};
}

template <class Real, class Scalar>
Scalar polish_root(std::span<const Real> c, Scalar z, int max_steps = 60)
{
    const Real eps = std::numeric_limits<Real>::epsilon();
    auto [p, dp] = evaluate_with_derivative<Real>(c, z);
    Real best = magnitude(p);
    for (int step = 0; step < max_steps && best != 0; ++step) {
        if (dp == Scalar{})
            break;
        const Scalar next = z - p / dp;
        auto [pn, dpn] = evaluate_with_derivative<Real>(c, next);
        const Real mag = magnitude(pn);
        if (!(mag < best))
            break;
        const Real change = magnitude(Scalar(next - z));
        z = next;
        p = pn;
        dp = dpn;
        best = mag;
        if (change <= eps * magnitude(z))
            break;
    }
    return z;
}

} // namespace detail

/// Roots of  c[0] + c[1] z + ... + c[N] z^N  with real coefficients.
///
/// Eigenvalues of the balanced companion matrix, each then polished by
/// Newton's method on the original polynomial. Real roots stay real and
/// complex roots are returned as exact conjugate pairs (positive imaginary
/// part first).
template <class Real>
std::vector<complex<Real>> polynomial_roots(std::span<const Real> coefficients)
{
    std::size_t degree = coefficients.size();
    while (degree > 0 && coefficients[degree - 1] == 0)
        --degree;
    if (degree <= 1)
        return {};
    const auto c = coefficients.first(degree);
    const std::size_t n = degree - 1;

    dense_matrix<Real> companion(n);
    for (std::size_t j = 0; j < n; ++j)
        companion(0, j) = -c[n - 1 - j] / c[n];
    for (std::size_t i = 1; i < n; ++i)
        companion(i, i - 1) = Real(1);
    detail::balance(companion);

    std::vector<complex<Real>> roots;
    roots.reserve(n);
    for (const auto& ev : detail::hessenberg_eigenvalues(companion)) {
        if (ev.im == 0) {
            roots.emplace_back(detail::polish_root<Real>(c, ev.re));
        } else if (ev.im > 0) {
            const complex<Real> z = detail::polish_root<Real>(c, ev);
            roots.push_back(z);
            roots.push_back(conj(z));
        }
    }
    return roots;
}

} // namespace ssfa

#endif
