#ifndef SSFA_LINALG_HPP
#define SSFA_LINALG_HPP

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "complex.hpp"

namespace ssfa {

// Dense row-major square matrix; only what the small solves here need.
template <class Scalar>
class dense_matrix {
public:
    explicit dense_matrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const noexcept { return n_; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

private:
    std::size_t n_;
    std::vector<Scalar> data_;
};

template <class Scalar, class Real>
struct elimination_result {
    std::vector<Scalar> solution;
    // Smallest over largest pivot magnitude; zero for exactly singular input.
    Real pivot_ratio;
};

// Gaussian elimination with complete pivoting. Complete pivoting makes the
// pivot ratio a usable rank indicator for the Hankel systems.
template <class Real, class Scalar>
elimination_result<Scalar, Real> solve_complete_pivoting(dense_matrix<Scalar> m, std::vector<Scalar> rhs)
{
    const std::size_t n = m.size();
    std::vector<std::size_t> col(n);
    std::iota(col.begin(), col.end(), std::size_t{0});

    Real largest(0);
    Real smallest(0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        Real best(-1);
        for (std::size_t r = k; r < n; ++r)
            for (std::size_t c = k; c < n; ++c) {
                const Real v = magnitude(m(r, c));
                if (v > best) {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        if (k == 0) {
            largest = best;
            smallest = best;
        } else if (best < smallest) {
            smallest = best;
        }
        if (best == 0)
            return {{}, Real(0)};

        if (pr != k) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(m(pr, c), m(k, c));
            std::swap(rhs[pr], rhs[k]);
        }
        if (pc != k) {
            for (std::size_t r = 0; r < n; ++r)
                std::swap(m(r, pc), m(r, k));
            std::swap(col[pc], col[k]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const Scalar f = m(r, k) / m(k, k);
            if (f == Scalar{})
                continue;
            for (std::size_t c = k; c < n; ++c)
                m(r, c) -= f * m(k, c);
            rhs[r] -= f * rhs[k];
        }
    }

    std::vector<Scalar> y(n);
    for (std::size_t i = n; i-- > 0;) {
        Scalar acc = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c)
            acc -= m(i, c) * y[c];
        y[i] = acc / m(i, i);
    }
    std::vector<Scalar> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[col[i]] = y[i];
    return {std::move(x), n == 0 ? Real(1) : Real(smallest / largest)};
}

} // namespace ssfa

#endif
