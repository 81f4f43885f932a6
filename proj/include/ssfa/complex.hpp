#ifndef SSFA_COMPLEX_HPP
#define SSFA_COMPLEX_HPP

#include <cmath>

namespace ssfa {

// Minimal complex arithmetic over an arbitrary real type. std::complex is
// only specified for the built-in floating types, and the mpfr backend has
// no complex counterpart without libmpc.
template <class Real>
struct complex {
    Real re{0};
    Real im{0};

    complex() = default;
    complex(Real r) : re(std::move(r)), im(0) {}
    complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return im == 0; }

    complex& operator+=(const complex& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    complex& operator-=(const complex& o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    complex& operator*=(const complex& o)
    {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    complex& operator/=(const complex& o)
    {
        // Smith's algorithm
        using std::abs;
        if (abs(o.re) >= abs(o.im)) {
            const Real ratio = o.im / o.re;
            const Real den = o.re + o.im * ratio;
            Real r = (re + im * ratio) / den;
            im = (im - re * ratio) / den;
            re = std::move(r);
        } else {
            const Real ratio = o.re / o.im;
            const Real den = o.re * ratio + o.im;
            Real r = (re * ratio + im) / den;
            im = (im * ratio - re) / den;
            re = std::move(r);
        }
        return *this;
    }

    friend complex operator+(complex a, const complex& b) { return a += b; }
    friend complex operator-(complex a, const complex& b) { return a -= b; }
    friend complex operator*(complex a, const complex& b) { return a *= b; }
    friend complex operator/(complex a, const complex& b) { return a /= b; }
    friend complex operator-(const complex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const complex& a, const complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class Real>
complex<Real> conj(const complex<Real>& z)
{
    return {z.re, -z.im};
}

template <class Real>
Real norm(const complex<Real>& z)
{
    return z.re * z.re + z.im * z.im;
}

template <class Real>
Real abs(const complex<Real>& z)
{
    using std::abs;
    using std::sqrt;
    Real a = abs(z.re);
    Real b = abs(z.im);
    if (a < b)
        std::swap(a, b);
    if (a == 0)
        return a;
    const Real q = b / a;
    return a * sqrt(1 + q * q);
}

template <class Real>
Real arg(const complex<Real>& z)
{
    using std::atan2;
    return atan2(z.im, z.re);
}

// Principal branch.
template <class Real>
complex<Real> log(const complex<Real>& z)
{
    using std::log;
    return {log(abs(z)), arg(z)};
}

template <class Real>
complex<Real> exp(const complex<Real>& z)
{
    using std::cos;
    using std::exp;
    using std::sin;
    const Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

// Principal branch z^w = exp(w log z); 0^w = 0 for Re w > 0.
template <class Real>
complex<Real> pow(const complex<Real>& z, const complex<Real>& w)
{
    if (z.re == 0 && z.im == 0)
        return complex<Real>{};
    if (w.im == 0 && z.im == 0 && z.re > 0) {
        using std::pow;
        return complex<Real>{pow(z.re, w.re)};
    }
    return exp(w * log(z));
}

template <class Real>
complex<Real> pow(complex<Real> z, unsigned n)
{
    complex<Real> result{Real(1)};
    while (n != 0) {
        if (n & 1u)
            result *= z;
        z *= z;
        n >>= 1;
    }
    return result;
}

// Magnitude used for pivoting; overloaded so generic elimination works on
// both real and complex scalars.
template <class Real>
Real magnitude(const Real& x)
{
    using std::abs;
    return abs(x);
}

template <class Real>
Real magnitude(const complex<Real>& z)
{
    return abs(z);
}

} // namespace ssfa

#endif
