#ifndef SSFA_PRECISION_HPP
#define SSFA_PRECISION_HPP

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/mpfr.hpp>

namespace ssfa {

// Variable-precision real used on every solver path. Expression templates
// are disabled so that `auto` and generic code behave like plain doubles.
using real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned default_precision_digits = 80;
inline constexpr unsigned min_precision_digits = 30;
inline constexpr unsigned max_precision_digits = 1000;

template <class Real>
inline constexpr bool is_builtin_float_v = std::is_floating_point_v<Real>;

// Decimal digits carried by freshly constructed values of Real.
template <class Real>
unsigned working_digits()
{
    if constexpr (is_builtin_float_v<Real>)
        return std::numeric_limits<Real>::digits10;
    else
        return Real::default_precision();
}

// Sets the process-wide default precision of `real` for the lifetime of the
// guard. Values constructed earlier keep their own precision.
class precision_guard {
public:
    explicit precision_guard(unsigned digits) : saved_(real::default_precision())
    {
        real::default_precision(digits);
    }
    ~precision_guard() { real::default_precision(saved_); }

    precision_guard(const precision_guard&) = delete;
    precision_guard& operator=(const precision_guard&) = delete;

private:
    unsigned saved_;
};

template <class Real>
Real pow10(int exponent)
{
    using std::pow;
    return pow(Real(10), exponent);
}

inline bool is_decimal_literal(const std::string& text)
{
    std::size_t i = 0;
    const auto digits = [&] {
        const std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        return i - start;
    };
    if (i < text.size() && (text[i] == '+' || text[i] == '-'))
        ++i;
    std::size_t mantissa = digits();
    if (i < text.size() && text[i] == '.') {
        ++i;
        mantissa += digits();
    }
    if (mantissa == 0)
        return false;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-'))
            ++i;
        if (digits() == 0)
            return false;
    }
    return i == text.size();
}

// Parses a decimal literal at the working precision of Real.
template <class Real>
Real from_decimal(const std::string& text)
{
    if (!is_decimal_literal(text))
        throw std::invalid_argument("not a decimal number: '" + text + "'");
    if constexpr (is_builtin_float_v<Real>)
        return static_cast<Real>(std::stold(text));
    else
        return Real(text);
}

// Decimal rendering with `digits` significant digits (0: working precision).
template <class Real>
std::string to_decimal(const Real& x, unsigned digits = 0)
{
    if (digits == 0)
        digits = working_digits<Real>() + (is_builtin_float_v<Real> ? 2 : 0);
    if constexpr (is_builtin_float_v<Real>) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", static_cast<int>(digits), static_cast<double>(x));
        return buf;
    } else {
        return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
    }
}

template <class Real>
double to_double(const Real& x)
{
    return static_cast<double>(x);
}

template <class Real>
bool is_finite(const Real& x)
{
    using std::isfinite;
    using boost::multiprecision::isfinite;
    return isfinite(x);
}

// Precision-derived thresholds. The fractions are chosen so that 80 digits
// give residual 1e-30, rank cut 1e-48, weight pruning 1e-25 and asymptotic
// imaginary tolerance 1e-20.
template <class Real>
struct tolerances {
    Real residual;
    Real rank;
    Real prune;
    Real imaginary;

    static tolerances for_digits(unsigned digits)
    {
        const int d = static_cast<int>(digits);
        return {pow10<Real>(-(3 * d) / 8), pow10<Real>(-(3 * d) / 5), pow10<Real>(-(5 * d) / 16),
                pow10<Real>(-d / 4)};
    }

    static tolerances working() { return for_digits(working_digits<Real>()); }
};

// Reads SSFA_PRECISION, falling back to the built-in default. Returns 0 when
// the variable is set but unusable.
inline unsigned precision_from_environment()
{
    const char* env = std::getenv("SSFA_PRECISION");
    if (env == nullptr || *env == '\0')
        return default_precision_digits;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < static_cast<long>(min_precision_digits) ||
        v > static_cast<long>(max_precision_digits))
        return 0;
    return static_cast<unsigned>(v);
}

} // namespace ssfa

#endif
