// Extrapolates the polymer expansion factor alpha(g) to strong coupling and
// prints the approximant along a few coupling values.

#include <iostream>

#include <ssfa/ssfa.hpp>

int main()
{
    using ssfa::real;
    ssfa::precision_guard precision(80);

    const ssfa::power_series<real> series({real(4) / 3, real("-2.075385396"), real("6.296879676"),
                                           real("-25.05725072"), real("116.134785"), real("-594.71663")});

    for (int k = 2; k <= series.order(); k += 2) {
        const auto truncated = series.truncated(k);
        const auto params = ssfa::solve_even(ssfa::compute_log_derivatives(truncated));
        const auto approx = ssfa::assemble(truncated, params);
        const auto limit = ssfa::asymptotic(approx);

        std::cout << "k = " << k << ": alpha(g) ~ " << limit.amplitude.str(6) << " g^" << limit.exponent.str(6)
                  << "   alpha(1) = " << ssfa::evaluate(approx, real(1)).str(8) << '\n';
    }
}
