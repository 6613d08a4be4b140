#pragma once
// Log-domain special functions for the trapped-gas eigenproblem: signed
// log-gamma, physicists' Hermite polynomials, and the Tricomi confluent
// hypergeometric function U(a, 1/2, z) on the non-negative real axis.

#include <cmath>

namespace tonks {

// A real number carried as sign * exp(ln_abs). sign == 0 means exactly zero
// (ln_abs is then ignored). Keeps products of gammas and wavefunction tails
// representable far outside double range.
struct SignedLog {
    double ln_abs = 0.0;
    int sign = 0;

    static SignedLog zero() { return {0.0, 0}; }
    static SignedLog from_value(double v) {
        if (v == 0.0) return zero();
        return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
    }
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(ln_abs); }
    bool is_zero() const { return sign == 0; }
};

// ln|Gamma(x)| with sign, valid on the whole real line. At a pole
// (non-positive integer x) returns {+inf, 0}.
SignedLog log_gamma_signed(double x);

// Physicists' Hermite polynomial H_n(x) by forward recurrence.
double hermite_value(int n, double x);

// U(a, 1/2, z) for z >= 0 and any real a. Routes between a terminating
// Hermite form (a a non-positive integer), a quadrature of the Laplace
// integral (a > 0), and downward recurrence in a seeded by the quadrature
// (non-integer a < 0).
SignedLog kummer_u_half_ln(double a, double z);

namespace detail {
// Laplace-integral evaluation of ln U(a, 1/2, z); requires a > 0, where the
// integrand is positive so the result needs no sign. Exposed for tests.
double kummer_u_half_ln_integral(double a, double z);
}

} // namespace tonks
