#include "tonks/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tonks/specfun.hpp"

namespace tonks {

SpatialGrid SpatialGrid::uniform(double half_width, long n_points) {
    if (!(half_width > 0.0)) {
        throw std::domain_error("SpatialGrid: half_width must be positive");
    }
    if (n_points < 17 || n_points % 2 == 0) {
        throw std::domain_error("SpatialGrid: n_points must be odd and >= 17");
    }
    SpatialGrid g;
    g.half_width = half_width;
    const long K = (n_points - 1) / 2;
    const double h = half_width / K;
    g.x.resize(n_points);
    // Built as (a - K) * h rather than -L + a*h so the mirror identity
    // x[M-1-a] == -x[a] holds exactly in floating point; several modules
    // lean on exact evenness of the grid.
    for (long a = 0; a < n_points; ++a) g.x[a] = (a - K) * h;
    g.w = Eigen::VectorXd::Constant(n_points, h);
    g.w[0] = 0.5 * h;
    g.w[n_points - 1] = 0.5 * h;
    return g;
}

double kappa_of_energy(double energy) {
    SignedLog num = log_gamma_signed(0.75 - 0.5 * energy);
    SignedLog den = log_gamma_signed(0.25 - 0.5 * energy);
    if (num.sign == 0) {
        throw std::domain_error("kappa_of_energy: pole at an odd-state energy");
    }
    if (den.sign == 0) return 0.0;
    return 2.0 * num.sign * den.sign * std::exp(num.ln_abs - den.ln_abs);
}

namespace {

// Bracketed Brent root polish (bisection with inverse-quadratic steps).
template <class F>
double brent_root(F&& f, double a, double b, double fa, double fb, double xtol, int maxit) {
    double c = b, fc = fb;
    double d = b - a, e = b - a;
    for (int it = 0; it < maxit; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa; d = b - a; e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw SolverError("brent_root: iteration cap reached");
}

} // namespace

double solve_even_energy(double kappa, int n) {
    if (!(kappa >= 0.0) || n < 0 || n % 2 != 0) {
        throw std::domain_error("solve_even_energy: need kappa >= 0 and even n >= 0");
    }
    const double level = n + 0.5;
    if (kappa == 0.0) return level;

    // Shave both bracket ends off the flanking poles before evaluating.
    const double eps_b = 1e-9;
    const double lo = (n == 0) ? -0.5 * kappa * kappa - 2.0 : n - 0.5 + eps_b;
    const double hi = level - eps_b;
    auto g = [kappa](double e) { return kappa_of_energy(e) - kappa; };

    const double ghi = g(hi);
    if (ghi >= 0.0) {
        // kappa(E) has not yet dropped to the target a shave-width from the
        // unperturbed level; the root lies inside the sliver, and the level
        // itself is correct to better than eps_b.
        return level;
    }
    const double glo = g(lo);
    if (glo <= 0.0) {
        throw SolverError("solve_even_energy: bracket failed on [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
    }
    const double root = brent_root(g, lo, hi, glo, ghi, 1e-13, 200);
    if (!(std::abs(kappa_of_energy(root) - kappa) < 1e-10 * (1.0 + kappa))) {
        throw SolverError("solve_even_energy: residual tolerance not met");
    }
    return root;
}

namespace {

// Beyond this x^2 the Gaussian envelope has no representable mass for any
// state this library constructs; skip the special-function call entirely.
constexpr double kTailCutZ = 1600.0;

// ln psi and sign for one even state at one node, before normalization.
struct LnSample {
    double ln;
    int sign;
};

LnSample even_ln_sample(double a, double x) {
    const double z = x * x;
    if (z > kTailCutZ) return {-std::numeric_limits<double>::infinity(), 0};
    SignedLog u = kummer_u_half_ln(a, z);
    if (u.is_zero()) return {-std::numeric_limits<double>::infinity(), 0};
    return {u.ln_abs - 0.5 * z, u.sign};
}

} // namespace

double eval_eigenstate(const EigenState& state, const TrapConfig& config, double x) {
    (void)config;
    if (state.parity == Parity::odd) {
        return std::exp(state.log_norm - 0.5 * x * x) * hermite_value(state.index, x);
    }
    const double a = 0.25 - 0.5 * state.energy;
    LnSample s = even_ln_sample(a, x);
    if (s.sign == 0) return 0.0;
    return s.sign * std::exp(state.log_norm + s.ln);
}

SpatialGrid default_grid(const TrapConfig& config) {
    const int top = config.n_particles - 1;
    const double e_top = (top % 2 == 0) ? solve_even_energy(config.kappa, top) : top + 0.5;
    const double half_width = std::max(std::sqrt(std::max(2.0 * e_top, 0.0)) + 5.0, 8.0);
    const double h_max = std::min(0.02, 0.25 / std::max(config.kappa, 1.0));
    long m = std::max<long>(1025, static_cast<long>(std::ceil(2.0 * half_width / h_max)) + 1);
    if (m % 2 == 0) ++m;
    return SpatialGrid::uniform(half_width, m);
}

Spectrum build_spectrum(const TrapConfig& config, const SpatialGrid& grid) {
    if (!(config.kappa >= 0.0)) throw std::domain_error("build_spectrum: kappa must be >= 0");
    if (config.n_particles < 1) throw std::domain_error("build_spectrum: n_particles must be >= 1");

    const long M = grid.n_points();
    const long K = (M - 1) / 2;
    const int N = config.n_particles;

    Spectrum sp;
    sp.config = config;
    sp.grid = grid;
    sp.states.resize(N);
    sp.samples.resize(M, N);

    for (int n = 0; n < N; ++n) {
        EigenState st;
        st.index = n;
        st.parity = (n % 2 == 0) ? Parity::even : Parity::odd;
        st.energy = (n % 2 == 0) ? solve_even_energy(config.kappa, n) : (n + 0.5);

        if (st.parity == Parity::odd) {
            Eigen::VectorXd u(M);
            for (long a2 = 0; a2 < M; ++a2) {
                const double xv = grid.x[a2];
                u[a2] = hermite_value(n, xv) * std::exp(-0.5 * xv * xv);
            }
            const double q = (grid.w.array() * u.array().square()).sum();
            st.log_norm = -0.5 * std::log(q);
            sp.samples.col(n) = u / std::sqrt(q);
        } else {
            // Even states are even functions; evaluate x >= 0 and mirror.
            const double a_par = 0.25 - 0.5 * st.energy;
            Eigen::VectorXd ln_half(K + 1);
            Eigen::VectorXi sign_half(K + 1);
#pragma omp parallel for schedule(dynamic, 16)
            for (long i = 0; i <= K; ++i) {
                LnSample s = even_ln_sample(a_par, grid.x[K + i]);
                ln_half[i] = s.ln;
                sign_half[i] = s.sign;
            }
            double lmax = -std::numeric_limits<double>::infinity();
            for (long i = 0; i <= K; ++i) lmax = std::max(lmax, ln_half[i]);
            Eigen::VectorXd u(M);
            for (long i = 0; i <= K; ++i) {
                const double v = sign_half[i] == 0
                                     ? 0.0
                                     : sign_half[i] * std::exp(ln_half[i] - lmax);
                u[K + i] = v;
                u[K - i] = v;
            }
            const double q = (grid.w.array() * u.array().square()).sum();
            st.log_norm = -lmax - 0.5 * std::log(q);
            sp.samples.col(n) = u / std::sqrt(q);
        }
        sp.states[n] = st;
    }
    return sp;
}

} // namespace tonks
