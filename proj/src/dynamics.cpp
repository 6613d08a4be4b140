#include "tonks/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace tonks {

namespace {

constexpr double kBoundaryTarget = 1e-6;
constexpr int kMaxBoxExponent = 22;

long transform_points(const SpatialGrid& box) {
    return box.n_points() - 1;
}

bool is_power_of_two(long v) {
    return v > 0 && (v & (v - 1)) == 0;
}

} // namespace

SpatialGrid plan_expansion_box(const Spectrum& spectrum, double t_max) {
    if (!(t_max >= 0.0))
        throw std::invalid_argument("expansion time must be nonnegative");
    const double h = spectrum.grid.spacing();
    const double kappa = spectrum.config.kappa;
    const double e_top = spectrum.states.back().energy;

    double need = spectrum.grid.half_width;
    need = std::max(need, std::sqrt(2.0 * std::max(e_top, 0.0)) * (1.0 + t_max) + 5.0);
    if (!spectrum.states.empty() && spectrum.states.front().energy < 0.0) {
        // cusp tail: |psi~(k)|^2 ~ 2 kappa^3 / (pi k^4) arrives at x = k t,
        // keep its ballistic image below the boundary target
        const double cusp =
            std::pow(2.0 * std::pow(kappa, 3) * std::pow(t_max, 3) /
                         (std::numbers::pi * kBoundaryTarget),
                     0.25);
        need = std::max(need, cusp);
    }
    // resonance guard: a momentum k returns to its launch point at t = 2L/k
    // on a periodic box, so the largest represented momentum pi/h must stay
    // below the loop threshold 2L/t with margin
    need = std::max(need, 0.625 * std::numbers::pi * t_max / h);

    int p = 5;
    while (p <= kMaxBoxExponent && h * static_cast<double>(1L << (p - 1)) < need) ++p;
    if (p > kMaxBoxExponent)
        throw SolverError("expansion box exceeds the supported transform size");
    return SpatialGrid::uniform(h * static_cast<double>(1L << (p - 1)), (1L << p) + 1);
}

Eigen::MatrixXcd evolve_states(const Spectrum& spectrum, const SpatialGrid& box,
                               double t) {
    const long n2 = transform_points(box);
    if (!is_power_of_two(n2))
        throw std::invalid_argument("expansion box must hold 2^p + 1 points");
    const double h = spectrum.grid.spacing();
    // spacing() differences of rounded node products reach ~L/h * 1e-16
    if (std::abs(box.spacing() - h) > 1e-9 * h)
        throw std::invalid_argument("expansion box must keep the static spacing");
    const long ms = spectrum.grid.n_points();
    const long offset = n2 / 2 - (ms - 1) / 2;
    if (offset < 0)
        throw std::invalid_argument("expansion box smaller than the static grid");

    const int n_states = spectrum.n_states();
    Eigen::MatrixXcd waves(box.n_points(), n_states);

    Eigen::VectorXcd phase(n2);
    const double dk = 2.0 * std::numbers::pi / (h * static_cast<double>(n2));
    for (long m = 0; m < n2; ++m) {
        const double k = dk * static_cast<double>(m <= n2 / 2 ? m : m - n2);
        phase[m] = std::polar(1.0, -0.5 * k * k * t);
    }

    Eigen::FFT<double> fft;
    Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(n2);
    Eigen::VectorXcd freq(n2), out(n2);
    for (int n = 0; n < n_states; ++n) {
        padded.setZero();
        for (long a = 0; a < ms; ++a) {
            const long idx = offset + a;
            if (idx < n2) // +L is the periodic twin of -L, not a transform slot
                padded[idx] = spectrum.samples(a, n);
        }
        fft.fwd(freq, padded);
        freq.array() *= phase.array();
        fft.inv(out, freq);
        waves.col(n).head(n2) = out;
        waves(box.n_points() - 1, n) = out[0]; // periodic image of -L at +L
    }
    return waves;
}

EvolutionResult free_evolve(const Spectrum& spectrum, const std::vector<double>& times) {
    if (times.empty())
        throw std::invalid_argument("free_evolve needs at least one time");
    for (double t : times)
        if (!(t >= 0.0))
            throw std::invalid_argument("expansion times must be nonnegative");

    EvolutionResult result;
    result.times = times;
    result.grid = plan_expansion_box(spectrum, *std::max_element(times.begin(), times.end()));
    result.snapshots.reserve(times.size());
    for (double t : times) {
        Eigen::MatrixXcd waves = evolve_states(spectrum, result.grid, t);
        Eigen::VectorXd rho = waves.rowwise().squaredNorm();
        if (std::max(rho[0], rho[rho.size() - 1]) > kBoundaryTarget)
            throw SolverError("expanding cloud reached the box boundary");
        result.snapshots.push_back(std::move(rho));
    }
    return result;
}

double fringe_visibility(const SpatialGrid& grid, const Eigen::VectorXd& density,
                         double window_half_width) {
    if (density.size() != grid.n_points())
        throw std::invalid_argument("density does not match its grid");
    if (window_half_width > grid.half_width * (1.0 + 1e-12))
        throw std::invalid_argument("visibility window extends past the grid");

    const long m = grid.n_points();
    long lo = m, hi = -1;
    for (long a = 0; a < m; ++a) {
        if (std::abs(grid.x[a]) <= window_half_width) {
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
    }
    if (hi - lo + 1 < 3)
        throw std::invalid_argument("visibility window holds fewer than 3 grid points");

    double peak = -1.0, trough = -1.0;
    for (long a = lo + 1; a < hi; ++a) {
        const double v = density[a];
        if (v > density[a - 1] && v > density[a + 1]) peak = std::max(peak, v);
        if (v < density[a - 1] && v < density[a + 1])
            trough = trough < 0.0 ? v : std::min(trough, v);
    }
    if (peak < 0.0 || trough < 0.0) return 0.0;
    const double denom = peak + trough;
    return denom > 0.0 ? (peak - trough) / denom : 0.0;
}

} // namespace tonks
