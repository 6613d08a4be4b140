#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tonks/dynamics.hpp"
#include "tonks/observables.hpp"

#include <cmath>
#include <numbers>

using namespace tonks;

namespace {

double quadrature(const SpatialGrid& g, const Eigen::VectorXd& f) {
    return (g.w.array() * f.array()).sum();
}

double second_moment(const SpatialGrid& g, const Eigen::VectorXd& f) {
    return (g.w.array() * g.x.array().square() * f.array()).sum();
}

// central-difference kinetic energy summed over evolved states
double stencil_kinetic(const SpatialGrid& g, const Eigen::MatrixXcd& waves) {
    const double inv2h = 0.5 / g.spacing();
    double total = 0.0;
    for (long n = 0; n < waves.cols(); ++n)
        for (long a = 1; a + 1 < waves.rows(); ++a)
            total += 0.5 * g.w[a] *
                     std::norm((waves(a + 1, n) - waves(a - 1, n)) * inv2h);
    return total;
}

} // namespace

TEST_CASE("free gaussian spreads to width sqrt(1 + t^2)") {
    TrapConfig cfg{0.0, 1};
    Spectrum sp = build_spectrum(cfg, default_grid(cfg));
    EvolutionResult res = free_evolve(sp, {0.0, 2.0});
    const long center = (res.grid.n_points() - 1) / 2;

    CHECK(quadrature(res.grid, res.snapshots[0]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(quadrature(res.grid, res.snapshots[1]) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(std::sqrt(2.0 * second_moment(res.grid, res.snapshots[0])) ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::sqrt(2.0 * second_moment(res.grid, res.snapshots[1])) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-3));

    CHECK(res.snapshots[0][center] ==
          doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-8));
    CHECK(res.snapshots[1][center] ==
          doctest::Approx(1.0 / std::sqrt(5.0 * std::numbers::pi)).epsilon(1e-6));
}

TEST_CASE("zero-time evolution returns the static density") {
    TrapConfig cfg{1.0, 5};
    Spectrum sp = build_spectrum(cfg, default_grid(cfg));
    DensityProfile stat = density(sp);
    EvolutionResult res = free_evolve(sp, {0.0});

    const long ms = sp.grid.n_points();
    const long offset = (res.grid.n_points() - 1) / 2 - (ms - 1) / 2;
    double worst = 0.0;
    for (long a = 0; a < ms; ++a)
        worst = std::max(worst,
                         std::abs(res.snapshots[0][offset + a] - stat.values[a]));
    CHECK(worst < 1e-10);
}

TEST_CASE("expansion box policy: spacing, size, guards") {
    TrapConfig cfg{30.0, 10};
    Spectrum sp = build_spectrum(cfg, default_grid(cfg));
    SpatialGrid box = plan_expansion_box(sp, 2.0);
    const long n2 = box.n_points() - 1;

    CHECK((n2 & (n2 - 1)) == 0);
    CHECK(box.spacing() == doctest::Approx(sp.grid.spacing()).epsilon(1e-9));
    CHECK(box.n_points() == (1L << 18) + 1);
    CHECK(box.half_width > 600.0); // cusp tail containment at this strength
    // every represented momentum must loop the box slower than once per run
    CHECK(2.0 * box.half_width / 2.0 >
          1.25 * std::numbers::pi / box.spacing() * 0.999);

    CHECK_THROWS_AS(plan_expansion_box(sp, 200.0), SolverError);

    TrapConfig free_cfg{0.0, 1};
    Spectrum free_sp = build_spectrum(free_cfg, default_grid(free_cfg));
    SpatialGrid still = plan_expansion_box(free_sp, 0.0);
    CHECK(still.n_points() == 1025);
    CHECK(still.half_width == doctest::Approx(8.0));

    CHECK_THROWS_AS(evolve_states(free_sp, SpatialGrid::uniform(8.0, 1023), 1.0),
                    std::invalid_argument);
}

TEST_CASE("unitarity, parity, and stencil kinetic energy under expansion") {
    TrapConfig cfg{2.0, 3};
    Spectrum sp = build_spectrum(cfg, default_grid(cfg));
    SpatialGrid box = plan_expansion_box(sp, 2.0);

    double kinetic_ref = 0.0;
    for (double t : {0.0, 0.5, 2.0}) {
        Eigen::MatrixXcd waves = evolve_states(sp, box, t);
        for (long n = 0; n < waves.cols(); ++n) {
            const double norm =
                (box.w.array() * waves.col(n).array().abs2()).sum();
            CHECK(std::abs(norm - 1.0) < 1e-6);
        }

        Eigen::VectorXd rho = waves.rowwise().squaredNorm();
        CHECK(quadrature(box, rho) == doctest::Approx(3.0).epsilon(1e-4));
        double asym = 0.0;
        const long m = box.n_points();
        for (long a = 0; a < m; ++a)
            asym = std::max(asym, std::abs(rho[a] - rho[m - 1 - a]));
        CHECK(asym < 1e-6);

        const double kinetic = stencil_kinetic(box, waves);
        if (t == 0.0)
            kinetic_ref = kinetic;
        else
            CHECK(kinetic == doctest::Approx(kinetic_ref).epsilon(1e-3));
    }
}

TEST_CASE("stencil kinetic energy matches the free virial value") {
    TrapConfig cfg{0.0, 3};
    Spectrum sp = build_spectrum(cfg, default_grid(cfg));
    SpatialGrid box = plan_expansion_box(sp, 1.0);
    Eigen::MatrixXcd waves = evolve_states(sp, box, 1.0);
    // half the total energy 0.5 + 1.5 + 2.5 sits in kinetic form
    CHECK(stencil_kinetic(box, waves) == doctest::Approx(2.25).epsilon(1e-3));
}

TEST_CASE("fringe visibility on synthetic profiles") {
    SpatialGrid g = SpatialGrid::uniform(5.0, 501);

    CHECK(fringe_visibility(g, Eigen::VectorXd::Ones(501), 4.0) == 0.0);

    Eigen::VectorXd fringes(501), hump(501);
    for (long a = 0; a < 501; ++a) {
        const double c = std::cos(3.0 * g.x[a]);
        fringes[a] = c * c + 1e-9;
        hump[a] = std::exp(-g.x[a] * g.x[a]);
    }
    const double v = fringe_visibility(g, fringes, 4.0);
    CHECK(v > 0.9999);
    CHECK(v <= 1.0);

    CHECK(fringe_visibility(g, hump, 4.0) == 0.0);

    CHECK_THROWS_AS(fringe_visibility(g, hump, 0.001), std::invalid_argument);
    CHECK_THROWS_AS(fringe_visibility(g, hump, 6.0), std::invalid_argument);
}

TEST_CASE("interference contrast is far higher for even particle number") {
    auto visibility = [](int n) {
        TrapConfig cfg{30.0, n};
        Spectrum sp = build_spectrum(cfg, default_grid(cfg));
        EvolutionResult res = free_evolve(sp, {2.0});
        CHECK(quadrature(res.grid, res.snapshots[0]) ==
              doctest::Approx(n).epsilon(1e-4));
        return fringe_visibility(res.grid, res.snapshots[0], 5.0);
    };

    const double v_even = visibility(10);
    const double v_odd = visibility(9);
    CHECK(v_even == doctest::Approx(0.0714).epsilon(0.10));
    CHECK(v_odd == doctest::Approx(0.0318).epsilon(0.15));
    CHECK(v_even > 2.0 * v_odd);
}
