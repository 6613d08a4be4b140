#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "oracle.hpp"
#include "tonks/bose_rspdm.hpp"

using namespace tonks;

namespace {

double grid_trace(const SpatialGrid& g, const Eigen::MatrixXd& entries) {
    return g.w.dot(entries.diagonal());
}

} // namespace

TEST_CASE("symmetrized amplitude is exchange symmetric and vanishes on contact") {
    TrapConfig cfg{0.0, 2};
    Spectrum sp = build_spectrum(cfg, default_grid(cfg));
    oracle::ManyBodyWavefunction psi(sp);

    // sorting before evaluation makes exchange symmetry bitwise, not approximate
    CHECK(psi({0.3, -1.2}) == psi({-1.2, 0.3}));
    CHECK(psi({0.7, 0.7}) == 0.0);
    CHECK(psi({0.4, 1.1}) > 0.0);

    TrapConfig cfg3{1.5, 3};
    Spectrum sp3 = build_spectrum(cfg3, default_grid(cfg3));
    oracle::ManyBodyWavefunction psi3(sp3);
    const double base = psi3({-0.9, 0.2, 1.4});
    CHECK(psi3({0.2, -0.9, 1.4}) == base);
    CHECK(psi3({1.4, 0.2, -0.9}) == base);
    CHECK(psi3({0.2, 1.4, -0.9}) == base);
    CHECK(psi3({-0.9, 1.4, 0.2}) == base);
    CHECK(psi3({1.4, -0.9, 0.2}) == base);
    CHECK(psi3({0.2, 0.2, 1.4}) == 0.0);

    CHECK_THROWS_AS(psi3({0.0, 1.0}), std::invalid_argument);

    TrapConfig cfg4{0.0, 4};
    Spectrum sp4 = build_spectrum(cfg4, default_grid(cfg4));
    CHECK_THROWS_AS(oracle::ManyBodyWavefunction{sp4}, std::invalid_argument);
}

TEST_CASE("two-particle contact amplitude matches the closed form") {
    TrapConfig cfg{0.0, 2};

    // D(1,-1) for the harmonic ground pair: 8 / (pi e^2)
    const double expected = 8.0 / (std::numbers::pi * std::exp(2.0));
    CHECK(oracle::brute_force_pair_distribution(cfg, 1.0, -1.0) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(oracle::brute_force_pair_distribution(cfg, -1.0, 1.0) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(oracle::brute_force_pair_distribution(cfg, 0.6, 0.6) == 0.0);

    Spectrum sp = build_spectrum(cfg, default_grid(cfg));
    for (double x1 : {-1.8, -0.3, 0.9}) {
        for (double x2 : {-1.1, 0.4, 2.2}) {
            CHECK(oracle::brute_force_pair_distribution(sp, x1, x2) ==
                  doctest::Approx(pair_distribution(sp, x1, x2)).epsilon(1e-10));
        }
    }
}

TEST_CASE("unrefined brute force reproduces structural identities") {
    TrapConfig cfg{0.0, 2};
    SpatialGrid grid = SpatialGrid::uniform(8.0, 201);
    DensityMatrix dm = oracle::brute_force_rspdm(cfg, grid);

    CHECK(dm.species == Species::boson);
    CHECK(dm.trace_target == doctest::Approx(2.0));
    CHECK(grid_trace(grid, dm.entries) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK((dm.entries - dm.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);

    // with integration and evaluation grids equal, the diagonal collapses to
    // the orbital density through the grid orthonormality of the states
    Spectrum sp = build_spectrum(cfg, grid);
    DensityProfile rho = density(sp);
    double worst_diag = 0.0;
    double worst_mirror = 0.0;
    const long m = grid.n_points();
    for (long a = 0; a < m; ++a) {
        worst_diag = std::max(worst_diag, std::abs(dm.entries(a, a) - rho.values[a]));
        for (long b = 0; b < m; ++b)
            worst_mirror = std::max(worst_mirror,
                                    std::abs(dm.entries(a, b) -
                                             dm.entries(m - 1 - a, m - 1 - b)));
    }
    CHECK(worst_diag < 1e-12);
    CHECK(worst_mirror < 1e-10);
}

TEST_CASE("cost guards refuse oversized brute-force requests") {
    TrapConfig two{0.0, 2};
    TrapConfig three{0.0, 3};
    TrapConfig five{0.0, 5};

    CHECK_THROWS_AS(oracle::brute_force_rspdm(five, SpatialGrid::uniform(8.0, 101)),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle::brute_force_rspdm(two, SpatialGrid::uniform(8.0, 2003)),
                    std::length_error);
    CHECK_THROWS_AS(oracle::brute_force_rspdm(three, SpatialGrid::uniform(8.0, 503)),
                    std::length_error);
    CHECK_THROWS_AS(oracle::brute_force_rspdm(three, SpatialGrid::uniform(8.0, 401), 8),
                    std::length_error);
    CHECK_THROWS_AS(oracle::brute_force_rspdm(three, SpatialGrid::uniform(8.0, 101), 64),
                    std::length_error);
    CHECK_THROWS_AS(oracle::brute_force_rspdm(two, SpatialGrid::uniform(8.0, 101), 0),
                    std::invalid_argument);
}

TEST_CASE("refined brute force agrees with the determinant route at a bound-state coupling") {
    TrapConfig cfg{10.0, 2};
    const double half_width = 8.0;
    const long coarse_m = 401;
    SpatialGrid coarse = SpatialGrid::uniform(half_width, coarse_m);

    DensityMatrix raw = oracle::brute_force_rspdm(cfg, coarse);
    oracle::RefinedRspdm ref = oracle::brute_force_rspdm_refined(cfg, coarse, 4);
    CHECK(ref.matrix.grid.n_points() == coarse_m);

    const long fine_m = 48001;
    Spectrum fine = build_spectrum(cfg, SpatialGrid::uniform(half_width, fine_m));
    OverlapCumulative ov = cumulative_overlaps(fine);
    const long stride = (fine_m - 1) / (coarse_m - 1);

    double worst_ref = 0.0;
    double worst_raw = 0.0;
    for (long a = 0; a < coarse_m; ++a) {
        for (long b = a; b < coarse_m; ++b) {
            const double fast = bose_rspdm_entry(fine, ov, a * stride, b * stride);
            worst_ref = std::max(worst_ref, std::abs(ref.matrix.entries(a, b) - fast));
            worst_raw = std::max(worst_raw, std::abs(raw.entries(a, b) - fast));
        }
    }

    // the cusp leaves the same-grid run off by half a unit near the center,
    // so the agreement below is carried entirely by the refinement
    CHECK(worst_raw > 1e-2);
    CHECK(worst_ref < 2e-5);
    CHECK(ref.error_estimate > worst_ref);
    CHECK(ref.error_estimate < 0.1);
}

TEST_CASE("three-particle brute force agrees with the determinant route") {
    TrapConfig cfg{0.0, 3};
    const double half_width = 8.0;
    const long coarse_m = 101;
    SpatialGrid coarse = SpatialGrid::uniform(half_width, coarse_m);
    oracle::RefinedRspdm ref = oracle::brute_force_rspdm_refined(cfg, coarse, 4);

    CHECK(grid_trace(coarse, ref.matrix.entries) == doctest::Approx(3.0).epsilon(1e-3));

    const long fine_m = 48001;
    Spectrum fine = build_spectrum(cfg, SpatialGrid::uniform(half_width, fine_m));
    OverlapCumulative ov = cumulative_overlaps(fine);
    const long stride = (fine_m - 1) / (coarse_m - 1);

    double worst = 0.0;
    for (long a = 0; a < coarse_m; ++a)
        for (long b = a; b < coarse_m; ++b)
            worst = std::max(worst, std::abs(ref.matrix.entries(a, b) -
                                             bose_rspdm_entry(fine, ov, a * stride, b * stride)));
    CHECK(worst < 1e-6);
}
