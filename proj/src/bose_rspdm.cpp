#include "tonks/bose_rspdm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace tonks {

namespace {

// c[a] arrays hold M copies of an N x N matrix; refuse before allocating
// something that cannot fit in this machine's memory.
constexpr double kOverlapBudgetDoubles = 4.0e8;

// det(P) * s_a^T P^{-1} s_b, organized so the adjugate stays finite when P
// itself is singular. The LU route covers the generic case; near det = 0
// the product det * P^{-1} is reassembled from the spectral decomposition,
// where each adjugate eigenvalue is a product of the other eigenvalues of P.
double entry_kernel(const Eigen::MatrixXd& p, const Eigen::VectorXd& sa,
                    const Eigen::VectorXd& sb, Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                    Eigen::VectorXd& scratch) {
    lu.compute(p);
    const double det = lu.determinant();
    if (std::abs(det) > 1e-10) {
        scratch.noalias() = lu.solve(sa);
        return det * scratch.dot(sb);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const int n = static_cast<int>(lam.size());
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double cofactor = 1.0;
        for (int j = 0; j < n; ++j)
            if (j != i) cofactor *= lam[j];
        const double proj_a = es.eigenvectors().col(i).dot(sa);
        const double proj_b = es.eigenvectors().col(i).dot(sb);
        acc += cofactor * proj_a * proj_b;
    }
    return acc;
}

} // namespace

OverlapCumulative cumulative_overlaps(const Spectrum& spectrum) {
    const long m = spectrum.grid.n_points();
    const int n = spectrum.n_states();
    if (static_cast<double>(m) * n * n > kOverlapBudgetDoubles)
        throw std::length_error("cumulative_overlaps: grid x states^2 exceeds memory budget");

    OverlapCumulative ov;
    ov.grid = spectrum.grid;
    ov.c.resize(m);
    const double half_h = 0.5 * spectrum.grid.spacing();
    const Eigen::MatrixXd& s = spectrum.samples;

    ov.c[0] = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd prev = s.row(0).transpose() * s.row(0);
    Eigen::MatrixXd cur(n, n);
    for (long a = 1; a < m; ++a) {
        cur.noalias() = s.row(a).transpose() * s.row(a);
        ov.c[a] = ov.c[a - 1] + half_h * (prev + cur);
        prev.swap(cur);
    }
    return ov;
}

double bose_rspdm_entry(const Spectrum& spectrum, const OverlapCumulative& overlaps,
                        long a, long b) {
    if (a > b) std::swap(a, b);
    const int n = spectrum.n_states();
    const Eigen::VectorXd sa = spectrum.samples.row(a);
    const Eigen::VectorXd sb = spectrum.samples.row(b);
    if (a == b) return sa.squaredNorm();
    Eigen::MatrixXd p = -2.0 * (overlaps.c[b] - overlaps.c[a]);
    p.diagonal().array() += 1.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(n);
    Eigen::VectorXd scratch(n);
    return entry_kernel(p, sa, sb, lu, scratch);
}

DensityMatrix bose_rspdm(const Spectrum& spectrum, const OverlapCumulative& overlaps) {
    const long m = spectrum.grid.n_points();
    const int n = spectrum.n_states();
    DensityMatrix dm;
    dm.grid = spectrum.grid;
    dm.species = Species::boson;
    dm.trace_target = spectrum.config.n_particles;
    dm.entries.resize(m, m);
    const Eigen::MatrixXd& s = spectrum.samples;

#pragma omp parallel
    {
        Eigen::MatrixXd p(n, n);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(n);
        Eigen::VectorXd sa(n), sb(n), scratch(n);
#pragma omp for schedule(dynamic, 8)
        for (long a = 0; a < m; ++a) {
            sa = s.row(a);
            dm.entries(a, a) = sa.squaredNorm();
            for (long b = a + 1; b < m; ++b) {
                sb = s.row(b);
                p.noalias() = -2.0 * (overlaps.c[b] - overlaps.c[a]);
                p.diagonal().array() += 1.0;
                const double val = entry_kernel(p, sa, sb, lu, scratch);
                dm.entries(a, b) = val;
                dm.entries(b, a) = val;
            }
        }
    }

    // |rho_B(x,y)| <= sqrt(rho(x) rho(y)) for a positive kernel; a clear
    // breach means the cumulative integrals or the adjugate went bad.
    double worst = 0.0;
    for (long a = 0; a < m; ++a) {
        const double da = dm.entries(a, a);
        for (long b = a + 1; b < m; ++b) {
            const double bound = std::sqrt(da * dm.entries(b, b));
            const double excess = std::abs(dm.entries(a, b)) - bound;
            if (excess > worst) worst = excess;
        }
    }
    if (worst > 1e-6 * (1.0 + static_cast<double>(spectrum.config.n_particles)))
        std::fprintf(stderr,
                     "bose_rspdm: conditioning warning, off-diagonal exceeds "
                     "sqrt(rho rho') bound by %.3e\n",
                     worst);
    return dm;
}

namespace {

struct BlockResult {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors; // full-grid, weight-scaled rows
};

// Eigen-decompose one parity sector of R = sqrt(w) rho sqrt(w). Right-half
// indices r = K..M-1 label the sector basis; the even sector keeps the
// center point as its own basis vector, the odd sector drops it.
BlockResult parity_block(const DensityMatrix& dm, const Eigen::ArrayXd& sqw, bool even) {
    const long m = dm.entries.rows();
    const long k = (m - 1) / 2;
    const long dim = even ? k + 1 : k;
    const long first = even ? 0 : 1; // offset from center along the right half
    Eigen::MatrixXd block(dim, dim);
    for (long i = 0; i < dim; ++i) {
        const long r = k + first + i;
        for (long j = i; j < dim; ++j) {
            const long c = k + first + j;
            const long cm = m - 1 - c;
            double v;
            if (!even) {
                v = dm.entries(r, c) - dm.entries(r, cm);
            } else if (r == k && c == k) {
                v = dm.entries(k, k);
            } else if (r == k || c == k) {
                // center basis vector carries no 1/sqrt(2), its partner does
                v = std::numbers::sqrt2 * dm.entries(r, c);
            } else {
                v = dm.entries(r, c) + dm.entries(r, cm);
            }
            v *= sqw[r] * sqw[c];
            block(i, j) = v;
            block(j, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);

    BlockResult out;
    out.values = es.eigenvalues();
    out.vectors.setZero(m, dim);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (long col = 0; col < dim; ++col) {
        const auto& v = es.eigenvectors().col(col);
        for (long i = 0; i < dim; ++i) {
            const long r = k + first + i;
            if (even && r == k) {
                out.vectors(r, col) = v[i];
            } else {
                out.vectors(r, col) = v[i] * inv_sqrt2;
                out.vectors(m - 1 - r, col) = (even ? v[i] : -v[i]) * inv_sqrt2;
            }
        }
    }
    return out;
}

} // namespace

OrbitalDecomposition natural_orbitals(const DensityMatrix& rspdm) {
    const long m = rspdm.entries.rows();
    if (m != rspdm.grid.n_points())
        throw std::invalid_argument("natural_orbitals: matrix does not match its grid");
    const Eigen::ArrayXd sqw = rspdm.grid.w.array().sqrt();

    BlockResult even = parity_block(rspdm, sqw, true);
    BlockResult odd = parity_block(rspdm, sqw, false);

    struct Slot {
        double value;
        const BlockResult* block;
        long col;
    };
    std::vector<Slot> slots;
    slots.reserve(m);
    for (long i = 0; i < even.values.size(); ++i)
        slots.push_back({even.values[i], &even, i});
    for (long i = 0; i < odd.values.size(); ++i)
        slots.push_back({odd.values[i], &odd, i});
    std::sort(slots.begin(), slots.end(),
              [](const Slot& x, const Slot& y) { return x.value > y.value; });

    OrbitalDecomposition dec;
    dec.grid = rspdm.grid;
    dec.particle_number = rspdm.trace_target;
    dec.min_eigenvalue = slots.back().value;
    dec.occupations.resize(m);
    long kept = 0;
    for (long i = 0; i < m; ++i) {
        const double lam = slots[i].value < 1e-12 ? 0.0 : slots[i].value;
        dec.occupations[i] = lam;
        if (lam > 0.0) kept = i + 1;
    }
    dec.orbitals.resize(m, kept);
    for (long i = 0; i < kept; ++i)
        dec.orbitals.col(i) =
            slots[i].block->vectors.col(slots[i].col).array() / sqw;
    return dec;
}

double occupation_fraction(const OrbitalDecomposition& decomposition) {
    if (decomposition.particle_number <= 0)
        throw std::invalid_argument("occupation_fraction: unknown particle number");
    return decomposition.occupations[0] / decomposition.particle_number;
}

} // namespace tonks
