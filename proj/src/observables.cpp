#include "tonks/observables.hpp"

#include <algorithm>
#include <numeric>

namespace tonks {

DensityProfile density(const Spectrum& spectrum) {
    DensityProfile p;
    p.grid = spectrum.grid;
    p.particle_number = spectrum.config.n_particles;
    p.values = spectrum.samples.array().square().rowwise().sum();
    return p;
}

namespace {

void eval_all_states(const Spectrum& sp, double x, Eigen::VectorXd& out) {
    const int n = sp.n_states();
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        out[i] = eval_eigenstate(sp.states[i], sp.config, x);
    }
}

} // namespace

double pair_distribution(const Spectrum& spectrum, double x1, double x2) {
    if (spectrum.config.n_particles < 2) {
        throw std::domain_error("pair_distribution: needs at least two particles");
    }
    Eigen::VectorXd a, b;
    eval_all_states(spectrum, x1, a);
    eval_all_states(spectrum, x2, b);
    const double rho1 = a.squaredNorm();
    const double rho2 = b.squaredNorm();
    const double delta = a.dot(b);
    return rho1 * rho2 - delta * delta;
}

double pair_distribution_double_sum(const Spectrum& spectrum, double x1, double x2) {
    if (spectrum.config.n_particles < 2) {
        throw std::domain_error("pair_distribution: needs at least two particles");
    }
    Eigen::VectorXd a, b;
    eval_all_states(spectrum, x1, a);
    eval_all_states(spectrum, x2, b);
    const int n = spectrum.n_states();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double t = a[i] * b[j] - b[i] * a[j];
            acc += t * t;
        }
    }
    return acc;
}

Eigen::MatrixXd pair_distribution_grid(const Spectrum& spectrum) {
    if (spectrum.config.n_particles < 2) {
        throw std::domain_error("pair_distribution: needs at least two particles");
    }
    Eigen::VectorXd rho = spectrum.samples.array().square().rowwise().sum();
    Eigen::MatrixXd delta = spectrum.samples * spectrum.samples.transpose();
    return rho * rho.transpose() - delta.cwiseProduct(delta);
}

DensityMatrix fermi_rspdm(const Spectrum& spectrum) {
    DensityMatrix dm;
    dm.grid = spectrum.grid;
    dm.species = Species::fermion;
    dm.trace_target = spectrum.config.n_particles;
    dm.entries = spectrum.samples * spectrum.samples.transpose();
    return dm;
}

double fermi_idempotency_residual(const Spectrum& spectrum) {
    const Eigen::MatrixXd& s = spectrum.samples;
    const long m = s.rows();
    // Defect factorizes as S (G - I) S^T with G the weighted Gram matrix.
    Eigen::MatrixXd gram = s.transpose() * spectrum.grid.w.asDiagonal() * s;
    gram.diagonal().array() -= 1.0;
    Eigen::MatrixXd t = s * gram; // M x N

    Eigen::VectorXd tn = t.rowwise().norm();
    Eigen::VectorXd sn = s.rowwise().norm();
    const double sn_max = sn.maxCoeff();

    // Rows in descending order of their Cauchy-Schwarz cap; most rows are
    // pruned because the defect concentrates where the states kink.
    std::vector<long> order(m);
    std::iota(order.begin(), order.end(), 0L);
    std::sort(order.begin(), order.end(),
              [&](long i, long j) { return tn[i] > tn[j]; });

    double best = 0.0;
    for (long idx : order) {
        if (tn[idx] * sn_max <= best) break;
        double row_max = (s * t.row(idx).transpose()).cwiseAbs().maxCoeff();
        best = std::max(best, row_max);
    }
    return best;
}

} // namespace tonks
