// tg1d: ground-state and expansion observables of a 1D trapped gas with a
// central attractive delta potential, emitted as figure-ready CSV or JSON.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tonks/bose_rspdm.hpp"
#include "tonks/dynamics.hpp"
#include "tonks/emit.hpp"
#include "tonks/momentum.hpp"
#include "tonks/observables.hpp"

namespace {

using namespace tonks;

struct Request {
    std::string command;
    double kappa = 0.0;
    int n_particles = 2;
    std::string species = "boson";
    std::optional<double> half_width;
    std::optional<long> grid_points;
    std::optional<double> k_max;
    std::vector<double> times;
    std::string n_range;
    std::string output = "-";
    std::string format = "csv";
};

Species parse_species(const std::string& s) {
    return s == "fermion" ? Species::fermion : Species::boson;
}

EmitFormat parse_format(const std::string& s) {
    return s == "json" ? EmitFormat::json : EmitFormat::csv;
}

SpatialGrid resolve_grid(const TrapConfig& config, const Request& req) {
    if (req.half_width && !(*req.half_width > 0.0))
        throw std::invalid_argument("--half-width must be positive");
    if (req.grid_points && (*req.grid_points < 17 || *req.grid_points % 2 == 0))
        throw std::invalid_argument("--grid-points must be odd and at least 17");
    if (!req.half_width && !req.grid_points) return default_grid(config);
    SpatialGrid base = default_grid(config);
    const double half = req.half_width.value_or(base.half_width);
    long points;
    if (req.grid_points) {
        points = *req.grid_points;
    } else {
        // keep the default spacing when only the extent is overridden
        const double h = base.spacing();
        points = std::max<long>(2 * static_cast<long>(std::ceil(half / h)) + 1, 1025);
    }
    return SpatialGrid::uniform(half, points);
}

OrbitalDecomposition decompose(const Spectrum& sp, Species species) {
    if (species == Species::boson)
        return natural_orbitals(bose_rspdm(sp, cumulative_overlaps(sp)));
    // the eigenstates themselves diagonalize the fermionic matrix with unit
    // occupation each, so no eigensolve is needed (or wanted: the eigenvalue
    // 1 is N-fold degenerate and a solver would return an arbitrary mix)
    OrbitalDecomposition od;
    od.grid = sp.grid;
    od.occupations = Eigen::VectorXd::Ones(sp.n_states());
    od.orbitals = sp.samples;
    od.min_eigenvalue = 0.0;
    od.particle_number = sp.n_states();
    return od;
}

void append_matrix_triples(Dataset& d, const SpatialGrid& grid,
                           const Eigen::MatrixXd& entries) {
    d.columns = {"x", "xp", "value"};
    const long m = grid.n_points();
    d.rows.reserve(static_cast<std::size_t>(m) * m);
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b)
            d.rows.push_back({Cell{grid.x[a]}, Cell{grid.x[b]}, Cell{entries(a, b)}});
}

Dataset run_spectrum(const Request& req, const TrapConfig& config, const SpatialGrid& grid) {
    Spectrum sp = build_spectrum(config, grid);
    Dataset d;
    d.meta = standard_meta("spectrum", config, parse_species(req.species), grid);
    d.columns = {"index", "parity", "energy"};
    for (const EigenState& st : sp.states)
        d.rows.push_back({Cell{static_cast<double>(st.index)},
                          Cell{std::string(st.parity == Parity::even ? "even" : "odd")},
                          Cell{st.energy}});
    return d;
}

Dataset run_density(const Request& req, const TrapConfig& config, const SpatialGrid& grid) {
    Spectrum sp = build_spectrum(config, grid);
    DensityProfile rho = density(sp);
    Dataset d;
    d.meta = standard_meta("density", config, parse_species(req.species), grid);
    d.columns = {"x", "density"};
    for (long a = 0; a < grid.n_points(); ++a)
        d.rows.push_back({Cell{grid.x[a]}, Cell{rho.values[a]}});
    return d;
}

Dataset run_pairdist(const Request& req, const TrapConfig& config, const SpatialGrid& grid) {
    Spectrum sp = build_spectrum(config, grid);
    Dataset d;
    d.meta = standard_meta("pairdist", config, parse_species(req.species), grid);
    append_matrix_triples(d, grid, pair_distribution_grid(sp));
    return d;
}

Dataset run_rspdm(const Request& req, const TrapConfig& config, const SpatialGrid& grid) {
    Spectrum sp = build_spectrum(config, grid);
    const Species species = parse_species(req.species);
    DensityMatrix dm = species == Species::boson
                           ? bose_rspdm(sp, cumulative_overlaps(sp))
                           : fermi_rspdm(sp);
    Dataset d;
    d.meta = standard_meta("rspdm", config, species, grid);
    append_matrix_triples(d, grid, dm.entries);
    return d;
}

Dataset run_orbitals(const Request& req, const TrapConfig& config, const SpatialGrid& grid) {
    Spectrum sp = build_spectrum(config, grid);
    const Species species = parse_species(req.species);
    OrbitalDecomposition od = decompose(sp, species);

    Dataset d;
    d.meta = standard_meta("orbitals", config, species, grid);
    d.columns = {"orbital", "occupation", "x", "value"};
    const long kept = std::min<long>(6, od.orbitals.cols());
    for (long j = 0; j < kept; ++j)
        for (long a = 0; a < grid.n_points(); ++a)
            d.rows.push_back({Cell{static_cast<double>(j)}, Cell{od.occupations[j]},
                              Cell{grid.x[a]}, Cell{od.orbitals(a, j)}});
    return d;
}

Dataset run_occupation(const Request& req) {
    int lo = 0, hi = 0;
    if (std::sscanf(req.n_range.c_str(), "%d:%d", &lo, &hi) != 2 || lo < 1 || hi < lo)
        throw std::invalid_argument("--n-range expects a:b with 1 <= a <= b");

    const Species species = parse_species(req.species);
    Dataset d;
    TrapConfig top{req.kappa, hi};
    d.meta = standard_meta("occupation", top, species, resolve_grid(top, req));
    d.columns = {"n_particles", "lambda0", "fraction"};
    for (int n = lo; n <= hi; ++n) {
        TrapConfig config{req.kappa, n};
        double lambda0 = 1.0;
        if (species == Species::boson) {
            Spectrum sp = build_spectrum(config, resolve_grid(config, req));
            OrbitalDecomposition od = natural_orbitals(
                bose_rspdm(sp, cumulative_overlaps(sp)));
            lambda0 = od.occupations[0];
        }
        d.rows.push_back({Cell{static_cast<double>(n)}, Cell{lambda0}, Cell{lambda0 / n}});
    }
    return d;
}

Dataset run_momentum(const Request& req, const TrapConfig& config, const SpatialGrid& grid) {
    Spectrum sp = build_spectrum(config, grid);
    const Species species = parse_species(req.species);
    MomentumGrid mg = req.k_max ? MomentumGrid::uniform(*req.k_max, 1001)
                                : default_momentum_grid(config);
    MomentumDistribution nk = species == Species::boson
                                  ? momentum_distribution(decompose(sp, species), mg)
                                  : momentum_distribution(sp, mg);
    Dataset d;
    d.meta = standard_meta("momentum", config, species, grid);
    d.columns = {"k", "density"};
    for (long b = 0; b < mg.n_points(); ++b)
        d.rows.push_back({Cell{mg.k[b]}, Cell{nk.values[b]}});
    return d;
}

Dataset run_evolve(const Request& req, const TrapConfig& config, const SpatialGrid& grid) {
    for (double t : req.times)
        if (!std::isfinite(t) || t < 0.0)
            throw std::invalid_argument("--times entries must be finite and non-negative");

    Spectrum sp = build_spectrum(config, grid);
    EvolutionResult ev = free_evolve(sp, req.times);
    Dataset d;
    d.meta = standard_meta("evolve", config, parse_species(req.species), grid);
    d.columns = {"t", "x", "density"};
    for (std::size_t i = 0; i < ev.times.size(); ++i)
        for (long a = 0; a < ev.grid.n_points(); ++a)
            d.rows.push_back({Cell{ev.times[i]}, Cell{ev.grid.x[a]},
                              Cell{ev.snapshots[i][a]}});
    return d;
}

int dispatch(const Request& req) {
    if (req.kappa < 0.0)
        throw std::invalid_argument("kappa must be non-negative (attractive well)");

    Dataset d;
    if (req.command == "occupation") {
        d = run_occupation(req);
    } else {
        if (req.n_particles < 1)
            throw std::invalid_argument("particle number must be at least 1");
        TrapConfig config{req.kappa, req.n_particles};
        SpatialGrid grid = resolve_grid(config, req);
        if (req.command == "spectrum") d = run_spectrum(req, config, grid);
        else if (req.command == "density") d = run_density(req, config, grid);
        else if (req.command == "pairdist") d = run_pairdist(req, config, grid);
        else if (req.command == "rspdm") d = run_rspdm(req, config, grid);
        else if (req.command == "orbitals") d = run_orbitals(req, config, grid);
        else if (req.command == "momentum") d = run_momentum(req, config, grid);
        else d = run_evolve(req, config, grid);
    }
    emit(d, parse_format(req.format), req.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact observables of a trapped 1D gas with a central delta well"};
    app.require_subcommand(1);

    Request req;
    auto add_common = [&](CLI::App* cmd, bool with_n) {
        cmd->add_option("--kappa", req.kappa, "delta well strength (>= 0)");
        if (with_n)
            cmd->add_option("--n", req.n_particles, "particle number")->required();
        cmd->add_option("--species", req.species)
            ->check(CLI::IsMember({"boson", "fermion"}));
        cmd->add_option("--half-width", req.half_width, "grid half width override");
        cmd->add_option("--grid-points", req.grid_points, "grid point count override");
        cmd->add_option("--output", req.output, "output path, - for stdout");
        cmd->add_option("--format", req.format)->check(CLI::IsMember({"csv", "json"}));
    };

    add_common(app.add_subcommand("spectrum", "energy levels"), true);
    add_common(app.add_subcommand("density", "particle density profile"), true);
    add_common(app.add_subcommand("pairdist", "two-particle distribution matrix"), true);
    add_common(app.add_subcommand("rspdm", "reduced single-particle density matrix"), true);
    add_common(app.add_subcommand("orbitals", "leading natural orbitals"), true);
    CLI::App* occ = app.add_subcommand("occupation", "condensate fraction sweep over N");
    add_common(occ, false);
    occ->add_option("--n-range", req.n_range, "particle number sweep a:b")->required();
    CLI::App* mom = app.add_subcommand("momentum", "momentum distribution");
    add_common(mom, true);
    mom->add_option("--k-max", req.k_max, "momentum window override");
    CLI::App* evo = app.add_subcommand("evolve", "free expansion density snapshots");
    add_common(evo, true);
    evo->add_option("--times", req.times, "expansion times")
        ->required()
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    req.command = app.get_subcommands().front()->get_name();

    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    try {
        code = dispatch(req);
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        code = 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        code = 2;
    } catch (const std::length_error& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        code = 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        code = 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        code = 4;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::fprintf(stderr, "wall clock: %.3f s\n", elapsed.count());
    return code;
}
