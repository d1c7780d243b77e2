#include "dmera/qaoa.hpp"

#include "dmera/models.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace dmera {

namespace {

void check_params(const QaoaParams& p) {
    if (p.rounds < 1 || p.angles.size() != static_cast<size_t>(2 * p.rounds))
        throw std::invalid_argument("QaoaParams: angles length must be 2*rounds");
}

// Rotation conventions (site p, 0-based Majoranas):
//   exp(-i a X_p X_{p+1}) -> plane (2p+1, 2p+2) by angle -2a
//   exp(-i b Z_p)         -> plane (2p, 2p+1)   by angle -2b
// with the wrapped plane's angle sign-flipped (antiperiodic boundary).
void xx_layer(Eigen::MatrixXd& gamma, int n, double a) {
    for (int p = 0; p < n; ++p) {
        const bool wrap = (p + 1 == n);
        const int j = 2 * p + 1;
        const int k = wrap ? 0 : 2 * p + 2;
        plane_rotation_inplace(gamma, j, k, wrap ? 2.0 * a : -2.0 * a);
    }
}

void z_layer(Eigen::MatrixXd& gamma, int n, double b) {
    for (int p = 0; p < n; ++p)
        plane_rotation_inplace(gamma, 2 * p, 2 * p + 1, -2.0 * b);
}

}  // namespace

CovarianceState qaoa_state(const QaoaParams& params, int n_sites) {
    check_params(params);
    if (n_sites < 2 || n_sites % 2 != 0)
        throw std::invalid_argument("qaoa_state: L must be even and >= 2");
    CovarianceState state = vacuum_state(n_sites);
    for (int k = 0; k < params.rounds; ++k) {
        xx_layer(state.gamma, n_sites, params.angles[2 * k]);
        z_layer(state.gamma, n_sites, params.angles[2 * k + 1]);
    }
    return state;
}

double qaoa_energy_density(const QaoaParams& params, int n_sites) {
    const QuadraticHamiltonian h = ising_hamiltonian(n_sites);
    return energy(qaoa_state(params, n_sites), h) / n_sites;
}

QaoaOptimum optimize_qaoa(int rounds, int n_sites, int restarts,
                          const std::vector<double>& init, std::uint64_t seed,
                          double grad_tol, int max_iter) {
    if (n_sites < 2 * rounds)
        throw std::invalid_argument("optimize_qaoa: need L >= 2p");
    const QuadraticHamiltonian h = ising_hamiltonian(n_sites);

    Objective obj;
    obj.arity = 2 * rounds;
    obj.description = "qaoa p=" + std::to_string(rounds) + " L=" + std::to_string(n_sites);
    obj.evaluate = [&h, rounds, n_sites](const std::vector<double>& angles) {
        QaoaParams p{rounds, angles};
        return energy(qaoa_state(p, n_sites), h);
    };

    std::vector<double> start = init;
    if (start.empty()) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(-M_PI / 2.0, M_PI / 2.0);
        start.resize(2 * rounds);
        for (double& v : start) v = uni(rng);
    }

    LbfgsOptions opts;
    opts.restarts = restarts;
    opts.seed = seed + 1;
    opts.grad_tol = grad_tol;
    opts.max_iter = max_iter;
    OptimizationRun run = lbfgs_minimize(obj, start, opts);

    QaoaOptimum out;
    out.params = QaoaParams{rounds, run.final_params};
    out.energy = run.final_value;
    return out;
}

std::vector<QaoaSeriesPoint> qaoa_density_series(const std::vector<int>& rounds,
                                                 int n_sites, int restarts,
                                                 std::uint64_t seed) {
    if (rounds.empty()) return {};
    const int p_max = *std::max_element(rounds.begin(), rounds.end());
    auto boot = exact_prep_bootstrap(p_max, 1e-10, 64, seed + 77);

    std::vector<QaoaSeriesPoint> out;
    std::vector<double> prev_angles;
    for (int p : rounds) {
        int l_opt = std::min(n_sites, 64);
        if (l_opt < 2 * p) l_opt = n_sites;

        QaoaOptimum stage = optimize_qaoa(p, l_opt, restarts, boot.at(p).angles,
                                          seed + 1000 + p);
        if (!prev_angles.empty() &&
            prev_angles.size() + 2 == static_cast<size_t>(2 * p)) {
            std::vector<double> chained = prev_angles;
            chained.push_back(1e-3);
            chained.push_back(1e-3);
            QaoaOptimum alt = optimize_qaoa(p, l_opt, restarts, chained, seed + 2000 + p);
            if (alt.energy < stage.energy) stage = alt;
        }
        QaoaOptimum best = (l_opt == n_sites)
                               ? stage
                               : optimize_qaoa(p, n_sites, 0, stage.params.angles,
                                               seed + 3000 + p, 1e-7, 20);
        prev_angles = best.params.angles;
        out.push_back({p, best.params, best.energy / n_sites});
    }
    return out;
}

std::map<int, QaoaParams> exact_prep_bootstrap(int p_max, double gap_tol,
                                               int restart_budget,
                                               std::uint64_t seed) {
    if (p_max < 1 || p_max > 8)
        throw std::invalid_argument("exact_prep_bootstrap: p_max in 1..8");
    std::map<int, QaoaParams> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-M_PI / 2.0, M_PI / 2.0);

    for (int p = 1; p <= p_max; ++p) {
        const int L = 2 * p;
        const double e_exact = exact_ground_state_cached(ModelLabel::ising, L).ground_energy;
        const QuadraticHamiltonian h = ising_hamiltonian(L);

        Objective obj;
        obj.arity = 2 * p;
        obj.description = "qaoa exact prep p=" + std::to_string(p);
        obj.evaluate = [&h, p, L](const std::vector<double>& angles) {
            return energy(qaoa_state(QaoaParams{p, angles}, L), h);
        };

        bool found = false;
        std::vector<double> start(2 * p);
        // Warm start from the previous round's solution, then random restarts.
        std::vector<std::vector<double>> inits;
        if (out.count(p - 1)) {
            std::vector<double> warm = out[p - 1].angles;
            warm.push_back(0.01);
            warm.push_back(0.01);
            inits.push_back(warm);
        }
        for (int r = 0; r < restart_budget; ++r) {
            for (double& v : start) v = uni(rng);
            inits.push_back(start);
        }

        for (const auto& init : inits) {
            LbfgsOptions opts;
            opts.restarts = 2;
            opts.seed = seed ^ (p * 7919);
            opts.grad_tol = 1e-9;  // fd-noise floor; the gap check is the gate
            opts.max_iter = 500;
            OptimizationRun run = lbfgs_minimize(obj, init, opts);
            if (run.final_value - e_exact < gap_tol) {
                out[p] = QaoaParams{p, run.final_params};
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error("exact_prep_bootstrap: failed at p=" +
                                     std::to_string(p) + " within restart budget");
    }
    return out;
}

}  // namespace dmera
