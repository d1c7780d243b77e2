#pragma once

#include "dmera/covariance.hpp"
#include "dmera/optimize.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace dmera {

/// Alternating-operator parameters: 2p angles, XX angle then Z angle per round.
struct QaoaParams {
    int rounds = 0;
    std::vector<double> angles;
};

/// From |0...0>, alternately apply exp(-i a_k sum_j X_j X_{j+1}) and
/// exp(-i b_k sum_j Z_j); each factor is a commuting set of Majorana plane
/// rotations with the antiperiodic wrap.
CovarianceState qaoa_state(const QaoaParams& params, int n_sites);

double qaoa_energy_density(const QaoaParams& params, int n_sites);

struct QaoaOptimum {
    QaoaParams params;
    double energy = 0.0;  // total energy at n_sites
};

/// Minimizes energy over the 2p angles (shared L-BFGS optimizer). The
/// default stopping tolerance respects the finite-difference noise floor of
/// a total-energy objective at a few hundred sites.
QaoaOptimum optimize_qaoa(int rounds, int n_sites, int restarts,
                          const std::vector<double>& init = {},
                          std::uint64_t seed = 0, double grad_tol = 1e-7,
                          int max_iter = 300);

/// For each p <= p_max, multi-start angles that exactly prepare the L = 2p
/// ground state (energy gap < gap_tol). Used to initialize larger-L runs.
std::map<int, QaoaParams> exact_prep_bootstrap(int p_max, double gap_tol = 1e-10,
                                               int restart_budget = 64,
                                               std::uint64_t seed = 12345);

struct QaoaSeriesPoint {
    int rounds = 0;
    QaoaParams params;
    double energy_density = 0.0;  // per site, at n_sites
};

/// Optimized densities over a list of round counts at fixed n_sites.
/// Each point starts from the exact-preparation angles (and from the
/// previous point's solution extended by a near-identity round); the bulk of
/// the optimization runs on a smaller chain - the density is size-independent
/// beyond the causal cone - followed by a short polish at n_sites.
std::vector<QaoaSeriesPoint> qaoa_density_series(const std::vector<int>& rounds,
                                                 int n_sites, int restarts,
                                                 std::uint64_t seed);

}  // namespace dmera
