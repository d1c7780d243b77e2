#pragma once

#include "dmera/covariance.hpp"

#include <string>
#include <vector>

namespace dmera {

enum class ModelLabel { ising, modified_ising, custom };

ModelLabel model_from_string(const std::string& name);
std::string model_to_string(ModelLabel label);

/// Quadratic Majorana Hamiltonian H = (i/2) sum_{j<k} A_{jk} g_j g_k on an
/// antiperiodic chain. Energy on a Gaussian state is (1/4) sum_{jk} A o Gamma.
struct QuadraticHamiltonian {
    int n_sites = 0;
    Eigen::MatrixXd coupling;  // real antisymmetric, 2n x 2n
    ModelLabel label = ModelLabel::custom;
};

struct ExactSolution {
    CovarianceState ground_state;
    double ground_energy = 0.0;
    std::vector<double> single_particle_spectrum;  // non-negative, ascending
};

/// Critical transverse-field Ising chain, H_I = -sum_j X_j X_{j+1} + Z_j,
/// as the antiperiodic Majorana chain i sum_m g_m g_{m+1}. L even, >= 2.
QuadraticHamiltonian ising_hamiltonian(int n_sites);

/// Modified chain sum_j -X_j X_{j+1} + X_{j-1} Z_j X_{j+1}; the three-body
/// term maps to the separation-3 Majorana coupling -i g_{2j-2} g_{2j+1}
/// (coefficients frozen against dense diagonalization). L even, >= 4.
QuadraticHamiltonian modified_ising_hamiltonian(int n_sites);

QuadraticHamiltonian hamiltonian_for(ModelLabel label, int n_sites);

/// Adds the coefficient of i g_a g_b (0-based indices, may lie outside
/// [0, 2n) and are folded back with the antiperiodic sign).
void add_majorana_coupling(QuadraticHamiltonian& h, int a, int b, double coeff);

/// Fills negative-energy modes of the canonical form of the coupling.
/// Throws on a zero single-particle eigenvalue (degenerate ground space).
ExactSolution exact_ground_state(const QuadraticHamiltonian& h);

/// Cached per (label, L); custom labels are never cached.
const ExactSolution& exact_ground_state_cached(ModelLabel label, int n_sites);

double energy(const CovarianceState& state, const QuadraticHamiltonian& h);

/// Closed-form ground-state energy density of the critical chain at size L,
/// -(2/L)/sin(pi/(2L)); approaches -4/pi from below. Analytic cross-check.
double exact_ising_energy_density(int n_sites);

/// Closed-form <i g_m g_{m+s}> of the critical chain, s odd (0 for even s).
double exact_ising_correlator(int n_sites, int separation);

/// CSV {L, distance, family, value} of exact correlator references.
std::string exact_reference_csv(ModelLabel label, int n_sites, int max_distance);

}  // namespace dmera
