#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace dmera {

/// A Gaussian fermionic state on n_sites sites, represented by its Majorana
/// covariance matrix Gamma_{jk} = <i g_j g_k> (real antisymmetric, 2n x 2n).
///
/// Conventions: Majorana indices are 0-based; site p owns Majoranas
/// (2p, 2p+1) with g_{2p} = (prod_{k<p} Z_k) X_p and g_{2p+1} = (prod Z_k) Y_p,
/// so <Z_p> = -Gamma(2p, 2p+1) and the all-|0> product state has per-site
/// blocks [[0,-1],[1,0]]. Pure states satisfy Gamma^2 = -I.
struct CovarianceState {
    int n_sites = 0;
    Eigen::MatrixXd gamma;

    int n_modes() const { return static_cast<int>(gamma.rows()); }
};

/// Ordered subset of Majorana mode indices (0-based, strictly increasing).
struct ModeSubset {
    std::vector<int> indices;

    static ModeSubset sites(int first_site, int count);
    static ModeSubset all(int n_sites);
};

CovarianceState vacuum_state(int n_sites);

/// Gamma' = R Gamma R^T with R the Givens rotation by `angle` in the (j,k)
/// plane: R_jj = R_kk = cos, R_jk = sin, R_kj = -sin.
CovarianceState apply_plane_rotation(const CovarianceState& state, int j, int k,
                                     double angle);

/// In-place version used by circuit builders.
void plane_rotation_inplace(Eigen::MatrixXd& gamma, int j, int k, double angle);

/// Parity-conserving two-qubit gate u(x,y) on sites (left_site, left_site+1)
/// with periodic wraparound and the antiperiodic Majorana sign on wrapped
/// planes. Acts as the orthogonal u~(x', y') with x' = x+y, y' = x-y on the
/// four Majoranas of the two sites.
CovarianceState apply_two_site_gate(const CovarianceState& state, int left_site,
                                    double x, double y);
void two_site_gate_inplace(Eigen::MatrixXd& gamma, int n_sites, int left_site,
                           double x, double y);

/// Same gate parameterized directly by the primed angles.
void two_site_gate_primed_inplace(Eigen::MatrixXd& gamma, int n_sites,
                                  int left_site, double xp, double yp);

/// Keep only the given Majorana modes (rows/columns); generally mixed output.
CovarianceState restrict_modes(const CovarianceState& state,
                               const ModeSubset& subset);

/// Dilate to a pure state on twice the modes whose restriction to the first
/// half returns the input.
CovarianceState purify(const CovarianceState& state);

/// Von Neumann entropy (nats) of the reduced state on `subset`.
double entanglement_entropy(const CovarianceState& state,
                            const ModeSubset& subset);

/// Uhlmann fidelity between two Gaussian states of equal mode count.
double fidelity(const CovarianceState& a, const CovarianceState& b);

/// <i g_j g_k> = Gamma_{jk}; j != k required.
double expectation_quadratic(const CovarianceState& state, int j, int k);

bool is_pure(const CovarianceState& state, double tol = 1e-10);

/// Largest deviation from antisymmetry; 0 for a valid state.
double antisymmetry_defect(const CovarianceState& state);

/// Largest singular value of Gamma; must not exceed 1 (+tolerance).
double max_singular_value(const CovarianceState& state);

/// Throws std::runtime_error if antisymmetry or physicality fails.
void check_physical(const CovarianceState& state, double tol = 1e-9);

/// Canonical eigenvalues (paired singular values) of an antisymmetric matrix,
/// clamped into [0,1]; values above 1 + clamp_tol throw.
std::vector<double> canonical_eigenvalues(const Eigen::MatrixXd& gamma,
                                          double clamp_tol = 1e-9);

/// Row-major CSV of Gamma entries at 17 significant digits (debugging).
std::string gamma_to_csv(const CovarianceState& state);

}  // namespace dmera
