#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace dmera::dense {

// Brute-force spin-space oracle used to validate every covariance-matrix
// convention. Site p maps to bit p (LSB) of the basis index; Jordan-Wigner
// Majoranas are g_{2p} = (prod_{k<p} Z_k) X_p, g_{2p+1} = (prod Z_k) Y_p.

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr int kMaxCircuitQubits = 14;
inline constexpr int kMaxDenseQubits = 10;

Vec zero_state(int n_qubits);

void apply_majorana(Vec& psi, int n_qubits, int m);

/// exp(theta * g_a g_b) |psi>, a != b. Indices outside [0, 2L) fold back
/// antiperiodically (each fold flips the sign of theta).
void apply_majorana_rotation(Vec& psi, int n_qubits, int a, int b, double theta);

/// The literal 4x4 parity-conserving gate u(x,y) on adjacent qubits
/// (left, left+1), basis order |b_left b_right> = 00,01,10,11.
void apply_local_gate(Vec& psi, int n_qubits, int left, double x, double y);

/// u(x,y) on (left, left+1 mod L): literal matrix in the bulk, Majorana
/// rotations with the antiperiodic sign when the pair wraps.
void apply_two_site_gate(Vec& psi, int n_qubits, int left, double x, double y);

/// <i g_a g_b> on |psi> (indices folded antiperiodically).
double expectation_igg(const Vec& psi, int n_qubits, int a, int b);

/// <psi| P |psi> for a Pauli string over {I,X,Y,Z}, character p = site p.
double pauli_expectation(const Vec& psi, const std::string& paulis);

Mat ising_dense(int n_qubits);
Mat modified_ising_dense(int n_qubits);

struct DenseGround {
    double energy = 0.0;
    Vec state;                       // embedded in the full 2^L space
    std::vector<double> even_spectrum;  // all even-parity eigenvalues, ascending
};

/// Ground state and spectrum of the even-parity sector of a dense Hamiltonian.
DenseGround even_parity_ground(const Mat& h, int n_qubits);

/// Reduced density matrix of the first n_keep qubits.
Mat partial_trace_keep_prefix(const Vec& psi, int n_qubits, int n_keep);

double entropy(const Mat& rho);

/// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)).
double uhlmann_fidelity(const Mat& rho, const Mat& sigma);

}  // namespace dmera::dense
