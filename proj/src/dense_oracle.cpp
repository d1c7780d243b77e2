#include "dmera/dense_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace dmera::dense {

namespace {

using cd = std::complex<double>;

void check_qubits(int n, int cap) {
    if (n < 1 || n > cap)
        throw std::invalid_argument("dense oracle: qubit count " + std::to_string(n) +
                                    " exceeds cap " + std::to_string(cap));
}

// Phase of the Z string over qubits k < p for basis index I.
double string_phase(long long idx, int p) {
    int pops = 0;
    for (int k = 0; k < p; ++k) pops += (idx >> k) & 1;
    return (pops % 2) ? -1.0 : 1.0;
}

}  // namespace

Vec zero_state(int n_qubits) {
    check_qubits(n_qubits, kMaxCircuitQubits);
    Vec psi = Vec::Zero(1LL << n_qubits);
    psi(0) = 1.0;
    return psi;
}

void apply_majorana(Vec& psi, int n_qubits, int m) {
    const int p = m / 2;
    const bool is_y = m % 2;
    const long long dim = psi.size();
    const long long bit = 1LL << p;
    Vec out(dim);
    for (long long i = 0; i < dim; ++i) {
        const long long j = i ^ bit;
        cd amp = psi(j) * string_phase(i, p);
        if (is_y) amp *= (i & bit) ? cd(0, 1) : cd(0, -1);
        out(i) = amp;
    }
    psi.swap(out);
    (void)n_qubits;
}

void apply_majorana_rotation(Vec& psi, int n_qubits, int a, int b, double theta) {
    const int nn = 2 * n_qubits;
    while (a >= nn) { a -= nn; theta = -theta; }
    while (a < 0) { a += nn; theta = -theta; }
    while (b >= nn) { b -= nn; theta = -theta; }
    while (b < 0) { b += nn; theta = -theta; }
    if (a == b) throw std::invalid_argument("apply_majorana_rotation: a == b");
    Vec gb = psi;
    apply_majorana(gb, n_qubits, b);
    apply_majorana(gb, n_qubits, a);
    psi = std::cos(theta) * psi + std::sin(theta) * gb;
}

void apply_local_gate(Vec& psi, int n_qubits, int left, double x, double y) {
    if (left < 0 || left + 1 >= n_qubits)
        throw std::invalid_argument("apply_local_gate: pair out of range");
    const double cx = std::cos(x), sx = std::sin(x);
    const double cy = std::cos(y), sy = std::sin(y);
    const long long bl = 1LL << left, br = 1LL << (left + 1);
    const long long dim = psi.size();
    for (long long base = 0; base < dim; ++base) {
        if (base & (bl | br)) continue;
        const long long i00 = base, i01 = base | br, i10 = base | bl,
                        i11 = base | bl | br;
        const cd a00 = psi(i00), a01 = psi(i01), a10 = psi(i10), a11 = psi(i11);
        psi(i00) = cx * a00 + sx * a11;
        psi(i01) = cy * a01 + sy * a10;
        psi(i10) = -sy * a01 + cy * a10;
        psi(i11) = -sx * a00 + cx * a11;
    }
}

void apply_two_site_gate(Vec& psi, int n_qubits, int left, double x, double y) {
    const double xp = x + y, yp = x - y;
    if (left + 1 < n_qubits) {
        apply_local_gate(psi, n_qubits, left, x, y);
        return;
    }
    if (left != n_qubits - 1)
        throw std::invalid_argument("apply_two_site_gate: site out of range");
    // Wrapped gate: apply the Majorana-plane rotations with the antiperiodic
    // sign. A covariance plane rotation by phi corresponds to exp((phi/2) g g).
    const int a = 2 * left, b = 2 * left + 1;
    apply_majorana_rotation(psi, n_qubits, a, 2 * n_qubits, -xp / 2.0);
    apply_majorana_rotation(psi, n_qubits, b, 2 * n_qubits + 1, yp / 2.0);
}

double expectation_igg(const Vec& psi, int n_qubits, int a, int b) {
    const int nn = 2 * n_qubits;
    double sign = 1.0;
    while (a >= nn) { a -= nn; sign = -sign; }
    while (a < 0) { a += nn; sign = -sign; }
    while (b >= nn) { b -= nn; sign = -sign; }
    while (b < 0) { b += nn; sign = -sign; }
    Vec chi = psi;
    apply_majorana(chi, n_qubits, b);
    apply_majorana(chi, n_qubits, a);
    const cd val = cd(0, 1) * psi.dot(chi);
    return sign * val.real();
}

double pauli_expectation(const Vec& psi, const std::string& paulis) {
    const int n = static_cast<int>(paulis.size());
    Vec phi = psi;
    for (int p = 0; p < n; ++p) {
        const char op = paulis[p];
        if (op == 'I') continue;
        const long long bit = 1LL << p;
        const long long dim = phi.size();
        Vec out(dim);
        for (long long i = 0; i < dim; ++i) {
            switch (op) {
                case 'X': out(i) = phi(i ^ bit); break;
                case 'Y': out(i) = phi(i ^ bit) * ((i & bit) ? cd(0, 1) : cd(0, -1)); break;
                case 'Z': out(i) = phi(i) * ((i & bit) ? -1.0 : 1.0); break;
                default: throw std::invalid_argument("pauli_expectation: bad op");
            }
        }
        phi.swap(out);
    }
    return psi.dot(phi).real();
}

namespace {

Mat pauli_matrix(const std::string& paulis) {
    const int n = static_cast<int>(paulis.size());
    const long long dim = 1LL << n;
    Mat m = Mat::Zero(dim, dim);
    for (long long j = 0; j < dim; ++j) {
        Vec e = Vec::Zero(dim);
        e(j) = 1.0;
        Vec col = e;
        // reuse the expectation machinery's column action
        for (int p = 0; p < n; ++p) {
            const char op = paulis[p];
            if (op == 'I') continue;
            const long long bit = 1LL << p;
            Vec out(dim);
            for (long long i = 0; i < dim; ++i) {
                switch (op) {
                    case 'X': out(i) = col(i ^ bit); break;
                    case 'Y': out(i) = col(i ^ bit) * ((i & bit) ? cd(0, 1) : cd(0, -1)); break;
                    default: out(i) = col(i) * ((i & bit) ? -1.0 : 1.0); break;
                }
            }
            col.swap(out);
        }
        m.col(j) = col;
    }
    return m;
}

}  // namespace

Mat ising_dense(int n_qubits) {
    check_qubits(n_qubits, kMaxDenseQubits);
    const long long dim = 1LL << n_qubits;
    Mat h = Mat::Zero(dim, dim);
    for (int p = 0; p < n_qubits; ++p) {
        std::string xx(n_qubits, 'I'), z(n_qubits, 'I');
        xx[p] = 'X';
        xx[(p + 1) % n_qubits] = 'X';
        z[p] = 'Z';
        h -= pauli_matrix(xx);
        h -= pauli_matrix(z);
    }
    return h;
}

Mat modified_ising_dense(int n_qubits) {
    check_qubits(n_qubits, kMaxDenseQubits);
    const long long dim = 1LL << n_qubits;
    Mat h = Mat::Zero(dim, dim);
    for (int p = 0; p < n_qubits; ++p) {
        std::string xx(n_qubits, 'I'), xzx(n_qubits, 'I');
        xx[p] = 'X';
        xx[(p + 1) % n_qubits] = 'X';
        xzx[(p + n_qubits - 1) % n_qubits] = 'X';
        xzx[p] = 'Z';
        xzx[(p + 1) % n_qubits] = 'X';
        h -= pauli_matrix(xx);
        h += pauli_matrix(xzx);
    }
    return h;
}

DenseGround even_parity_ground(const Mat& h, int n_qubits) {
    check_qubits(n_qubits, kMaxDenseQubits);
    const long long dim = 1LL << n_qubits;
    std::vector<long long> even;
    for (long long i = 0; i < dim; ++i)
        if (__builtin_popcountll(i) % 2 == 0) even.push_back(i);

    Mat block(even.size(), even.size());
    for (size_t r = 0; r < even.size(); ++r)
        for (size_t c = 0; c < even.size(); ++c) block(r, c) = h(even[r], even[c]);

    Eigen::SelfAdjointEigenSolver<Mat> es(block);
    DenseGround out;
    out.energy = es.eigenvalues()(0);
    out.even_spectrum.assign(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
    out.state = Vec::Zero(dim);
    for (size_t r = 0; r < even.size(); ++r) out.state(even[r]) = es.eigenvectors()(r, 0);
    return out;
}

Mat partial_trace_keep_prefix(const Vec& psi, int n_qubits, int n_keep) {
    if (n_keep < 1 || n_keep > n_qubits)
        throw std::invalid_argument("partial_trace: bad n_keep");
    const long long keep_dim = 1LL << n_keep;
    const long long rest_dim = 1LL << (n_qubits - n_keep);
    Mat rho = Mat::Zero(keep_dim, keep_dim);
    for (long long r = 0; r < rest_dim; ++r) {
        const long long off = r << n_keep;
        for (long long i = 0; i < keep_dim; ++i)
            for (long long j = 0; j < keep_dim; ++j)
                rho(i, j) += psi(off + i) * std::conj(psi(off + j));
    }
    return rho;
}

double entropy(const Mat& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-14) s -= p * std::log(p);
    }
    return s;
}

double uhlmann_fidelity(const Mat& rho, const Mat& sigma) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    Mat sqrt_rho = es.eigenvectors() *
                   es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                   es.eigenvectors().adjoint();
    Mat inner = sqrt_rho * sigma * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Mat> es2(inner);
    double f = 0.0;
    for (Eigen::Index i = 0; i < es2.eigenvalues().size(); ++i)
        f += std::sqrt(std::max(0.0, es2.eigenvalues()(i)));
    return f;
}

}  // namespace dmera::dense
