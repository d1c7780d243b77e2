#include "dmera/covariance.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dmera {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_mode_index(const CovarianceState& s, int j) {
    require(j >= 0 && j < s.n_modes(), "Majorana index out of range: " + std::to_string(j));
}

}  // namespace

ModeSubset ModeSubset::sites(int first_site, int count) {
    ModeSubset out;
    out.indices.reserve(2 * count);
    for (int p = first_site; p < first_site + count; ++p) {
        out.indices.push_back(2 * p);
        out.indices.push_back(2 * p + 1);
    }
    return out;
}

ModeSubset ModeSubset::all(int n_sites) { return sites(0, n_sites); }

CovarianceState vacuum_state(int n_sites) {
    require(n_sites >= 1, "vacuum_state: n_sites must be positive");
    CovarianceState s;
    s.n_sites = n_sites;
    s.gamma = Eigen::MatrixXd::Zero(2 * n_sites, 2 * n_sites);
    for (int p = 0; p < n_sites; ++p) {
        s.gamma(2 * p, 2 * p + 1) = -1.0;  // <Z_p> = +1
        s.gamma(2 * p + 1, 2 * p) = 1.0;
    }
    return s;
}

void plane_rotation_inplace(Eigen::MatrixXd& gamma, int j, int k, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    const Eigen::Index n = gamma.rows();
    for (Eigen::Index m = 0; m < n; ++m) {
        const double gj = gamma(j, m), gk = gamma(k, m);
        gamma(j, m) = c * gj + s * gk;
        gamma(k, m) = -s * gj + c * gk;
    }
    for (Eigen::Index m = 0; m < n; ++m) {
        const double gj = gamma(m, j), gk = gamma(m, k);
        gamma(m, j) = c * gj + s * gk;
        gamma(m, k) = -s * gj + c * gk;
    }
}

CovarianceState apply_plane_rotation(const CovarianceState& state, int j, int k,
                                     double angle) {
    check_mode_index(state, j);
    check_mode_index(state, k);
    require(j != k, "apply_plane_rotation: j == k");
    CovarianceState out = state;
    plane_rotation_inplace(out.gamma, j, k, angle);
    return out;
}

void two_site_gate_primed_inplace(Eigen::MatrixXd& gamma, int n_sites,
                                  int left_site, double xp, double yp) {
    require(left_site >= 0 && left_site < n_sites, "two_site_gate: site out of range");
    int right = left_site + 1;
    double wrap_sign = 1.0;
    if (right == n_sites) {
        right = 0;
        wrap_sign = -1.0;  // antiperiodic: wrapped Majoranas enter with a minus
    }
    const int a = 2 * left_site, b = 2 * left_site + 1;
    const int c = 2 * right, d = 2 * right + 1;
    plane_rotation_inplace(gamma, a, c, -xp * wrap_sign);
    plane_rotation_inplace(gamma, b, d, yp * wrap_sign);
}

void two_site_gate_inplace(Eigen::MatrixXd& gamma, int n_sites, int left_site,
                           double x, double y) {
    two_site_gate_primed_inplace(gamma, n_sites, left_site, x + y, x - y);
}

CovarianceState apply_two_site_gate(const CovarianceState& state, int left_site,
                                    double x, double y) {
    CovarianceState out = state;
    two_site_gate_inplace(out.gamma, out.n_sites, left_site, x, y);
    return out;
}

CovarianceState restrict_modes(const CovarianceState& state,
                               const ModeSubset& subset) {
    const auto& idx = subset.indices;
    require(!idx.empty(), "restrict_modes: empty subset");
    for (size_t i = 0; i < idx.size(); ++i) {
        check_mode_index(state, idx[i]);
        if (i > 0) require(idx[i] > idx[i - 1], "restrict_modes: indices not strictly increasing");
    }
    const int m = static_cast<int>(idx.size());
    CovarianceState out;
    out.n_sites = m / 2;  // nominal site count; exact when modes pair into sites
    out.gamma.resize(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) out.gamma(r, c) = state.gamma(idx[r], idx[c]);
    return out;
}

namespace {

// Canonical decomposition Gamma = Q T Q^T with T block-diagonal,
// blocks [[0, lam],[-lam, 0]], lam >= 0. Returns lam values (one per block).
std::vector<double> canonical_form(const Eigen::MatrixXd& gamma,
                                   Eigen::MatrixXd& q_out) {
    const Eigen::Index n = gamma.rows();
    Eigen::RealSchur<Eigen::MatrixXd> schur(gamma);
    Eigen::MatrixXd t = schur.matrixT();
    Eigen::MatrixXd q = schur.matrixU();

    std::vector<double> lambdas;
    std::vector<Eigen::Index> singles;  // 1x1 zero blocks awaiting pairing
    Eigen::Index i = 0;
    while (i < n) {
        if (i + 1 < n && std::abs(t(i + 1, i)) > 1e-13) {
            double lam = t(i, i + 1);
            if (lam < 0) {  // swap basis vectors to normalize block sign
                q.col(i).swap(q.col(i + 1));
                lam = -lam;
            }
            lambdas.push_back(lam);
            i += 2;
        } else {
            singles.push_back(i);
            i += 1;
        }
    }
    // Pair leftover zero modes.
    for (size_t k = 0; k + 1 < singles.size(); k += 2) lambdas.push_back(0.0);
    if (singles.size() % 2 != 0)
        throw std::runtime_error("canonical_form: odd number of zero modes");
    // Move paired singles adjacent at the tail of q.
    if (!singles.empty()) {
        Eigen::MatrixXd q2 = q;
        Eigen::Index col = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            bool is_single = false;
            for (auto s : singles)
                if (s == j) is_single = true;
            if (!is_single) q2.col(col++) = q.col(j);
        }
        for (auto s : singles) q2.col(col++) = q.col(s);
        q = q2;
        // recompute lambdas in the permuted order: non-zero blocks first
        std::vector<double> lam2;
        for (double l : lambdas)
            if (l != 0.0) lam2.push_back(l);
        for (size_t k = 0; k + 1 < singles.size(); k += 2) lam2.push_back(0.0);
        lambdas = lam2;
    }
    q_out = q;
    return lambdas;
}

}  // namespace

CovarianceState purify(const CovarianceState& state) {
    const int n = state.n_modes();
    Eigen::MatrixXd q;
    std::vector<double> lams = canonical_form(state.gamma, q);

    Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < n / 2; ++m) {
        double lam = std::min(1.0, std::max(-1.0, lams[m]));
        const double muv = std::sqrt(std::max(0.0, 1.0 - lam * lam));
        mu(2 * m, 2 * m) = muv;
        mu(2 * m + 1, 2 * m + 1) = muv;
    }
    Eigen::MatrixXd x = q * mu * q.transpose();

    CovarianceState out;
    out.n_sites = state.n_sites * 2;
    out.gamma.resize(2 * n, 2 * n);
    out.gamma.topLeftCorner(n, n) = state.gamma;
    out.gamma.topRightCorner(n, n) = x;
    out.gamma.bottomLeftCorner(n, n) = -x;
    out.gamma.bottomRightCorner(n, n) = -state.gamma;
    return out;
}

std::vector<double> canonical_eigenvalues(const Eigen::MatrixXd& gamma,
                                          double clamp_tol) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(gamma);
    const auto& sv = svd.singularValues();
    std::vector<double> out;
    for (Eigen::Index i = 0; i < sv.size(); i += 2) {
        double lam = sv(i);
        if (lam > 1.0 + clamp_tol)
            throw std::runtime_error("canonical_eigenvalues: unphysical value " +
                                     std::to_string(lam));
        out.push_back(std::min(lam, 1.0));
    }
    return out;
}

double entanglement_entropy(const CovarianceState& state,
                            const ModeSubset& subset) {
    require(subset.indices.size() % 2 == 0,
            "entanglement_entropy: subset must have even cardinality");
    CovarianceState sub = restrict_modes(state, subset);
    double total = 0.0;
    for (double lam : canonical_eigenvalues(sub.gamma)) {
        for (double p : {(1.0 + lam) / 2.0, (1.0 - lam) / 2.0}) {
            if (p > 1e-300) total -= p * std::log(p);
        }
    }
    return total;
}

double expectation_quadratic(const CovarianceState& state, int j, int k) {
    check_mode_index(state, j);
    check_mode_index(state, k);
    require(j != k, "expectation_quadratic: j == k has no Gamma entry");
    return state.gamma(j, k);
}

bool is_pure(const CovarianceState& state, double tol) {
    const int n = state.n_modes();
    Eigen::MatrixXd ggt = state.gamma * state.gamma.transpose();
    return (ggt - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < tol;
}

double antisymmetry_defect(const CovarianceState& state) {
    return (state.gamma + state.gamma.transpose()).cwiseAbs().maxCoeff();
}

double max_singular_value(const CovarianceState& state) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(state.gamma);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

void check_physical(const CovarianceState& state, double tol) {
    if (antisymmetry_defect(state) > 1e-12)
        throw std::runtime_error("covariance matrix not antisymmetric");
    if (max_singular_value(state) > 1.0 + std::max(tol, 1e-10))
        throw std::runtime_error("covariance matrix violates physicality");
}

namespace {

struct LogDet {
    double log_abs = 0.0;
};

// log|det(I - Ga*Gb)| via complex eigenvalues of Ga*Gb.
LogDet logdet_one_minus(const Eigen::MatrixXd& ga, const Eigen::MatrixXd& gb) {
    Eigen::MatrixXd m = ga * gb;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
    LogDet out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        std::complex<double> v = 1.0 - es.eigenvalues()(i);
        double mag = std::abs(v);
        if (mag == 0.0) return LogDet{-std::numeric_limits<double>::infinity()};
        out.log_abs += std::log(mag);
    }
    return out;
}

double pure_fidelity(const Eigen::MatrixXd& ga, const Eigen::MatrixXd& gb) {
    Eigen::MatrixXd avg = 0.5 * (ga + gb);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(avg);
    // log|det| from U factors to avoid under/overflow at large n
    double log_abs = 0.0;
    bool zero = false;
    const auto& u = lu.matrixLU();
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        double d = std::abs(u(i, i));
        if (d == 0.0) { zero = true; break; }
        log_abs += std::log(d);
    }
    if (zero) return 0.0;
    return std::exp(0.25 * log_abs);
}

}  // namespace

namespace {

// log F via the mixed-state formula
//   F = 2^{-n/2} det(I - Ga Gb)^{1/4} det(I + sqrt(I + G^2))^{1/4},
//   G = (I - Ga Gb)^{-1} (Ga + Gb),
// determinants accumulated in log space for large mode counts.
double mixed_log_fidelity(const Eigen::MatrixXd& ga, const Eigen::MatrixXd& gb) {
    const int dim = static_cast<int>(ga.rows());
    const int n = dim / 2;

    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim, dim) - ga * gb;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    {
        const auto& u = lu.matrixLU();
        double min_diag = std::numeric_limits<double>::infinity();
        double max_diag = 0.0;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            const double d = std::abs(u(i, i));
            min_diag = std::min(min_diag, d);
            max_diag = std::max(max_diag, d);
        }
        if (min_diag == 0.0 || min_diag < 1e-300 * std::max(1.0, max_diag))
            throw std::runtime_error("fidelity: degenerate overlap (I - Ga*Gb singular)");
    }
    Eigen::MatrixXd g = lu.solve(ga + gb);

    LogDet d1 = logdet_one_minus(ga, gb);
    if (!std::isfinite(d1.log_abs)) return -std::numeric_limits<double>::infinity();

    Eigen::EigenSolver<Eigen::MatrixXd> es(g, /*computeEigenvectors=*/false);
    double d2_log = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const std::complex<double> t = es.eigenvalues()(i);
        d2_log += std::log(std::abs(1.0 + std::sqrt(1.0 + t * t)));
    }
    return -0.5 * n * std::log(2.0) + 0.25 * d1.log_abs + 0.25 * d2_log;
}

}  // namespace

double fidelity(const CovarianceState& a, const CovarianceState& b) {
    require(a.gamma.rows() == b.gamma.rows(), "fidelity: mode count mismatch");
    const int dim = static_cast<int>(a.gamma.rows());
    require(dim % 2 == 0, "fidelity: odd mode count");

    if (is_pure(a) || is_pure(b)) return std::min(1.0, pure_fidelity(a.gamma, b.gamma));

    // Geometric mean of both argument orders keeps the result exactly
    // symmetric under roundoff.
    const double lf = 0.5 * (mixed_log_fidelity(a.gamma, b.gamma) +
                             mixed_log_fidelity(b.gamma, a.gamma));
    if (!std::isfinite(lf)) return 0.0;
    return std::min(1.0, std::exp(lf));
}

std::string gamma_to_csv(const CovarianceState& state) {
    std::string out;
    char buf[40];
    const int n = state.n_modes();
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", state.gamma(r, c));
            out += buf;
            out += (c + 1 == n) ? '\n' : ',';
        }
    }
    return out;
}

}  // namespace dmera
