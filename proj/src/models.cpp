#include "dmera/models.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dmera {

ModelLabel model_from_string(const std::string& name) {
    if (name == "ising") return ModelLabel::ising;
    if (name == "modified_ising" || name == "modified") return ModelLabel::modified_ising;
    throw std::invalid_argument("unknown model: " + name);
}

std::string model_to_string(ModelLabel label) {
    switch (label) {
        case ModelLabel::ising: return "ising";
        case ModelLabel::modified_ising: return "modified_ising";
        default: return "custom";
    }
}

void add_majorana_coupling(QuadraticHamiltonian& h, int a, int b, double coeff) {
    const int n = 2 * h.n_sites;
    double sign = 1.0;
    while (a >= n) { a -= n; sign = -sign; }
    while (a < 0) { a += n; sign = -sign; }
    while (b >= n) { b -= n; sign = -sign; }
    while (b < 0) { b += n; sign = -sign; }
    if (a == b) throw std::invalid_argument("add_majorana_coupling: a == b");
    if (a > b) { std::swap(a, b); sign = -sign; }
    h.coupling(a, b) += 2.0 * coeff * sign;
    h.coupling(b, a) -= 2.0 * coeff * sign;
}

QuadraticHamiltonian ising_hamiltonian(int n_sites) {
    if (n_sites < 2 || n_sites % 2 != 0)
        throw std::invalid_argument("ising_hamiltonian: L must be even and >= 2");
    QuadraticHamiltonian h;
    h.n_sites = n_sites;
    h.label = ModelLabel::ising;
    h.coupling = Eigen::MatrixXd::Zero(2 * n_sites, 2 * n_sites);
    for (int m = 0; m < 2 * n_sites; ++m) add_majorana_coupling(h, m, m + 1, 1.0);
    return h;
}

QuadraticHamiltonian modified_ising_hamiltonian(int n_sites) {
    if (n_sites < 4 || n_sites % 2 != 0)
        throw std::invalid_argument("modified_ising_hamiltonian: L must be even and >= 4");
    QuadraticHamiltonian h;
    h.n_sites = n_sites;
    h.label = ModelLabel::modified_ising;
    h.coupling = Eigen::MatrixXd::Zero(2 * n_sites, 2 * n_sites);
    for (int p = 0; p < n_sites; ++p) {
        add_majorana_coupling(h, 2 * p + 1, 2 * p + 2, 1.0);   // -X_p X_{p+1}
        add_majorana_coupling(h, 2 * p - 1, 2 * p + 2, -1.0);  // +X_{p-1} Z_p X_{p+1}
    }
    return h;
}

QuadraticHamiltonian hamiltonian_for(ModelLabel label, int n_sites) {
    switch (label) {
        case ModelLabel::ising: return ising_hamiltonian(n_sites);
        case ModelLabel::modified_ising: return modified_ising_hamiltonian(n_sites);
        default: throw std::invalid_argument("hamiltonian_for: custom label");
    }
}

ExactSolution exact_ground_state(const QuadraticHamiltonian& h) {
    const int n = 2 * h.n_sites;
    if (h.coupling.rows() != n) throw std::invalid_argument("exact_ground_state: bad coupling size");

    // i*A is Hermitian with eigenvalues +-eps_m; the filled Fermi sea is
    // Gamma = -2 Im(P_+) with P_+ the positive-eigenspace projector.
    Eigen::MatrixXcd ia = std::complex<double>(0, 1) * h.coupling.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ia);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("exact_ground_state: eigensolver failed");

    ExactSolution sol;
    Eigen::MatrixXcd pos = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = es.eigenvalues()(i);
        if (std::abs(w) < 1e-12)
            throw std::runtime_error("exact_ground_state: zero single-particle mode (degenerate)");
        if (w > 0) {
            sol.single_particle_spectrum.push_back(w);
            pos += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
        }
    }
    std::sort(sol.single_particle_spectrum.begin(), sol.single_particle_spectrum.end());

    sol.ground_state.n_sites = h.n_sites;
    sol.ground_state.gamma = -2.0 * pos.imag();
    sol.ground_energy = 0.0;
    for (double e : sol.single_particle_spectrum) sol.ground_energy -= 0.5 * e;
    return sol;
}

const ExactSolution& exact_ground_state_cached(ModelLabel label, int n_sites) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, ExactSolution> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(static_cast<int>(label), n_sites);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, exact_ground_state(hamiltonian_for(label, n_sites))).first;
    return it->second;
}

double energy(const CovarianceState& state, const QuadraticHamiltonian& h) {
    if (state.n_modes() != 2 * h.n_sites)
        throw std::invalid_argument("energy: size mismatch");
    return 0.25 * (h.coupling.array() * state.gamma.array()).sum();
}

double exact_ising_energy_density(int n_sites) {
    return -(2.0 / n_sites) / std::sin(M_PI / (2.0 * n_sites));
}

double exact_ising_correlator(int n_sites, int separation) {
    if (separation % 2 == 0) return 0.0;
    const int nn = 2 * n_sites;
    return -(2.0 / nn) / std::sin(M_PI * separation / nn);
}

std::string exact_reference_csv(ModelLabel label, int n_sites, int max_distance) {
    const ExactSolution& sol = exact_ground_state_cached(label, n_sites);
    const auto& g = sol.ground_state.gamma;
    const int nn = 2 * n_sites;
    std::string out = "L,distance,family,value\n";
    char buf[96];
    for (int d = 1; d <= max_distance; ++d) {
        // family A: i g_{2i} g_{2(i+d)+1} in 0-based indices (site i with
        // first Majorana); family B shifts both indices by one.
        for (int fam = 0; fam < 2; ++fam) {
            int a = fam, b = 2 * d + 1 + fam;
            double sign = 1.0;
            if (b >= nn) { b -= nn; sign = -sign; }
            std::snprintf(buf, sizeof buf, "%d,%d,%c,%.17g\n", n_sites, d,
                          fam == 0 ? 'A' : 'B', sign * g(a, b));
            out += buf;
        }
    }
    return out;
}

}  // namespace dmera
