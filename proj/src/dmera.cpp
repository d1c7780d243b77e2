#include "dmera/dmera.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace dmera {

ScalingLayout build_layout(int depth, int n_sites_out) {
    if (n_sites_out < 4 || n_sites_out % 2 != 0)
        throw std::invalid_argument("build_layout: n_sites_out must be even and >= 4");
    if (depth < 1) throw std::invalid_argument("build_layout: depth must be >= 1");
    ScalingLayout layout;
    layout.depth = depth;
    layout.n_sites = n_sites_out;
    for (int r = 0; r < depth; ++r) {
        const int offset = (r == 0) ? 0 : (r % 2);
        std::vector<GatePlacement> row;
        for (int s = offset; s < n_sites_out; s += 2)
            row.push_back({s, r == 0});
        layout.rows.push_back(std::move(row));
    }
    return layout;
}

namespace {

void apply_rows(Eigen::MatrixXd& gamma, int n_sites, const ScalingCircuit& circuit,
                bool open_patch) {
    for (int r = 0; r < circuit.depth; ++r) {
        const double xp = circuit.params[2 * r];
        const double yp = circuit.params[2 * r + 1];
        const int offset = (r == 0) ? 0 : (r % 2);
        for (int s = offset; s < n_sites; s += 2) {
            if (s + 1 == n_sites && open_patch) continue;
            two_site_gate_primed_inplace(gamma, n_sites, s, xp, yp);
        }
    }
}

Eigen::MatrixXd interleave_with_vacuum(const Eigen::MatrixXd& gamma_in, int n_in) {
    const int n = 2 * n_in;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int p = 0; p < n_in; ++p)
        for (int q = 0; q < n_in; ++q)
            g.block<2, 2>(4 * p, 4 * q) = gamma_in.block<2, 2>(2 * p, 2 * q);
    for (int p = 0; p < n_in; ++p) {
        g(4 * p + 2, 4 * p + 3) = -1.0;
        g(4 * p + 3, 4 * p + 2) = 1.0;
    }
    return g;
}

void check_circuit(const ScalingCircuit& c) {
    if (c.depth < 1 || c.params.size() != static_cast<size_t>(2 * c.depth))
        throw std::invalid_argument("ScalingCircuit: params length must be 2*depth");
}

}  // namespace

CovarianceState scaling_step(const CovarianceState& state,
                             const ScalingCircuit& circuit, bool open_patch) {
    check_circuit(circuit);
    CovarianceState out;
    out.n_sites = 2 * state.n_sites;
    out.gamma = interleave_with_vacuum(state.gamma, state.n_sites);
    apply_rows(out.gamma, out.n_sites, circuit, open_patch);
    return out;
}

CovarianceState prepare_state(const ScalingCircuit& circuit, int num_layers) {
    check_circuit(circuit);
    if (num_layers < 1) throw std::invalid_argument("prepare_state: num_layers >= 1");
    CovarianceState state = vacuum_state(1);
    for (int l = 0; l < num_layers; ++l) state = scaling_step(state, circuit, false);
    return state;
}

FixedPointResult fixed_point_window(const ScalingCircuit& circuit,
                                    const FixedPointOptions& opts) {
    check_circuit(circuit);
    if (!(opts.tol > 0)) throw std::invalid_argument("fixed_point_window: tol must be positive");
    const int w = 4 * circuit.depth + 4;
    CovarianceState window = vacuum_state(w);
    double residual = 0.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        CovarianceState doubled = scaling_step(window, circuit, /*open_patch=*/true);
        // Average the two one-site-shifted central restrictions: positions of
        // the tracked cell map to dyadic branch bits, so the averaged fixed
        // point carries the translation-averaged local state.
        const int lo = w / 2;
        Eigen::MatrixXd next =
            0.5 * (doubled.gamma.block(2 * lo, 2 * lo, 2 * w, 2 * w) +
                   doubled.gamma.block(2 * lo + 2, 2 * lo + 2, 2 * w, 2 * w));
        residual = (next - window.gamma).cwiseAbs().maxCoeff();
        window.gamma = std::move(next);
        if (residual < opts.tol) return {std::move(window), it, residual};
    }
    throw std::runtime_error("fixed_point_window: no convergence after " +
                             std::to_string(opts.max_iter) +
                             " iterations (residual " + std::to_string(residual) + ")");
}

double window_energy_density(const CovarianceState& window, ModelLabel label) {
    const auto& g = window.gamma;
    const int j = window.n_sites / 2 - 1;
    auto site_energy = [&](int p) {
        if (label == ModelLabel::ising)
            return g(2 * p, 2 * p + 1) + g(2 * p + 1, 2 * p + 2);
        // modified: + i g_{2p+1} g_{2p+2}  -  i g_{2p-1} g_{2p+2}
        return g(2 * p + 1, 2 * p + 2) - g(2 * p - 1, 2 * p + 2);
    };
    return 0.5 * (site_energy(j) + site_energy(j + 1));
}

double energy_density(const ScalingCircuit& circuit, ModelLabel label,
                      const FixedPointOptions& opts) {
    FixedPointResult fp = fixed_point_window(circuit, opts);
    return window_energy_density(fp.window, label);
}

std::vector<double> reflect_parameters(const std::vector<double>& params) {
    if (params.size() < 2 || params.size() % 2 != 0)
        throw std::invalid_argument("reflect_parameters: bad parameter count");
    std::vector<double> out(params.size());
    out[0] = params[1] + M_PI / 2.0;
    out[1] = params[0] - M_PI / 2.0;
    for (size_t r = 1; 2 * r < params.size(); ++r) {
        out[2 * r] = params[2 * r + 1];
        out[2 * r + 1] = params[2 * r];
    }
    return out;
}

namespace {

const std::vector<std::vector<double>>& ising_bundles() {
    static const std::vector<std::vector<double>> tables = {
        {0.43188, -1.13891},
        {0.1379, -0.56374, -0.53456, 0.18071},
        {-1.79716, -1.51891, 0.64486, 2.0904, 0.10994, -0.31494},
        {-1.66528, -1.55101, 1.05114, 1.82904, 0.43426, -0.74951, 0.07349,
         -0.20764},
        {-1.61046, -1.56358, 1.29107, 1.69499, 0.80132, -1.06696, 0.30863,
         -0.54539, 0.05158, -0.14651},
        {-1.58682, -1.56831, 1.42666, 1.6278, 1.08403, -1.28163, 0.62053,
         -0.85436, 0.2323, -0.4140, 0.03862, -0.11017},
    };
    return tables;
}

const std::vector<std::vector<double>>& modified_bundles() {
    static const std::vector<std::vector<double>> tables = {
        {-0.22107, -1.79187},
        {0.37921, -1.58672, -0.23588, -0.8906},
        {0.09744, -1.62352, -0.86247, -0.29472, -0.18693, 0.51259},
        {-0.0058, -0.21063, 1.6268, 0.78319, -1.08715, 0.1295, 2.77886,
         -0.08755},
        {-0.08357, -1.73696, -0.09269, -0.14014, 0.14162, 1.32826, -1.05885,
         0.11338, -0.42156, -0.40656},
        {0.03614, -1.56255, -1.11474, -0.28192, 0.55476, 2.59916, -0.08826,
         0.10361, -1.05898, -1.74665, -0.05094, 0.25421},
    };
    return tables;
}

}  // namespace

std::vector<double> load_bundled_parameters(ModelLabel model, int depth) {
    if (depth < 1 || depth > 6)
        throw std::invalid_argument("load_bundled_parameters: D must be in 1..6");
    switch (model) {
        case ModelLabel::ising: return ising_bundles()[depth - 1];
        case ModelLabel::modified_ising: return modified_bundles()[depth - 1];
        default: throw std::invalid_argument("load_bundled_parameters: unknown model");
    }
}

std::vector<ParameterRecord> read_parameter_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open parameter file: " + path);
    nlohmann::json j;
    in >> j;
    std::vector<ParameterRecord> out;
    const auto parse_one = [&](const nlohmann::json& e) {
        ParameterRecord rec;
        rec.model = e.at("model").get<std::string>();
        rec.depth = e.at("D").get<int>();
        rec.theta = e.at("theta").get<std::vector<double>>();
        if (rec.theta.size() != static_cast<size_t>(2 * rec.depth))
            throw std::runtime_error("parameter record: theta length != 2*D");
        out.push_back(std::move(rec));
    };
    if (j.is_array())
        for (const auto& e : j) parse_one(e);
    else
        parse_one(j);
    return out;
}

void write_parameter_file(const std::string& path,
                          const std::vector<ParameterRecord>& records) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& rec : records)
        j.push_back({{"model", rec.model}, {"D", rec.depth}, {"theta", rec.theta}});
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write parameter file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace dmera
