#pragma once

#include "dmera/covariance.hpp"
#include "dmera/models.hpp"

#include <string>
#include <vector>

namespace dmera {

// Scaling-circuit conventions (frozen by calibration against the bundled
// parameters; see README):
//   - a scaling step interleaves fresh |0> qubits at odd site indices,
//     pre-existing qubits at even indices;
//   - row 0 pairs (2k, 2k+1) and is the isometry row; row r >= 1 sits at
//     offset r mod 2; offset-1 rows wrap periodically with the antiperiodic
//     Majorana sign;
//   - row r uses x' = theta[2r], y' = theta[2r+1], fed to u~(x', y') as
//     plane rotations (g_{2p}, g_{2p+2}) by -x' and (g_{2p+1}, g_{2p+3}) by +y'.

struct GatePlacement {
    int left_site = 0;
    bool is_isometry = false;
};

struct ScalingLayout {
    int depth = 0;
    int n_sites = 0;
    std::vector<std::vector<GatePlacement>> rows;
};

struct ScalingCircuit {
    int depth = 0;
    std::vector<double> params;  // (x'_1, y'_1, ..., x'_D, y'_D)
};

/// Brickwork layout for one scaling transformation on n_sites_out sites.
ScalingLayout build_layout(int depth, int n_sites_out);

/// One scaling step: interleave fresh vacuum, then apply the circuit.
/// With open_patch = true the wrapping gates of offset-1 rows are skipped
/// (used for causal-cone windows).
CovarianceState scaling_step(const CovarianceState& state,
                             const ScalingCircuit& circuit,
                             bool open_patch = false);

/// L = 2^num_layers sites from num_layers >= 1 scaling steps; the first step
/// acts on the two-site vacuum with wraparound.
CovarianceState prepare_state(const ScalingCircuit& circuit, int num_layers);

struct FixedPointOptions {
    double tol = 1e-13;
    int max_iter = 500;
};

struct FixedPointResult {
    CovarianceState window;  // W = 4D + 4 sites
    int iterations = 0;
    double residual = 0.0;
};

/// Fixed point of the descending causal-cone channel, averaged over the two
/// one-site-shifted restrictions of the doubled window so the central cell
/// carries the translation-averaged local state. Throws on non-convergence.
FixedPointResult fixed_point_window(const ScalingCircuit& circuit,
                                    const FixedPointOptions& opts = {});

/// Energy per site of `label` on the central two sites of a window state.
double window_energy_density(const CovarianceState& window, ModelLabel label);

/// Translation-averaged energy density of the infinite-depth ansatz.
double energy_density(const ScalingCircuit& circuit,
                      ModelLabel label = ModelLabel::ising,
                      const FixedPointOptions& opts = {});

/// Parameter transform preparing the spatially reflected state: non-isometry
/// rows swap x' and y'; the isometry row maps (x', y') -> (y'+pi/2, x'-pi/2).
std::vector<double> reflect_parameters(const std::vector<double>& params);

/// Published optimized parameters, D in 1..6, for both models.
std::vector<double> load_bundled_parameters(ModelLabel model, int depth);

struct ParameterRecord {
    std::string model;
    int depth = 0;
    std::vector<double> theta;
};

/// JSON schema: [{"model": "ising", "D": 1, "theta": [...]}, ...]
std::vector<ParameterRecord> read_parameter_file(const std::string& path);
void write_parameter_file(const std::string& path,
                          const std::vector<ParameterRecord>& records);

}  // namespace dmera
