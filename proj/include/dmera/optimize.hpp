#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dmera {

struct Objective {
    int arity = 0;
    std::function<double(const std::vector<double>&)> evaluate;
    std::string description;
};

struct TrajectoryPoint {
    std::vector<double> params;
    double value = 0.0;
    double grad_norm = 0.0;
};

struct OptimizationRun {
    std::vector<double> initial_params;
    std::vector<TrajectoryPoint> trajectory;  // accepted (improving) steps
    std::vector<double> final_params;
    double final_value = 0.0;
    bool converged = false;
    int restarts_used = 0;
    long evaluations = 0;
};

struct LbfgsOptions {
    int memory = 10;
    int max_iter = 2000;
    double grad_tol = 1e-10;
    int restarts = 8;
    double perturbation_scale = 0.05;
    double fd_step = 1e-6;
    std::uint64_t seed = 0;
    bool use_gd_stage = false;  // optional plain gradient-descent warmup
    int gd_iters = 50;
};

/// Central finite differences (f(x+h e_i) - f(x-h e_i)) / 2h per coordinate.
/// Throws on a non-finite objective value.
std::vector<double> finite_diff_gradient(const Objective& obj,
                                         const std::vector<double>& params,
                                         double h);

/// Two-loop-recursion L-BFGS with Armijo backtracking (c = 1e-4, halving).
/// On a stall, restarts from the best point perturbed by Gaussian noise.
OptimizationRun lbfgs_minimize(const Objective& obj,
                               const std::vector<double>& initial,
                               const LbfgsOptions& opts = {});

enum class BootstrapMode { append_one, insert_two };

/// Extends a depth-D parameter vector to D+1 (append_one) or D+2 (insert_two
/// at row `insert_position`), new rows drawn from N(0, sigma^2), sigma = 1e-3.
std::vector<double> bootstrap_depth(const std::vector<double>& params,
                                    BootstrapMode mode, int insert_position,
                                    std::uint64_t seed);

/// JSON-lines log of the accepted steps: {"iter":..,"value":..,"grad_norm":..}.
std::string run_log_jsonl(const OptimizationRun& run);

}  // namespace dmera
