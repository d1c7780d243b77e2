#include "dmera/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <random>
#include <stdexcept>

namespace dmera {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<double> finite_diff_gradient(const Objective& obj,
                                         const std::vector<double>& params,
                                         double h) {
    if (!(h > 0)) throw std::invalid_argument("finite_diff_gradient: h must be positive");
    std::vector<double> grad(params.size());
    std::vector<double> probe = params;
    for (size_t i = 0; i < params.size(); ++i) {
        probe[i] = params[i] + h;
        const double fp = obj.evaluate(probe);
        probe[i] = params[i] - h;
        const double fm = obj.evaluate(probe);
        probe[i] = params[i];
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw std::runtime_error("finite_diff_gradient: non-finite objective");
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

namespace {

struct SingleRun {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    long evaluations = 0;
};

// One L-BFGS descent from x0; records improving steps into run.trajectory.
SingleRun lbfgs_single(const Objective& obj, std::vector<double> x,
                       const LbfgsOptions& opts, OptimizationRun& run,
                       double& best_value) {
    const size_t n = x.size();
    SingleRun out;
    double fx = obj.evaluate(x);
    out.evaluations = 1;
    auto grad_of = [&](const std::vector<double>& p) {
        out.evaluations += 2 * static_cast<long>(n);
        return finite_diff_gradient(obj, p, opts.fd_step);
    };
    std::vector<double> g = grad_of(x);

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    auto record = [&](double gn) {
        if (fx < best_value) {
            best_value = fx;
            run.trajectory.push_back({x, fx, gn});
        }
    };
    record(norm2(g));

    int gd_left = opts.use_gd_stage ? opts.gd_iters : 0;

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const double gnorm = norm2(g);
        if (gnorm < opts.grad_tol) {
            out.converged = true;
            break;
        }

        // search direction
        std::vector<double> d(n);
        if (gd_left > 0 || s_hist.empty()) {
            for (size_t i = 0; i < n; ++i) d[i] = -g[i];
            if (gd_left > 0) --gd_left;
        } else {
            // two-loop recursion
            std::vector<double> q = g;
            std::vector<double> alpha(s_hist.size());
            for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
                alpha[i] = rho_hist[i] * dot(s_hist[i], q);
                for (size_t k = 0; k < n; ++k) q[k] -= alpha[i] * y_hist[i][k];
            }
            const double gamma =
                dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
            for (size_t k = 0; k < n; ++k) q[k] *= gamma;
            for (size_t i = 0; i < s_hist.size(); ++i) {
                const double beta = rho_hist[i] * dot(y_hist[i], q);
                for (size_t k = 0; k < n; ++k) q[k] += (alpha[i] - beta) * s_hist[i][k];
            }
            for (size_t k = 0; k < n; ++k) d[k] = -q[k];
        }

        double dg = dot(d, g);
        if (dg >= 0) {  // not a descent direction; reset to steepest descent
            for (size_t i = 0; i < n; ++i) d[i] = -g[i];
            dg = -gnorm * gnorm;
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
        }

        // Armijo backtracking, c = 1e-4, halving
        constexpr double c1 = 1e-4;
        double step = 1.0;
        std::vector<double> xn(n);
        double fn = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (size_t i = 0; i < n; ++i) xn[i] = x[i] + step * d[i];
            fn = obj.evaluate(xn);
            ++out.evaluations;
            if (std::isfinite(fn) && fn <= fx + c1 * step * dg) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // line-search stall; caller may restart

        std::vector<double> gn_vec = grad_of(xn);
        std::vector<double> s(n), yv(n);
        for (size_t i = 0; i < n; ++i) {
            s[i] = xn[i] - x[i];
            yv[i] = gn_vec[i] - g[i];
        }
        const double sy = dot(s, yv);
        if (sy > 1e-14) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(yv));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opts.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        x = std::move(xn);
        fx = fn;
        g = std::move(gn_vec);
        record(norm2(g));
    }

    out.x = std::move(x);
    out.value = fx;
    return out;
}

}  // namespace

OptimizationRun lbfgs_minimize(const Objective& obj,
                               const std::vector<double>& initial,
                               const LbfgsOptions& opts) {
    if (initial.size() != static_cast<size_t>(obj.arity))
        throw std::invalid_argument("lbfgs_minimize: arity mismatch");
    OptimizationRun run;
    run.initial_params = initial;

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> noise(0.0, opts.perturbation_scale);

    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_x = initial;
    bool any_converged = false;

    std::vector<double> start = initial;
    for (int attempt = 0; attempt <= opts.restarts; ++attempt) {
        SingleRun r = lbfgs_single(obj, start, opts, run, best_value);
        run.evaluations += r.evaluations;
        if (r.value <= best_value) {
            best_value = r.value;
            best_x = r.x;
        }
        if (r.converged) {
            any_converged = true;
            break;
        }
        if (attempt < opts.restarts) {
            run.restarts_used = attempt + 1;
            start = best_x;
            for (double& v : start) v += noise(rng);
        }
    }

    run.final_params = best_x;
    run.final_value = best_value;
    run.converged = any_converged;
    return run;
}

std::vector<double> bootstrap_depth(const std::vector<double>& params,
                                    BootstrapMode mode, int insert_position,
                                    std::uint64_t seed) {
    if (params.empty() || params.size() % 2 != 0)
        throw std::invalid_argument("bootstrap_depth: bad parameter count");
    const int depth = static_cast<int>(params.size()) / 2;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> near_identity(0.0, 1e-3);

    const int new_rows = (mode == BootstrapMode::append_one) ? 1 : 2;
    if (mode == BootstrapMode::append_one) insert_position = depth;
    if (insert_position < 0 || insert_position > depth)
        throw std::invalid_argument("bootstrap_depth: invalid insert position");

    std::vector<double> out;
    out.reserve(params.size() + 2 * new_rows);
    for (int r = 0; r < insert_position; ++r) {
        out.push_back(params[2 * r]);
        out.push_back(params[2 * r + 1]);
    }
    for (int r = 0; r < new_rows; ++r) {
        out.push_back(near_identity(rng));
        out.push_back(near_identity(rng));
    }
    for (int r = insert_position; r < depth; ++r) {
        out.push_back(params[2 * r]);
        out.push_back(params[2 * r + 1]);
    }
    return out;
}

std::string run_log_jsonl(const OptimizationRun& run) {
    std::string out;
    char buf[160];
    for (size_t i = 0; i < run.trajectory.size(); ++i) {
        std::snprintf(buf, sizeof buf,
                      "{\"iter\": %zu, \"value\": %.17g, \"grad_norm\": %.17g}\n", i,
                      run.trajectory[i].value, run.trajectory[i].grad_norm);
        out += buf;
    }
    return out;
}

}  // namespace dmera
