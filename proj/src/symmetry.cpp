#include "dmera/symmetry.hpp"

#include "dmera/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dmera {

namespace {

// Signed Gamma entry of i g_a g_b with 0-based indices folded antiperiodically.
double signed_entry(const Eigen::MatrixXd& g, int nn, int a, int b) {
    double sign = 1.0;
    while (a >= nn) { a -= nn; sign = -sign; }
    while (b >= nn) { b -= nn; sign = -sign; }
    return sign * g(a, b);
}

int row_index(const CorrelatorTable& t, int site, int distance) {
    if (site < 0 || site >= t.n_sites || distance < 1 || distance > t.max_distance)
        throw std::invalid_argument("correlator table: index out of range");
    return site * t.max_distance + (distance - 1);
}

}  // namespace

double CorrelatorTable::value(Family f, int site, int distance) const {
    const int i = row_index(*this, site, distance);
    return f == Family::A ? value_a[i] : value_b[i];
}

double CorrelatorTable::exact(Family f, int site, int distance) const {
    const int i = row_index(*this, site, distance);
    return f == Family::A ? exact_a[i] : exact_b[i];
}

CorrelatorTable correlator_table(const CovarianceState& state,
                                 const CovarianceState& exact_state,
                                 ModelLabel model, int max_distance) {
    if (state.n_sites != exact_state.n_sites)
        throw std::invalid_argument("correlator_table: size mismatch");
    if (max_distance > state.n_sites / 2)
        throw std::invalid_argument("correlator_table: max_distance > L/2");
    CorrelatorTable t;
    t.n_sites = state.n_sites;
    t.max_distance = max_distance;
    t.model = model;
    const int count = t.n_sites * max_distance;
    t.value_a.resize(count);
    t.value_b.resize(count);
    t.exact_a.resize(count);
    t.exact_b.resize(count);
    const int nn = 2 * t.n_sites;
    for (int i = 0; i < t.n_sites; ++i) {
        for (int d = 1; d <= max_distance; ++d) {
            const int j = i + d;
            const int idx = i * max_distance + (d - 1);
            // 1-based family A (2i-1, 2j) -> 0-based (2i, 2j+1) with i,j 0-based
            t.value_a[idx] = signed_entry(state.gamma, nn, 2 * i, 2 * j + 1);
            t.exact_a[idx] = signed_entry(exact_state.gamma, nn, 2 * i, 2 * j + 1);
            // 1-based family B (2i, 2j+1) -> 0-based (2i+1, 2j+2)
            t.value_b[idx] = signed_entry(state.gamma, nn, 2 * i + 1, 2 * j + 2);
            t.exact_b[idx] = signed_entry(exact_state.gamma, nn, 2 * i + 1, 2 * j + 2);
        }
    }
    return t;
}

double translation_average(const CorrelatorTable& table, Family family, int d) {
    double sum = 0.0;
    for (int i = 0; i < table.n_sites; ++i) sum += table.value(family, i, d);
    return sum / table.n_sites;
}

namespace {

int partner_distance(const CorrelatorTable& t, int d) {
    const int pd = (t.model == ModelLabel::modified_ising) ? d + 2 : d;
    if (pd > t.max_distance)
        throw std::invalid_argument(
            "kw orbit: table max_distance too small for the partner family");
    return pd;
}

}  // namespace

double kw_average(const CorrelatorTable& table, int d) {
    const int pd = partner_distance(table, d);
    return 0.5 * (translation_average(table, Family::A, d) +
                  translation_average(table, Family::B, pd));
}

ErrorSummary error_summary(const CorrelatorTable& table, int d) {
    const int pd = partner_distance(table, d);
    ErrorSummary s;
    s.distance = d;
    double abs_sum = 0.0, val_sum = 0.0, exact_sum = 0.0;
    const int orbit = 2 * table.n_sites;
    for (int i = 0; i < table.n_sites; ++i) {
        const double va = table.value(Family::A, i, d), ea = table.exact(Family::A, i, d);
        const double vb = table.value(Family::B, i, pd), eb = table.exact(Family::B, i, pd);
        abs_sum += std::abs(va - ea) + std::abs(vb - eb);
        val_sum += va + vb;
        exact_sum += ea + eb;
    }
    s.mean_abs_error = abs_sum / orbit;
    s.abs_error_of_mean = std::abs(val_sum - exact_sum) / orbit;
    if (s.mean_abs_error == 0.0) {
        s.exact_input = true;
        s.ratio = 0.0;
    } else {
        s.ratio = s.abs_error_of_mean / s.mean_abs_error;
    }
    return s;
}

namespace {

ModeSubset window_modes(int n_sites, int start, int size) {
    std::vector<int> idx;
    idx.reserve(2 * size);
    for (int k = 0; k < size; ++k) {
        const int p = (start + k) % n_sites;
        idx.push_back(2 * p);
        idx.push_back(2 * p + 1);
    }
    std::sort(idx.begin(), idx.end());
    ModeSubset out;
    out.indices = std::move(idx);
    return out;
}

}  // namespace

std::vector<EntropyRow> entropy_profile(const CovarianceState& state,
                                        const CovarianceState& exact_state,
                                        const std::vector<int>& sizes) {
    const int L = state.n_sites;
    std::vector<EntropyRow> rows;
    for (int n : sizes) {
        if (n < 1 || n >= L) throw std::invalid_argument("entropy_profile: N must be in [1, L)");
        std::vector<double> ent(L), ent_exact(L);
        parallel_for(L, [&](int s) {
            const ModeSubset w = window_modes(L, s, n);
            ent[s] = entanglement_entropy(state, w);
            ent_exact[s] = entanglement_entropy(exact_state, w);
        });
        EntropyRow r;
        r.subsystem_size = n;
        for (int s = 0; s < L; ++s) {
            r.mean_entropy += ent[s];
            r.exact_mean += ent_exact[s];
        }
        r.mean_entropy /= L;
        r.exact_mean /= L;
        r.relative_error = (r.mean_entropy - r.exact_mean) / r.exact_mean;
        rows.push_back(r);
    }
    return rows;
}

std::vector<SubsystemInfidelityRow> subsystem_infidelity_profile(
    const CovarianceState& state, const CovarianceState& exact_state,
    const std::vector<int>& sizes) {
    const int L = state.n_sites;
    std::vector<SubsystemInfidelityRow> rows;
    for (int n : sizes) {
        if (n < 1 || n >= L)
            throw std::invalid_argument("subsystem_infidelity_profile: N must be in [1, L)");
        std::vector<double> infid(L);
        parallel_for(L, [&](int s) {
            const ModeSubset w = window_modes(L, s, n);
            const double f = fidelity(restrict_modes(state, w),
                                      restrict_modes(exact_state, w));
            infid[s] = 1.0 - std::pow(f, 1.0 / n);
        });
        double sum = 0.0;
        for (double v : infid) sum += v;
        rows.push_back({n, sum / L});
    }
    return rows;
}

std::string correlators_csv(const CorrelatorTable& table, int depth) {
    std::string out = "L,D,model,d,family,value,exact,rel_error\n";
    char buf[160];
    const std::string model = model_to_string(table.model);
    for (int d = 1; d <= table.max_distance; ++d) {
        for (Family f : {Family::A, Family::B}) {
            const double v = translation_average(table, f, d);
            double e = 0.0;
            for (int i = 0; i < table.n_sites; ++i) e += table.exact(f, i, d);
            e /= table.n_sites;
            std::snprintf(buf, sizeof buf, "%d,%d,%s,%d,%c,%.17g,%.17g,%.17g\n",
                          table.n_sites, depth, model.c_str(), d,
                          f == Family::A ? 'A' : 'B', v, e, (v - e) / e);
            out += buf;
        }
    }
    return out;
}

std::string summaries_csv(const CorrelatorTable& table, int depth) {
    std::string out = "L,D,model,d,mean_abs_error,abs_error_of_mean,ratio\n";
    char buf[160];
    const std::string model = model_to_string(table.model);
    const int dmax = table.model == ModelLabel::modified_ising ? table.max_distance - 2
                                                               : table.max_distance;
    for (int d = 1; d <= dmax; ++d) {
        const ErrorSummary s = error_summary(table, d);
        std::snprintf(buf, sizeof buf, "%d,%d,%s,%d,%.17g,%.17g,%.17g\n", table.n_sites,
                      depth, model.c_str(), d, s.mean_abs_error, s.abs_error_of_mean,
                      s.ratio);
        out += buf;
    }
    return out;
}

std::string entropy_csv(const std::vector<EntropyRow>& rows, int n_sites, int depth) {
    std::string out = "L,D,N,mean_entropy,exact,rel_error\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g,%.17g\n", n_sites, depth,
                      r.subsystem_size, r.mean_entropy, r.exact_mean, r.relative_error);
        out += buf;
    }
    return out;
}

}  // namespace dmera
