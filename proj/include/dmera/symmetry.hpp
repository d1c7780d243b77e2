#pragma once

#include "dmera/covariance.hpp"
#include "dmera/models.hpp"

#include <string>
#include <vector>

namespace dmera {

enum class Family { A, B };  // A: i g_{2i-1} g_{2j}; B: i g_{2i} g_{2j+1} (1-based)

/// Two-point functions of both quadratic Majorana families for all base sites
/// and distances 1..max_distance, with exact-reference columns.
struct CorrelatorTable {
    int n_sites = 0;
    int max_distance = 0;
    ModelLabel model = ModelLabel::ising;
    // row-major [site][distance-1]
    std::vector<double> value_a, value_b, exact_a, exact_b;

    double value(Family f, int site, int distance) const;
    double exact(Family f, int site, int distance) const;
};

CorrelatorTable correlator_table(const CovarianceState& state,
                                 const CovarianceState& exact_state,
                                 ModelLabel model, int max_distance);

/// Arithmetic mean of one family's values over all base sites at distance d.
double translation_average(const CorrelatorTable& table, Family family, int d);

/// Mean of the two translation-averaged families forming the half-shift
/// orbit at distance d. For the ising model the partner of (A, d) is (B, d);
/// for the modified model the conjugated half-shift pairs (A, d) with
/// (B, d+2).
double kw_average(const CorrelatorTable& table, int d);

struct ErrorSummary {
    int distance = 0;
    double mean_abs_error = 0.0;  // avg |value - exact| over the 2L-element orbit
    double abs_error_of_mean = 0.0;
    double ratio = 0.0;
    bool exact_input = false;  // mean_abs_error == 0
};

ErrorSummary error_summary(const CorrelatorTable& table, int d);

struct EntropyRow {
    int subsystem_size = 0;
    double mean_entropy = 0.0;
    double exact_mean = 0.0;
    double relative_error = 0.0;  // signed: (mean - exact) / exact
};

/// Subsystem entropy averaged over all L contiguous windows of each size.
std::vector<EntropyRow> entropy_profile(const CovarianceState& state,
                                        const CovarianceState& exact_state,
                                        const std::vector<int>& sizes);

struct SubsystemInfidelityRow {
    int subsystem_size = 0;
    double mean_normalized_infidelity = 0.0;  // mean over windows of 1 - F^{1/N}
};

std::vector<SubsystemInfidelityRow> subsystem_infidelity_profile(
    const CovarianceState& state, const CovarianceState& exact_state,
    const std::vector<int>& sizes);

/// CSV writers for the benchmark schemas.
std::string correlators_csv(const CorrelatorTable& table, int depth);
std::string summaries_csv(const CorrelatorTable& table, int depth);
std::string entropy_csv(const std::vector<EntropyRow>& rows, int n_sites, int depth);

}  // namespace dmera
