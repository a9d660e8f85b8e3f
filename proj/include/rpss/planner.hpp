#ifndef RPSS_PLANNER_HPP
#define RPSS_PLANNER_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rpss {

/// One (N, m) candidate for n-bit residues. Integer columns are exact.
struct PlanRow {
    int bits;
    std::uint64_t modulus;
    int array_size;
    int success_count;
    std::uint64_t factorial;
    std::uint64_t expected_trials;  // M = m N!
    double rho_n;
    double rho_n_pow_m;
    double bound;                   // ((R-1)/R) rho_n^m
    std::uint64_t cycle_cost;       // m N! N
    std::uint64_t byte_cost;        // (8/n) cycle_cost
    bool minimal_m;                 // smallest admissible m for this N
};

/// All (N, m) with N in [2, max_n], m in [1, max_m] whose rho_N^m falls
/// below the threshold, sorted by byte cost ascending. bits must be one of
/// {1, 2, 4, 8}. An empty result means the search bounds were too tight.
std::vector<PlanRow> plan(int bits, double threshold, int max_n, int max_m);

/// Reference parameter grid with its published rho_N^m column. The
/// published column is informational: it does not match the geometric
/// factors recomputed from the convergence formula, so comparisons are
/// reported side by side rather than asserted.
struct ReferenceParamRow {
    int bits;
    std::uint64_t modulus;
    int array_size;
    int success_count;
    std::uint64_t factorial;
    std::uint64_t expected_trials;
    double published_rho_pow_m;
};

std::span<const ReferenceParamRow> reference_parameter_grid();

struct ReferenceComparisonRow {
    ReferenceParamRow ref;
    double computed_rho_n;
    double computed_rho_pow_m;
    double diff;                 // computed - published
    double bound;
    double exact_max_deviation;  // of N_p mod R, from the inversion
};

/// Side-by-side recomputation of the reference grid.
std::vector<ReferenceComparisonRow> reference_grid_comparison();

std::string to_text(std::span<const PlanRow> rows);
std::string to_csv(std::span<const PlanRow> rows);
std::string to_text(std::span<const ReferenceComparisonRow> rows);
std::string to_csv(std::span<const ReferenceComparisonRow> rows);

} // namespace rpss

#endif
