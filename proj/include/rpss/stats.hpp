#ifndef RPSS_STATS_HPP
#define RPSS_STATS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rpss/analytics.hpp"

namespace rpss {

/// Summary of a symbol stream over a finite alphabet: plug-in entropies,
/// chi-square goodness of fit against uniform with its p-value, maximum
/// per-symbol deviation, sample moments of the symbol values
/// (bias-corrected g1/g2), and lag-1 serial correlation.
struct StatsReport {
    std::uint64_t sample_count = 0;
    std::uint64_t alphabet = 0;
    std::vector<std::uint64_t> histogram;
    double shannon_entropy_bits = 0;
    double min_entropy_bits = 0;
    double chi_square = 0;
    std::uint64_t degrees_of_freedom = 0;
    double p_value = 0;
    double max_deviation = 0;       // max_s |f_s - 1/A|
    double max_deviation_pct = 0;   // relative to 1/A, in percent
    double mean = 0;
    double variance = 0;            // unbiased
    double skewness = 0;            // bias-corrected G1
    double excess_kurtosis = 0;     // bias-corrected G2
    double serial_correlation_lag1 = 0;
    bool low_sample_warning = false;  // sample_count < 10 * alphabet
};

StatsReport analyze(std::span<const std::uint8_t> bytes);
StatsReport analyze(std::span<const std::uint64_t> symbols, std::uint64_t alphabet);

/// Regularized upper incomplete gamma Q(a, x), by power series for
/// x < a + 1 and continued fraction otherwise.
double gamma_q(double a, double x);

/// Q(dof/2, chi2/2).
double chi_square_p_value(double chi_square, std::uint64_t dof);

/// Sample mean, unbiased variance, and bias-corrected skewness/excess
/// kurtosis (reported in the MomentSet's k-slots as the matching central
/// cumulant estimates).
MomentSet sample_moments(std::span<const double> values);
MomentSet sample_moments(std::span<const std::uint64_t> values);

struct MomentComparisonRow {
    const char* name;
    double empirical;
    double theoretical;
    double abs_diff;
    double rel_diff;   // |diff| / max(|theory|, eps)
    double tolerance;  // absolute
    bool within;
};

struct MomentComparison {
    std::vector<MomentComparisonRow> rows;
    bool all_within = true;
};

struct MomentTolerances {
    double mean = 0;
    double variance = 0;
    double skewness = 0;
    double excess_kurtosis = 0;
};

MomentComparison compare_moments(const MomentSet& empirical, const MomentSet& theory,
                                 const MomentTolerances& tolerances);

/// Kolmogorov-Smirnov statistic of a sample against U(0,1).
double ks_uniform_statistic(std::vector<double> values);

/// Asymptotic critical value c(alpha)/sqrt(n) for alpha = 0.01.
double ks_critical_value_01(std::size_t n);

std::string to_json_text(const StatsReport& report);
std::string to_text(const StatsReport& report);
std::string to_text(const MomentComparison& cmp);

} // namespace rpss

#endif
