#include "rpss/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace rpss {

namespace {

constexpr int kMaxGammaIterations = 1'000'000;
constexpr double kGammaEps = 1e-15;

// Regularized lower incomplete gamma by power series.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxGammaIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kGammaEps)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("incomplete gamma series failed to converge");
}

// Regularized upper incomplete gamma by Lentz continued fraction.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxGammaIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kGammaEps)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("incomplete gamma continued fraction failed to converge");
}

template <typename T>
StatsReport analyze_impl(std::span<const T> symbols, std::uint64_t alphabet) {
    if (symbols.empty()) throw std::invalid_argument("empty symbol stream");
    if (alphabet < 2) throw std::invalid_argument("alphabet must have at least 2 symbols");

    StatsReport rep;
    rep.sample_count = symbols.size();
    rep.alphabet = alphabet;
    rep.histogram.assign(alphabet, 0);
    for (T s : symbols) {
        if (static_cast<std::uint64_t>(s) >= alphabet)
            throw std::invalid_argument("symbol outside the alphabet");
        ++rep.histogram[static_cast<std::uint64_t>(s)];
    }
    rep.low_sample_warning = rep.sample_count < 10 * alphabet;

    const double n = static_cast<double>(rep.sample_count);
    const double expected = n / static_cast<double>(alphabet);
    const double uniform = 1.0 / static_cast<double>(alphabet);
    double entropy = 0.0, max_freq = 0.0, chi2 = 0.0, max_dev = 0.0;
    for (std::uint64_t c : rep.histogram) {
        const double f = static_cast<double>(c) / n;
        if (f > 0.0) entropy -= f * std::log2(f);
        max_freq = std::max(max_freq, f);
        max_dev = std::max(max_dev, std::abs(f - uniform));
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    rep.shannon_entropy_bits = entropy;
    rep.min_entropy_bits = -std::log2(max_freq);
    rep.chi_square = chi2;
    rep.degrees_of_freedom = alphabet - 1;
    rep.p_value = chi_square_p_value(chi2, rep.degrees_of_freedom);
    rep.max_deviation = max_dev;
    rep.max_deviation_pct = max_dev / uniform * 100.0;

    // Sample moments and lag-1 autocorrelation of the symbol values.
    double mean = 0.0;
    for (T s : symbols) mean += static_cast<double>(s);
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0, lag = 0.0;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const double d = static_cast<double>(symbols[i]) - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
        if (i + 1 < symbols.size())
            lag += d * (static_cast<double>(symbols[i + 1]) - mean);
    }
    rep.mean = mean;
    rep.variance = rep.sample_count > 1 ? m2 / (n - 1.0) : 0.0;
    rep.serial_correlation_lag1 = m2 > 0.0 ? lag / m2 : 0.0;
    if (rep.sample_count > 2 && m2 > 0.0) {
        const double b1 = (m3 / n) / std::pow(m2 / n, 1.5);
        rep.skewness = b1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
    }
    if (rep.sample_count > 3 && m2 > 0.0) {
        const double s2 = m2 / (n - 1.0);
        rep.excess_kurtosis =
            (n * (n + 1.0)) / ((n - 1.0) * (n - 2.0) * (n - 3.0)) * m4 / (s2 * s2) -
            3.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
    }
    return rep;
}

} // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::domain_error("gamma_q requires a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_p_value(double chi_square, std::uint64_t dof) {
    if (dof == 0) throw std::domain_error("zero degrees of freedom");
    return gamma_q(static_cast<double>(dof) / 2.0, chi_square / 2.0);
}

StatsReport analyze(std::span<const std::uint8_t> bytes) {
    return analyze_impl<std::uint8_t>(bytes, 256);
}

StatsReport analyze(std::span<const std::uint64_t> symbols, std::uint64_t alphabet) {
    return analyze_impl<std::uint64_t>(symbols, alphabet);
}

namespace {

template <typename T>
MomentSet sample_moments_impl(std::span<const T> values) {
    if (values.size() < 2) throw std::invalid_argument("need at least two samples");
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (T v : values) mean += static_cast<double>(v);
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (T v : values) {
        const double d = static_cast<double>(v) - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    MomentSet ms;
    ms.mean = mean;
    ms.k1 = mean;
    ms.variance = m2 / (n - 1.0);
    ms.k2 = ms.variance;
    if (m2 > 0.0 && values.size() > 2) {
        const double b1 = (m3 / n) / std::pow(m2 / n, 1.5);
        ms.skewness = b1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
        ms.k3 = ms.skewness * std::pow(ms.variance, 1.5);
    }
    if (m2 > 0.0 && values.size() > 3) {
        ms.excess_kurtosis =
            (n * (n + 1.0)) / ((n - 1.0) * (n - 2.0) * (n - 3.0)) * m4 /
                (ms.variance * ms.variance) -
            3.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
        ms.k4 = ms.excess_kurtosis * ms.variance * ms.variance;
    }
    return ms;
}

} // namespace

MomentSet sample_moments(std::span<const double> values) {
    return sample_moments_impl<double>(values);
}

MomentSet sample_moments(std::span<const std::uint64_t> values) {
    return sample_moments_impl<std::uint64_t>(values);
}

MomentComparison compare_moments(const MomentSet& empirical, const MomentSet& theory,
                                 const MomentTolerances& tolerances) {
    MomentComparison cmp;
    const auto add = [&](const char* name, double e, double t, double tol) {
        const double diff = std::abs(e - t);
        const double scale = std::max(std::abs(t), 1e-300);
        MomentComparisonRow row{name, e, t, diff, diff / scale, tol, diff <= tol};
        cmp.all_within = cmp.all_within && row.within;
        cmp.rows.push_back(row);
    };
    add("mean", empirical.mean, theory.mean, tolerances.mean);
    add("variance", empirical.variance, theory.variance, tolerances.variance);
    add("skewness", empirical.skewness, theory.skewness, tolerances.skewness);
    add("excess_kurtosis", empirical.excess_kurtosis, theory.excess_kurtosis,
        tolerances.excess_kurtosis);
    return cmp;
}

double ks_uniform_statistic(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("empty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double hi = (static_cast<double>(i) + 1.0) / n - values[i];
        const double lo = values[i] - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

double ks_critical_value_01(std::size_t n) {
    // c(0.01) = sqrt(-ln(0.005) / 2)
    return 1.6276236115189433 / std::sqrt(static_cast<double>(n));
}

std::string to_json_text(const StatsReport& r) {
    nlohmann::json j;
    j["sample_count"] = r.sample_count;
    j["alphabet"] = r.alphabet;
    j["shannon_entropy_bits"] = r.shannon_entropy_bits;
    j["min_entropy_bits"] = r.min_entropy_bits;
    j["chi_square"] = r.chi_square;
    j["degrees_of_freedom"] = r.degrees_of_freedom;
    j["p_value"] = r.p_value;
    j["max_deviation"] = r.max_deviation;
    j["max_deviation_pct"] = r.max_deviation_pct;
    j["mean"] = r.mean;
    j["variance"] = r.variance;
    j["skewness"] = r.skewness;
    j["excess_kurtosis"] = r.excess_kurtosis;
    j["serial_correlation_lag1"] = r.serial_correlation_lag1;
    j["low_sample_warning"] = r.low_sample_warning;
    return j.dump(2);
}

std::string to_text(const StatsReport& r) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "samples                " << r.sample_count << "\n"
       << "alphabet               " << r.alphabet << "\n"
       << "shannon entropy (bits) " << r.shannon_entropy_bits << "\n"
       << "min-entropy (bits)     " << r.min_entropy_bits << "\n"
       << "chi-square             " << r.chi_square << " (dof " << r.degrees_of_freedom
       << ")\n"
       << "p-value                " << r.p_value << "\n"
       << "max deviation          " << r.max_deviation << " (" << std::setprecision(4)
       << r.max_deviation_pct << "%)\n"
       << std::setprecision(10) << "mean                   " << r.mean << "\n"
       << "variance               " << r.variance << "\n"
       << "skewness               " << r.skewness << "\n"
       << "excess kurtosis        " << r.excess_kurtosis << "\n"
       << "serial corr (lag 1)    " << r.serial_correlation_lag1 << "\n";
    if (r.low_sample_warning)
        os << "warning: fewer than 10 samples per symbol; estimates are noisy\n";
    return os.str();
}

std::string to_text(const MomentComparison& cmp) {
    std::ostringstream os;
    os << std::left << std::setw(17) << "moment" << std::right << std::setw(14)
       << "empirical" << std::setw(14) << "theoretical" << std::setw(12) << "rel.diff"
       << std::setw(8) << "ok" << "\n";
    for (const auto& row : cmp.rows) {
        os << std::left << std::setw(17) << row.name << std::right << std::fixed
           << std::setprecision(4) << std::setw(14) << row.empirical << std::setw(14)
           << row.theoretical << std::setprecision(2) << std::scientific << std::setw(12)
           << row.rel_diff << std::setw(8) << (row.within ? "yes" : "NO") << "\n";
        os.unsetf(std::ios::floatfield);
    }
    return os.str();
}

} // namespace rpss
