#include "rpss/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rpss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex pow_int(Complex base, int exponent) {
    Complex result{1.0, 0.0};
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

Complex root_of_unity(std::uint64_t k, std::uint64_t r) {
    const double w = kTwoPi * static_cast<double>(k) / static_cast<double>(r);
    return {std::cos(w), std::sin(w)};
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t r) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % r);
}

// Inversion of a transform sampled at the R-th roots of unity into a
// residue probability vector, with the roundoff clamping policy: negative
// reals above -1e-9 are zeroed, anything lower is a genuine failure.
ResidueDistribution invert_modes(std::uint64_t r, const std::vector<Complex>& modes) {
    std::vector<double> probs(r, 0.0);
    for (std::uint64_t res = 0; res < r; ++res) {
        Complex acc{0.0, 0.0};
        for (std::uint64_t k = 0; k < r; ++k)
            acc += modes[k] * std::conj(root_of_unity(mulmod(res, k, r), r));
        double p = acc.real() / static_cast<double>(r);
        if (p < 0.0) {
            if (p < -1e-9)
                throw std::runtime_error(
                    "mode inversion produced a significantly negative probability");
            p = 0.0;
        }
        probs[res] = p;
    }
    return ResidueDistribution::from_probabilities(r, std::move(probs));
}

} // namespace

MomentSet MomentSet::from_cumulants(double k1, double k2, double k3, double k4) {
    MomentSet m;
    m.k1 = k1;
    m.k2 = k2;
    m.k3 = k3;
    m.k4 = k4;
    m.mean = k1;
    m.variance = k2;
    if (k2 > 0) {
        m.skewness = k3 / std::pow(k2, 1.5);
        m.excess_kurtosis = k4 / (k2 * k2);
    }
    return m;
}

ResidueDistribution ResidueDistribution::from_probabilities(std::uint64_t modulus,
                                                            std::vector<double> probs,
                                                            double tail_mass) {
    if (probs.size() != modulus)
        throw std::invalid_argument("probability vector size differs from modulus");
    ResidueDistribution d;
    d.modulus = modulus;
    d.probabilities = std::move(probs);
    d.tail_mass = tail_mass;
    const double uniform = 1.0 / static_cast<double>(modulus);
    double max_dev = 0.0, max_p = 0.0, entropy = 0.0;
    for (double p : d.probabilities) {
        max_dev = std::max(max_dev, std::abs(p - uniform));
        max_p = std::max(max_p, p);
        if (p > 0.0) entropy -= p * std::log2(p);
    }
    d.max_deviation = max_dev;
    d.shannon_entropy_bits = entropy;
    d.min_entropy_bits = max_p > 0.0 ? -std::log2(max_p) : 0.0;
    return d;
}

double nb_pmf(const RpssConfig& cfg, std::int64_t k) {
    if (k < 0) throw std::domain_error("trial count cannot be negative");
    const std::int64_t m = cfg.success_count;
    if (k < m) return 0.0;
    const double p = cfg.success_prob();
    // log C(k-1, m-1) + m log p + (k-m) log(1-p)
    const double log_binom = std::lgamma(static_cast<double>(k)) -
                             std::lgamma(static_cast<double>(m)) -
                             std::lgamma(static_cast<double>(k - m + 1));
    return std::exp(log_binom + static_cast<double>(m) * std::log(p) +
                    static_cast<double>(k - m) * std::log1p(-p));
}

Complex nb_pgf(const RpssConfig& cfg, Complex z) {
    const double p = cfg.success_prob();
    if (std::abs(z) >= 1.0 / (1.0 - p))
        throw std::domain_error("pgf argument outside the disc of convergence");
    return pow_int(p * z / (1.0 - (1.0 - p) * z), cfg.success_count);
}

MomentSet nb_moments(const RpssConfig& cfg) {
    const double p = cfg.success_prob();
    const double q = 1.0 - p;
    const double m = cfg.success_count;
    const double k1 = m / p;
    const double k2 = m * q / (p * p);
    const double k3 = m * q * (2.0 - p) / (p * p * p);
    const double k4 = m * q * (1.0 + 4.0 * q + q * q) / (p * p * p * p);
    return MomentSet::from_cumulants(k1, k2, k3, k4);
}

Complex compose_cf(const RpssConfig& cfg, const JitterModel& jitter, double omega) {
    if (omega == 0.0) return {1.0, 0.0};
    const double p = cfg.success_prob();
    const Complex phi_x = jitter.cf(omega);
    const Complex denom = 1.0 - (1.0 - p) * phi_x;
    if (std::abs(denom) < 1e-300)
        throw std::runtime_error("composed characteristic function singular");
    return pow_int(p * phi_x / denom, cfg.success_count);
}

MomentSet t_moments(const RpssConfig& cfg, const JitterModel& jitter) {
    const MomentSet n = nb_moments(cfg);
    const double mu = jitter.mean();
    const double s2 = jitter.variance();
    const double k3x = jitter.kappa3();
    const double k4x = jitter.kappa4();
    const double k1 = mu * n.k1;
    const double k2 = mu * mu * n.k2 + s2 * n.k1;
    const double k3 = mu * mu * mu * n.k3 + 3.0 * mu * s2 * n.k2 + k3x * n.k1;
    const double k4 = mu * mu * mu * mu * n.k4 + 6.0 * mu * mu * s2 * n.k3 +
                      (4.0 * mu * k3x + 3.0 * s2 * s2) * n.k2 + k4x * n.k1;
    return MomentSet::from_cumulants(k1, k2, k3, k4);
}

ResidueDistribution mod_residue_np(const RpssConfig& cfg) {
    const std::uint64_t r = cfg.modulus;
    std::vector<Complex> modes(r);
    modes[0] = {1.0, 0.0};
    for (std::uint64_t k = 1; k < r; ++k)
        modes[k] = nb_pgf(cfg, root_of_unity(k, r));
    return invert_modes(r, modes);
}

ResidueDistribution mod_residue_t(const RpssConfig& cfg, const JitterModel& jitter) {
    const std::uint64_t r = cfg.modulus;
    std::vector<Complex> modes(r);
    for (std::uint64_t k = 0; k < r; ++k)
        modes[k] =
            compose_cf(cfg, jitter, kTwoPi * static_cast<double>(k) / static_cast<double>(r));
    return invert_modes(r, modes);
}

ResidueDistribution exact_t_mod(const RpssConfig& cfg, const JitterModel& jitter,
                                double tail_eps, std::uint64_t iteration_cap) {
    if (!(tail_eps > 0.0) || tail_eps > 1e-6)
        throw std::invalid_argument("tail epsilon must lie in (0, 1e-6]");
    const std::uint64_t r = cfg.modulus;
    const double p = cfg.success_prob();
    const double q = 1.0 - p;
    const int m = cfg.success_count;

    // Residue law of one runtime draw.
    std::vector<double> step(r, 0.0);
    for (std::size_t i = 0; i < jitter.ticks().size(); ++i)
        step[jitter.ticks()[i] % r] += jitter.probs()[i];

    std::vector<double> conv(r, 0.0);  // k-fold cyclic convolution power
    conv[0] = 1.0;
    std::vector<double> next(r, 0.0);
    std::vector<double> result(r, 0.0);

    double pmf = 0.0;       // P(N_p = k), by recurrence
    double cumulative = 0.0;
    std::uint64_t k = 0;
    while (cumulative < 1.0 - tail_eps) {
        if (++k > iteration_cap)
            throw std::runtime_error("convolution truncation point exceeded the cap");
        std::fill(next.begin(), next.end(), 0.0);
        for (std::uint64_t a = 0; a < r; ++a) {
            if (conv[a] == 0.0) continue;
            for (std::uint64_t b = 0; b < r; ++b)
                if (step[b] != 0.0) next[(a + b) % r] += conv[a] * step[b];
        }
        conv.swap(next);

        if (k < static_cast<std::uint64_t>(m)) continue;
        if (k == static_cast<std::uint64_t>(m))
            pmf = std::pow(p, m);
        else
            pmf *= q * static_cast<double>(k - 1) / static_cast<double>(k - m);
        cumulative += pmf;
        for (std::uint64_t a = 0; a < r; ++a) result[a] += pmf * conv[a];
    }

    const double tail = std::max(0.0, 1.0 - cumulative);
    for (double& v : result) v /= cumulative;
    return ResidueDistribution::from_probabilities(r, std::move(result), tail);
}

ConvergenceReport convergence_report(const RpssConfig& cfg, const JitterModel* jitter) {
    const std::uint64_t r = cfg.modulus;
    const double fact = static_cast<double>(cfg.factorial);
    ConvergenceReport rep;
    rep.modulus = r;
    rep.successes = cfg.success_count;
    rep.rho_n_modes.reserve(r > 0 ? r - 1 : 0);
    if (jitter != nullptr) rep.rho_t_modes.reserve(r > 0 ? r - 1 : 0);

    double rho_n = 0.0, rho_t = 0.0;
    for (std::uint64_t k = 1; k < r; ++k) {
        const Complex z = root_of_unity(k, r);
        const double rn = 1.0 / std::abs((1.0 - z) * fact + z);
        rep.rho_n_modes.push_back(rn);
        rho_n = std::max(rho_n, rn);
        if (jitter != nullptr) {
            const Complex phi =
                jitter->cf(kTwoPi * static_cast<double>(k) / static_cast<double>(r));
            const double rt = std::abs(phi) / std::abs((1.0 - phi) * fact + phi);
            rep.rho_t_modes.push_back(rt);
            rho_t = std::max(rho_t, rt);
        }
    }
    rep.rho_n = rho_n;
    rep.bound_n = (static_cast<double>(r) - 1.0) / static_cast<double>(r) *
                  std::pow(rho_n, cfg.success_count);
    if (jitter != nullptr) {
        rep.rho_t = rho_t;
        rep.bound_t = (static_cast<double>(r) - 1.0) / static_cast<double>(r) *
                      std::pow(rho_t, cfg.success_count);
    }
    return rep;
}

} // namespace rpss
