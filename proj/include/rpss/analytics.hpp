#ifndef RPSS_ANALYTICS_HPP
#define RPSS_ANALYTICS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "rpss/config.hpp"
#include "rpss/jitter.hpp"

namespace rpss {

using Complex = std::complex<double>;

/// First four cumulants with the derived shape measures
/// gamma1 = k3 / k2^(3/2) and gamma2 = k4 / k2^2.
struct MomentSet {
    double mean = 0;
    double variance = 0;
    double skewness = 0;
    double excess_kurtosis = 0;
    double k1 = 0, k2 = 0, k3 = 0, k4 = 0;

    static MomentSet from_cumulants(double k1, double k2, double k3, double k4);
};

/// Probability vector over Z_R with uniformity metadata.
struct ResidueDistribution {
    std::uint64_t modulus = 0;
    std::vector<double> probabilities;
    double max_deviation = 0;        // max_r |p_r - 1/R|
    double shannon_entropy_bits = 0;
    double min_entropy_bits = 0;
    double tail_mass = 0;            // truncated mass, when applicable

    static ResidueDistribution from_probabilities(std::uint64_t modulus,
                                                  std::vector<double> probs,
                                                  double tail_mass = 0.0);
};

/// Per-mode geometric factors and the worst-mode deviation bounds
/// ((R-1)/R) * rho^m for the count and (optionally) time observables.
struct ConvergenceReport {
    std::uint64_t modulus = 0;
    int successes = 0;
    std::vector<double> rho_n_modes;  // k = 1 .. R-1
    std::vector<double> rho_t_modes;  // empty without a jitter model
    double rho_n = 0;
    std::optional<double> rho_t;
    double bound_n = 0;
    std::optional<double> bound_t;
};

/// P(N_p = k) = C(k-1, m-1) p^m (1-p)^(k-m) for k >= m, else 0, with p =
/// 1/N!. Evaluated in log space. Throws std::domain_error for k < 0.
double nb_pmf(const RpssConfig& cfg, std::int64_t k);

/// G(z) = (p z / (1 - (1-p) z))^m on |z| < 1/(1-p); throws
/// std::domain_error outside the disc of convergence.
Complex nb_pgf(const RpssConfig& cfg, Complex z);

/// Closed-form cumulants of the trial count:
///   k1 = m/p,  k2 = m q / p^2,  k3 = m q (2-p) / p^3,
///   k4 = m q (1 + 4q + q^2) / p^4,      q = 1 - p,
/// giving gamma1 = (2-p)/sqrt(m q) and gamma2 = 6/m + p^2/(m q).
MomentSet nb_moments(const RpssConfig& cfg);

/// Elapsed-time characteristic function through the count structure:
/// G(phi_X(omega)). Returns exactly 1 at omega = 0. Throws
/// std::runtime_error if the denominator 1 - (1-p) phi_X(omega) vanishes.
Complex compose_cf(const RpssConfig& cfg, const JitterModel& jitter, double omega);

/// Cumulants of the elapsed time T = sum of N_p runtime draws, by the law
/// of total cumulance applied to the count cumulants and the runtime's
/// mean/variance/kappa3/kappa4.
MomentSet t_moments(const RpssConfig& cfg, const JitterModel& jitter);

/// P(N_p mod R = r) by roots-of-unity inversion of the PGF:
/// (1/R) sum_k G(e^{i w_k}) e^{-i r w_k}, w_k = 2 pi k / R. Tiny negative
/// reals from roundoff are clamped to zero; anything below -1e-9 throws.
ResidueDistribution mod_residue_np(const RpssConfig& cfg);

/// Same inversion using compose_cf at the R-th roots of unity.
ResidueDistribution mod_residue_t(const RpssConfig& cfg, const JitterModel& jitter);

/// Brute-force residue law of T by NB-weighted iterated cyclic convolution
/// over Z_R, truncated once the count pmf's cumulative mass reaches
/// 1 - tail_eps; the truncated mass is reported (result renormalized).
/// tail_eps must lie in (0, 1e-6]; the iteration cap guards against
/// degenerate configurations.
ResidueDistribution exact_t_mod(const RpssConfig& cfg, const JitterModel& jitter,
                                double tail_eps,
                                std::uint64_t iteration_cap = 10'000'000);

/// rho_{N,k} = |1 / ((1 - z_k) N! + z_k)| and, with a jitter model,
/// rho_{T,k} = |phi_X(w_k) / ((1 - phi_X(w_k)) N! + phi_X(w_k))| at
/// z_k = e^{i w_k}. A lattice-degenerate jitter can make rho_T reach 1,
/// in which case no convergence bound exists for the time observable.
ConvergenceReport convergence_report(const RpssConfig& cfg,
                                     const JitterModel* jitter = nullptr);

} // namespace rpss

#endif
