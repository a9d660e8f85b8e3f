#ifndef RPSS_CONFIG_HPP
#define RPSS_CONFIG_HPP

#include <cstdint>
#include <stdexcept>

namespace rpss {

/// Exact factorial in 64-bit integer arithmetic. Throws std::domain_error
/// for n < 0 or n > 20 (21! no longer fits in 64 bits).
std::uint64_t factorial_exact(int n);

/// Product with overflow check; throws std::overflow_error.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

/// System parameters: an N-element array is repeatedly permuted until
/// sorted, m times per cycle; each trial succeeds with probability 1/N!.
/// Observables are reduced modulo R; when R = 2^n with n dividing 8 the
/// residues can be packed into bytes.
struct RpssConfig {
    int array_size;           // N >= 2
    int success_count;        // m >= 1
    std::uint64_t modulus;    // R >= 1 (R = 1 only meaningful analytically)
    std::uint64_t factorial;  // N!, exact

    RpssConfig(int array_size_n, int successes_m, std::uint64_t modulus_r);

    double success_prob() const { return 1.0 / static_cast<double>(factorial); }

    /// Expected trials per cycle, M = m * N!.
    std::uint64_t expected_trials() const;

    /// Work per cycle, C_cycle = m * N! * N.
    std::uint64_t cycle_cost() const;

    /// Work per output byte, (8/n) * C_cycle. Requires byte_assembly_ready().
    std::uint64_t byte_cost() const;

    /// n such that R = 2^n; throws std::domain_error if R is not a power of two.
    int output_bits() const;

    /// True when residues can feed byte assembly: R = 2^n with n in {1,2,4,8}.
    bool byte_assembly_ready() const;
};

} // namespace rpss

#endif
