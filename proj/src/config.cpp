#include "rpss/config.hpp"

#include <bit>

namespace rpss {

std::uint64_t factorial_exact(int n) {
    if (n < 0) throw std::domain_error("factorial of negative argument");
    if (n > 20) throw std::domain_error("factorial exceeds 64 bits for n > 20");
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) throw std::overflow_error("64-bit product overflow");
    return a * b;
}

RpssConfig::RpssConfig(int array_size_n, int successes_m, std::uint64_t modulus_r)
    : array_size(array_size_n),
      success_count(successes_m),
      modulus(modulus_r),
      factorial(factorial_exact(array_size_n)) {
    if (array_size < 2) throw std::invalid_argument("array size must be at least 2");
    if (success_count < 1) throw std::invalid_argument("success count must be at least 1");
    if (modulus < 1) throw std::invalid_argument("modulus must be at least 1");
}

std::uint64_t RpssConfig::expected_trials() const {
    return checked_mul(static_cast<std::uint64_t>(success_count), factorial);
}

std::uint64_t RpssConfig::cycle_cost() const {
    return checked_mul(expected_trials(), static_cast<std::uint64_t>(array_size));
}

std::uint64_t RpssConfig::byte_cost() const {
    const int n = output_bits();
    if (n == 0 || 8 % n != 0)
        throw std::domain_error("byte cost requires output bits dividing 8");
    return checked_mul(static_cast<std::uint64_t>(8 / n), cycle_cost());
}

int RpssConfig::output_bits() const {
    if (!std::has_single_bit(modulus))
        throw std::domain_error("modulus is not a power of two");
    return std::countr_zero(modulus);
}

bool RpssConfig::byte_assembly_ready() const {
    if (!std::has_single_bit(modulus)) return false;
    const int n = std::countr_zero(modulus);
    return n == 1 || n == 2 || n == 4 || n == 8;
}

} // namespace rpss
