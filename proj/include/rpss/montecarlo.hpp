#ifndef RPSS_MONTECARLO_HPP
#define RPSS_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "rpss/config.hpp"
#include "rpss/jitter.hpp"

namespace rpss {

/// Compact per-cycle observables for batch simulation.
struct CycleObservables {
    std::uint32_t n_p;
    std::uint64_t t_ticks;
};

/// Batch simulation of independent cycles. Cycle i derives its own engine
/// and timer seeds as mix64(engine_seed, 2i) and mix64(timer_seed, 2i+1),
/// so the output is a pure function of (cfg, jitter, seeds) regardless of
/// execution order: the serial and OpenMP kernels produce identical
/// vectors, element for element.
std::vector<CycleObservables> simulate_cycles_serial(const RpssConfig& cfg,
                                                     const JitterModel& jitter,
                                                     std::size_t cycles,
                                                     std::uint64_t engine_seed,
                                                     std::uint64_t timer_seed);

std::vector<CycleObservables> simulate_cycles_parallel(const RpssConfig& cfg,
                                                       const JitterModel& jitter,
                                                       std::size_t cycles,
                                                       std::uint64_t engine_seed,
                                                       std::uint64_t timer_seed);

/// Histogram of values clamped into [0, bins); returns counts per bin.
std::vector<std::uint64_t> histogram_counts(const std::vector<CycleObservables>& obs,
                                            bool use_time, std::uint64_t bins);

/// Residues of the chosen observable modulo R.
std::vector<std::uint64_t> residue_stream(const std::vector<CycleObservables>& obs,
                                          bool use_time, std::uint64_t modulus);

} // namespace rpss

#endif
