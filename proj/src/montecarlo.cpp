#include "rpss/montecarlo.hpp"

#include "rpss/engine.hpp"

namespace rpss {

namespace {

inline CycleObservables one_cycle(const RpssConfig& cfg, const JitterModel& jitter,
                                  std::uint64_t engine_seed, std::uint64_t timer_seed) {
    Xoshiro256StarStar rng(engine_seed);
    SimulatedTimer timer(jitter, timer_seed);
    const CycleSample s = run_cycle(cfg, rng, timer);
    return {static_cast<std::uint32_t>(s.n_p), s.t_ticks};
}

} // namespace

std::vector<CycleObservables> simulate_cycles_serial(const RpssConfig& cfg,
                                                     const JitterModel& jitter,
                                                     std::size_t cycles,
                                                     std::uint64_t engine_seed,
                                                     std::uint64_t timer_seed) {
    std::vector<CycleObservables> out(cycles);
    for (std::size_t i = 0; i < cycles; ++i)
        out[i] = one_cycle(cfg, jitter, mix64(engine_seed, 2 * i),
                           mix64(timer_seed, 2 * i + 1));
    return out;
}

std::vector<CycleObservables> simulate_cycles_parallel(const RpssConfig& cfg,
                                                       const JitterModel& jitter,
                                                       std::size_t cycles,
                                                       std::uint64_t engine_seed,
                                                       std::uint64_t timer_seed) {
    std::vector<CycleObservables> out(cycles);
    const auto count = static_cast<std::int64_t>(cycles);
#pragma omp parallel for schedule(dynamic, 1024)
    for (std::int64_t i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        out[idx] = one_cycle(cfg, jitter, mix64(engine_seed, 2 * idx),
                             mix64(timer_seed, 2 * idx + 1));
    }
    return out;
}

std::vector<std::uint64_t> histogram_counts(const std::vector<CycleObservables>& obs,
                                            bool use_time, std::uint64_t bins) {
    std::vector<std::uint64_t> counts(bins, 0);
    for (const auto& o : obs) {
        const std::uint64_t v = use_time ? o.t_ticks : o.n_p;
        ++counts[v < bins ? v : bins - 1];
    }
    return counts;
}

std::vector<std::uint64_t> residue_stream(const std::vector<CycleObservables>& obs,
                                          bool use_time, std::uint64_t modulus) {
    std::vector<std::uint64_t> out(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i)
        out[i] = (use_time ? obs[i].t_ticks : obs[i].n_p) % modulus;
    return out;
}

} // namespace rpss
