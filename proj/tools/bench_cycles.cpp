// Timing comparison of the serial reference kernel against the OpenMP
// batch kernel, plus a sequential pipeline throughput figure.

#include <chrono>
#include <cstdio>
#include <string>

#include "rpss/config.hpp"
#include "rpss/engine.hpp"
#include "rpss/jitter.hpp"
#include "rpss/montecarlo.hpp"
#include "rpss/pipeline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    std::size_t cycles = 200000;
    if (argc > 1) cycles = std::stoull(argv[1]);

    const rpss::RpssConfig cfg(5, 5, 256);
    const rpss::JitterModel& jitter = rpss::jitter_preset("fat-like");

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled\n");
#endif
    std::printf("config: N=%d m=%d R=%llu, %zu cycles (~%llu trials each)\n",
                cfg.array_size, cfg.success_count,
                static_cast<unsigned long long>(cfg.modulus), cycles,
                static_cast<unsigned long long>(cfg.expected_trials()));

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = rpss::simulate_cycles_serial(cfg, jitter, cycles, 11, 22);
    const double serial_s = seconds_since(t0);
    std::printf("serial reference : %8.3f s  (%.2f Mcycles/s)\n", serial_s,
                static_cast<double>(cycles) / serial_s / 1e6);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = rpss::simulate_cycles_parallel(cfg, jitter, cycles, 11, 22);
    const double parallel_s = seconds_since(t0);
    std::printf("openmp kernel    : %8.3f s  (%.2f Mcycles/s)  speedup x%.2f\n",
                parallel_s, static_cast<double>(cycles) / parallel_s / 1e6,
                serial_s / parallel_s);

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i)
        identical = serial[i].n_p == parallel[i].n_p &&
                    serial[i].t_ticks == parallel[i].t_ticks;
    std::printf("kernels agree    : %s\n", identical ? "yes" : "NO");

    rpss::Xoshiro256StarStar rng(11);
    rpss::SimulatedTimer timer(jitter, 22);
    rpss::Pipeline pipeline(cfg, rng, timer, 33);
    const std::size_t bytes = cycles / 4;
    t0 = std::chrono::steady_clock::now();
    const auto stream = pipeline.generate(bytes);
    const double pipe_s = seconds_since(t0);
    std::printf("pipeline (seq)   : %8.3f s  (%.1f kB/s, %zu bytes)\n", pipe_s,
                static_cast<double>(stream.size()) / pipe_s / 1e3, stream.size());
    return identical ? 0 : 1;
}
