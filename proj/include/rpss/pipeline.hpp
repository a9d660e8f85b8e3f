#ifndef RPSS_PIPELINE_HPP
#define RPSS_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rpss/config.hpp"
#include "rpss/engine.hpp"

namespace rpss {

/// Feedback reseeding step s_{k+1} = h(s_k, eta_k): a 64-bit
/// multiply-xorshift finalizer of the state xored with the golden-ratio
/// multiple of the harvested tick count. Bit-exact; mix64 is the same
/// finalizer.
inline std::uint64_t reseed(std::uint64_t state, std::uint64_t eta) {
    return mix64(state, eta);
}

/// Modular reduction of both cycle observables.
struct Residues {
    std::uint64_t n_residue;
    std::uint64_t t_residue;
};

Residues reduce(const CycleSample& sample, std::uint64_t modulus);

/// Packs a stream of n-bit residues into bytes, 8/n residues per byte,
/// first residue in the most-significant position. n must be 1, 2, 4 or 8.
class ByteAssembler {
public:
    explicit ByteAssembler(int bits);

    /// Returns a completed byte once every 8/n pushes.
    std::optional<std::uint8_t> push(std::uint64_t residue);

    int bits() const { return bits_; }

private:
    int bits_;
    int filled_ = 0;
    unsigned acc_ = 0;
};

/// Convenience over ByteAssembler; an incomplete trailing group is
/// discarded.
std::vector<std::uint8_t> assemble_bytes(std::span<const std::uint64_t> residues,
                                         int bits);

enum class SourceSelect { counts, time };

struct PipelineOptions {
    bool reseed_enabled = true;
    SourceSelect source = SourceSelect::counts;
    std::uint64_t trial_guard = kDefaultTrialGuard;
};

/// The purification loop: run a cycle, reduce the observables modulo R,
/// pack the selected residue stream into bytes, and (when enabled) reseed
/// the engine rng from the cycle's raw tick total. Deterministic given
/// (s0, engine seed, timer seed) under a simulated timer.
class Pipeline {
public:
    Pipeline(const RpssConfig& cfg, EngineRng& engine, TimerSource& timer,
             std::uint64_t seed0, PipelineOptions options = {});

    /// Exactly byte_count bytes of the selected observable's residues.
    std::vector<std::uint8_t> generate(std::size_t byte_count);

    struct DualOutput {
        std::vector<std::uint8_t> primary;
        std::vector<std::uint8_t> probe;  // the other observable's residues
    };

    /// Emits the complementary residue stream alongside the primary one,
    /// from the same cycles.
    DualOutput generate_with_probe(std::size_t byte_count);

    std::uint64_t cycle_index() const { return cycle_index_; }
    std::uint64_t state_seed() const { return seed_; }
    const RpssConfig& config() const { return cfg_; }

private:
    void run_one_cycle(std::uint64_t& n_res, std::uint64_t& t_res);

    RpssConfig cfg_;
    EngineRng& engine_;
    TimerSource& timer_;
    std::uint64_t seed_;
    std::uint64_t cycle_index_ = 0;
    PipelineOptions options_;
};

} // namespace rpss

#endif
