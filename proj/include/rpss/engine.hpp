#ifndef RPSS_ENGINE_HPP
#define RPSS_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rpss/config.hpp"

namespace rpss {

/// Mixing finalizer: multiply-xorshift avalanche of (state, value).
/// mix64(0, 0) == 0; any single-bit change flips about half the output bits.
std::uint64_t mix64(std::uint64_t state, std::uint64_t value);

/// Source of 64-bit words with an exactly uniform bounded draw.
///
/// bounded(b) rejects raw words >= floor(2^64 / b) * b and reduces the
/// accepted word modulo b, so the result is uniform on [0, b) whenever the
/// words are uniform.
class EngineRng {
public:
    virtual ~EngineRng() = default;
    virtual std::uint64_t next_word() = 0;
    virtual void set_seed(std::uint64_t seed) = 0;

    virtual std::uint64_t bounded(std::uint64_t bound);
};

/// xoshiro256** with splitmix64 state expansion from a 64-bit seed.
class Xoshiro256StarStar final : public EngineRng {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed = 1) { set_seed(seed); }

    void set_seed(std::uint64_t seed) override;

    std::uint64_t next_word() override {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

/// Bijection on {0..N-1}. Applying p to an array a yields a' with
/// a'[i] = a[p[i]].
struct Permutation {
    std::vector<std::uint8_t> map;

    static Permutation identity(int n);
    bool is_valid() const;
    bool is_identity() const;
    Permutation inverse() const;
    bool operator==(const Permutation&) const = default;
};

/// compose(a, b)[i] = a[b[i]]: applying b after a to an array equals
/// applying compose(a, b) once.
Permutation compose(const Permutation& a, const Permutation& b);

/// Per-trial timer. tick_before()/tick_after() bracket one shuffle+check
/// body; tick_after() returns the nonnegative tick delta.
class TimerSource {
public:
    virtual ~TimerSource() = default;
    virtual void tick_before() = 0;
    virtual std::uint64_t tick_after() = 0;
};

/// Highest-resolution monotonic counter available; one tick is one raw
/// counter increment (no calibration to wall time).
class RealTimer final : public TimerSource {
public:
    void tick_before() override;
    std::uint64_t tick_after() override;
    static std::uint64_t now_ticks();

private:
    std::uint64_t start_ = 0;
};

/// One sorting cycle's observables: trials to the m-th success and the
/// total elapsed ticks. trial_ticks is filled only in trace mode.
struct CycleSample {
    std::uint64_t n_p = 0;
    std::uint64_t t_ticks = 0;
    int successes = 0;
    std::vector<std::uint64_t> trial_ticks;
};

/// Trace of a cycle: the initial disorder, every applied permutation, and
/// the 0-based trial indices at which successes occurred.
struct CycleTrace {
    Permutation initial_disorder;
    std::vector<Permutation> applied;
    std::vector<std::uint64_t> success_trials;
};

/// One in-place Fisher-Yates pass: i descends from N-1 to 1, swapping
/// position i with a bounded draw j in [0, i].
void shuffle(std::vector<int>& array, EngineRng& rng);

inline constexpr std::uint64_t kDefaultTrialGuard = 1'000'000'000;

/// Runs one cycle: the array starts as the sorted sequence 0..N-1, is
/// disordered by one initial shuffle, then trials of {shuffle; timer;
/// sortedness check} run until m successes. Sortedness is strictly
/// ascending. Throws std::runtime_error if the trial guard trips.
CycleSample run_cycle(const RpssConfig& cfg, EngineRng& rng, TimerSource& timer,
                      CycleTrace* trace = nullptr,
                      std::uint64_t trial_guard = kDefaultTrialGuard);

/// True iff the left-to-right composition of the applied permutations
/// equals the inverse of the disorder permutation that began the segment.
/// Throws std::invalid_argument on an empty trace or size mismatch.
bool verify_composition(const std::vector<Permutation>& applied,
                        const Permutation& initial_disorder);

} // namespace rpss

#endif
