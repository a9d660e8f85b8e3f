#include "rpss/engine.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>

#if defined(__x86_64__) || defined(_M_X64)
#include <x86intrin.h>
#endif

namespace rpss {

std::uint64_t mix64(std::uint64_t state, std::uint64_t value) {
    std::uint64_t z = state ^ (value * 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// 2^64 mod b for small bounds, precomputed; the hot loops draw with b <= N.
constexpr auto kSmallRem = [] {
    std::array<std::uint64_t, 65> rem{};
    for (std::uint64_t b = 1; b < rem.size(); ++b)
        rem[b] = (UINT64_MAX % b + 1) % b;
    return rem;
}();

} // namespace

std::uint64_t EngineRng::bounded(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bounded draw with zero bound");
    // Power-of-two bounds divide 2^64: every word is accepted and the
    // reduction is a mask. Identical accept set and reduction as below.
    if ((bound & (bound - 1)) == 0) return next_word() & (bound - 1);
    // Accept only words below floor(2^64 / bound) * bound == 2^64 - rem.
    const std::uint64_t rem = bound < kSmallRem.size()
                                  ? kSmallRem[bound]
                                  : (UINT64_MAX % bound + 1) % bound;
    std::uint64_t word = next_word();
    if (rem != 0) {
        const std::uint64_t limit = 0 - rem;
        while (word >= limit) word = next_word();
    }
    return word % bound;
}

void Xoshiro256StarStar::set_seed(std::uint64_t seed) {
    // splitmix64 expansion; all-zero state cannot occur.
    std::uint64_t x = seed;
    for (auto& word : s_) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        word = z ^ (z >> 31);
    }
}

Permutation Permutation::identity(int n) {
    Permutation p;
    p.map.resize(static_cast<std::size_t>(n));
    std::iota(p.map.begin(), p.map.end(), std::uint8_t{0});
    return p;
}

bool Permutation::is_valid() const {
    std::vector<bool> seen(map.size(), false);
    for (auto v : map) {
        if (v >= map.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < map.size(); ++i)
        if (map[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.map.resize(map.size());
    for (std::size_t i = 0; i < map.size(); ++i)
        inv.map[map[i]] = static_cast<std::uint8_t>(i);
    return inv;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.map.size() != b.map.size())
        throw std::invalid_argument("composing permutations of different sizes");
    Permutation c;
    c.map.resize(a.map.size());
    for (std::size_t i = 0; i < a.map.size(); ++i) c.map[i] = a.map[b.map[i]];
    return c;
}

void RealTimer::tick_before() { start_ = now_ticks(); }

std::uint64_t RealTimer::tick_after() {
    const std::uint64_t now = now_ticks();
    return now >= start_ ? now - start_ : 0;
}

std::uint64_t RealTimer::now_ticks() {
#if defined(__x86_64__) || defined(_M_X64)
    return __rdtsc();
#else
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now().time_since_epoch())
            .count());
#endif
}

void shuffle(std::vector<int>& array, EngineRng& rng) {
    if (array.size() < 2) return;
    for (std::size_t i = array.size() - 1; i >= 1; --i) {
        const std::uint64_t j = rng.bounded(static_cast<std::uint64_t>(i) + 1);
        std::swap(array[i], array[j]);
    }
}

namespace {

inline bool strictly_ascending(const int* a, int n) {
    for (int i = 0; i + 1 < n; ++i)
        if (a[i] >= a[i + 1]) return false;
    return true;
}

// Fisher-Yates on a raw buffer, optionally mirroring the swaps onto an
// identity buffer so the applied permutation can be read off afterward.
inline void shuffle_raw(int* a, int n, EngineRng& rng, std::uint8_t* mirror) {
    for (int i = n - 1; i >= 1; --i) {
        const auto j =
            static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
        std::swap(a[i], a[j]);
        if (mirror != nullptr) std::swap(mirror[i], mirror[j]);
    }
}

} // namespace

CycleSample run_cycle(const RpssConfig& cfg, EngineRng& rng, TimerSource& timer,
                      CycleTrace* trace, std::uint64_t trial_guard) {
    const int n = cfg.array_size;
    int arr[32];
    for (int i = 0; i < n; ++i) arr[i] = i;

    // One untimed, uncounted shuffle establishes the cycle's disorder.
    shuffle_raw(arr, n, rng, nullptr);

    if (trace != nullptr) {
        trace->initial_disorder.map.assign(arr, arr + n);
        trace->applied.clear();
        trace->success_trials.clear();
    }

    CycleSample sample;
    std::uint8_t mirror[32];
    while (sample.successes < cfg.success_count) {
        if (sample.n_p >= trial_guard)
            throw std::runtime_error("trial guard exceeded: rng failed to sort");

        if (trace != nullptr)
            for (int i = 0; i < n; ++i) mirror[i] = static_cast<std::uint8_t>(i);

        timer.tick_before();
        shuffle_raw(arr, n, rng, trace != nullptr ? mirror : nullptr);
        const bool sorted = strictly_ascending(arr, n);
        const std::uint64_t delta = timer.tick_after();

        sample.t_ticks += delta;
        ++sample.n_p;
        if (trace != nullptr) {
            Permutation applied;
            applied.map.assign(mirror, mirror + n);
            trace->applied.push_back(std::move(applied));
            sample.trial_ticks.push_back(delta);
            if (sorted) trace->success_trials.push_back(sample.n_p - 1);
        }
        if (sorted) ++sample.successes;
    }
    return sample;
}

bool verify_composition(const std::vector<Permutation>& applied,
                        const Permutation& initial_disorder) {
    if (applied.empty()) throw std::invalid_argument("empty permutation trace");
    Permutation product = applied.front();
    for (std::size_t i = 1; i < applied.size(); ++i) {
        if (applied[i].map.size() != initial_disorder.map.size())
            throw std::invalid_argument("trace/disorder size mismatch");
        product = compose(product, applied[i]);
    }
    if (product.map.size() != initial_disorder.map.size())
        throw std::invalid_argument("trace/disorder size mismatch");
    return product == initial_disorder.inverse();
}

} // namespace rpss
