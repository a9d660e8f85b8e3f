#ifndef RPSS_JITTER_HPP
#define RPSS_JITTER_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rpss/engine.hpp"

namespace rpss {

/// Finite discrete law of the per-trial runtime, as integer ticks with
/// probabilities. Tick 0 is permitted. Sampling is exact inverse-CDF over
/// integer cumulative weights, consuming one bounded draw per sample.
class JitterModel {
public:
    static JitterModel from_probs(std::vector<std::uint64_t> ticks,
                                  std::vector<double> probs);
    static JitterModel from_table_counts(
        const std::vector<std::pair<std::uint64_t, std::uint64_t>>& tick_counts);
    /// Parses {"ticks": [...], "probs": [...]} or {"ticks": [...], "counts": [...]}.
    static JitterModel from_json_text(const std::string& text);
    static JitterModel from_json_file(const std::string& path);

    const std::vector<std::uint64_t>& ticks() const { return ticks_; }
    const std::vector<double>& probs() const { return probs_; }

    double mean() const { return mean_; }
    double variance() const { return variance_; }
    /// Third and fourth cumulants (kappa3 = mu3, kappa4 = mu4 - 3 mu2^2).
    double kappa3() const { return kappa3_; }
    double kappa4() const { return kappa4_; }

    /// Characteristic function phi_X(omega) = sum_x P(x) e^{i omega x}.
    std::complex<double> cf(double omega) const;

    /// One draw by inverse CDF over the integer weight table.
    std::uint64_t sample(EngineRng& rng) const;

    /// Same law translated by delta ticks.
    JitterModel shifted(std::uint64_t delta) const;

    std::size_t support_size() const { return ticks_.size(); }

private:
    JitterModel() = default;
    void finalize();

    std::vector<std::uint64_t> ticks_;   // distinct, ascending
    std::vector<double> probs_;          // sum to 1 within 1e-12
    std::vector<std::uint64_t> cum_weights_;
    std::uint64_t weight_denom_ = 0;
    double mean_ = 0, variance_ = 0, kappa3_ = 0, kappa4_ = 0;
};

struct NamedJitterPreset {
    std::string name;
    std::string provenance;
    JitterModel model;
};

/// Built-in synthetic profiles: "fat-like", "skinny-like",
/// "ultra-skinny-like". Their compound elapsed-time laws are ordered by
/// decreasing mean and increasing skewness/kurtosis, with the middle
/// profile carrying the largest variance.
const std::vector<NamedJitterPreset>& jitter_presets();

/// Lookup by name; throws std::invalid_argument for unknown names.
const JitterModel& jitter_preset(std::string_view name);

/// Simulated per-trial timer: each tick_after() is one draw from the
/// model using the timer's own rng stream.
class SimulatedTimer final : public TimerSource {
public:
    SimulatedTimer(JitterModel model, std::uint64_t seed)
        : model_(std::move(model)), rng_(seed) {}

    void tick_before() override {}
    std::uint64_t tick_after() override { return model_.sample(rng_); }

    /// Swaps the runtime law mid-stream; the rng stream continues.
    void set_model(JitterModel model) { model_ = std::move(model); }
    const JitterModel& model() const { return model_; }

private:
    JitterModel model_;
    Xoshiro256StarStar rng_;
};

/// Streaming per-trial tick histogram in the frequency-table layout.
/// Deltas above the cutoff are tallied separately as oversized events and
/// excluded from the per-tick rows (they still reach the cycle total,
/// which is accumulated elsewhere).
class TickHistogramTimer final : public TimerSource {
public:
    TickHistogramTimer(TimerSource& inner, std::uint64_t cutoff = 500)
        : inner_(inner), cutoff_(cutoff) {}

    void tick_before() override { inner_.tick_before(); }
    std::uint64_t tick_after() override;

    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::uint64_t oversized_count() const { return oversized_; }
    std::uint64_t cutoff() const { return cutoff_; }

private:
    TimerSource& inner_;
    std::uint64_t cutoff_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t oversized_ = 0;
};

} // namespace rpss

#endif
