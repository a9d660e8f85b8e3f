#include "rpss/jitter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rpss {

namespace {
constexpr std::uint64_t kProbDenom = 1ULL << 53;
}

JitterModel JitterModel::from_probs(std::vector<std::uint64_t> ticks,
                                    std::vector<double> probs) {
    if (ticks.size() != probs.size() || ticks.empty())
        throw std::invalid_argument("jitter model needs matching, nonempty ticks/probs");
    std::vector<std::size_t> order(ticks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ticks[a] < ticks[b]; });
    JitterModel m;
    m.ticks_.reserve(ticks.size());
    m.probs_.reserve(probs.size());
    for (std::size_t i : order) {
        m.ticks_.push_back(ticks[i]);
        m.probs_.push_back(probs[i]);
    }

    double sum = 0;
    for (double p : m.probs_) {
        if (!(p >= 0.0) || p > 1.0)
            throw std::invalid_argument("jitter probability outside [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("jitter probabilities do not sum to 1");
    for (double& p : m.probs_) p /= sum;

    // Integer weights over a power-of-two denominator for exact sampling;
    // rounding drift is absorbed by the heaviest entry.
    std::vector<std::uint64_t> weights(m.probs_.size());
    std::uint64_t total = 0;
    std::size_t heaviest = 0;
    for (std::size_t i = 0; i < m.probs_.size(); ++i) {
        auto w = static_cast<std::uint64_t>(
            std::llround(m.probs_[i] * static_cast<double>(kProbDenom)));
        if (m.probs_[i] > 0 && w == 0) w = 1;
        weights[i] = w;
        total += w;
        if (w > weights[heaviest]) heaviest = i;
    }
    weights[heaviest] += kProbDenom - total;  // wraps consistently if total > denom
    m.weight_denom_ = kProbDenom;
    m.cum_weights_.resize(weights.size());
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        m.cum_weights_[i] = acc;
    }

    m.finalize();
    return m;
}

JitterModel JitterModel::from_table_counts(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& tick_counts) {
    if (tick_counts.empty())
        throw std::invalid_argument("empty tick/count table");
    auto sorted = tick_counts;
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t total = 0;
    for (const auto& [tick, count] : sorted) total += count;
    if (total == 0) throw std::invalid_argument("all counts are zero");

    JitterModel m;
    m.weight_denom_ = total;
    std::uint64_t acc = 0;
    for (const auto& [tick, count] : sorted) {
        if (count == 0) continue;
        m.ticks_.push_back(tick);
        m.probs_.push_back(static_cast<double>(count) / static_cast<double>(total));
        acc += count;
        m.cum_weights_.push_back(acc);
    }
    m.finalize();
    return m;
}

void JitterModel::finalize() {
    for (std::size_t i = 1; i < ticks_.size(); ++i)
        if (ticks_[i] <= ticks_[i - 1])
            throw std::invalid_argument("jitter ticks must be distinct and ascending");

    double mean = 0;
    for (std::size_t i = 0; i < ticks_.size(); ++i)
        mean += static_cast<double>(ticks_[i]) * probs_[i];
    double m2 = 0, m3 = 0, m4 = 0;
    for (std::size_t i = 0; i < ticks_.size(); ++i) {
        const double d = static_cast<double>(ticks_[i]) - mean;
        const double p = probs_[i];
        m2 += d * d * p;
        m3 += d * d * d * p;
        m4 += d * d * d * d * p;
    }
    mean_ = mean;
    variance_ = m2;
    kappa3_ = m3;
    kappa4_ = m4 - 3.0 * m2 * m2;
}

std::complex<double> JitterModel::cf(double omega) const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < ticks_.size(); ++i) {
        const double phase = omega * static_cast<double>(ticks_[i]);
        acc += probs_[i] * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    return acc;
}

std::uint64_t JitterModel::sample(EngineRng& rng) const {
    const std::uint64_t u = rng.bounded(weight_denom_);
    for (std::size_t i = 0; i < cum_weights_.size(); ++i)
        if (u < cum_weights_[i]) return ticks_[i];
    return ticks_.back();
}

JitterModel JitterModel::shifted(std::uint64_t delta) const {
    JitterModel m = *this;
    for (auto& t : m.ticks_) t += delta;
    m.finalize();
    return m;
}

JitterModel JitterModel::from_json_text(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (!j.contains("ticks") || !j["ticks"].is_array())
        throw std::invalid_argument("jitter json needs a \"ticks\" array");
    std::vector<std::uint64_t> ticks = j["ticks"].get<std::vector<std::uint64_t>>();
    if (j.contains("probs")) {
        return from_probs(std::move(ticks), j["probs"].get<std::vector<double>>());
    }
    if (j.contains("counts")) {
        const auto counts = j["counts"].get<std::vector<std::uint64_t>>();
        if (counts.size() != ticks.size())
            throw std::invalid_argument("ticks/counts length mismatch");
        std::vector<std::pair<std::uint64_t, std::uint64_t>> tc;
        tc.reserve(ticks.size());
        for (std::size_t i = 0; i < ticks.size(); ++i) tc.emplace_back(ticks[i], counts[i]);
        return from_table_counts(tc);
    }
    throw std::invalid_argument("jitter json needs \"probs\" or \"counts\"");
}

JitterModel JitterModel::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open jitter file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

namespace {

std::vector<NamedJitterPreset> build_presets() {
    std::vector<NamedJitterPreset> v;
    // Counts over a denominator of 100000, in the frequency-table layout.
    // The three profiles order the compound elapsed-time law by decreasing
    // mean and increasing skewness/kurtosis; the middle profile has the
    // widest spread.
    v.push_back({"fat-like",
                 "synthetic busy-host profile: broad low-tick bulk, moderate tail",
                 JitterModel::from_table_counts(
                     {{0, 20787}, {1, 61800}, {2, 17300}, {120, 113}})});
    v.push_back({"skinny-like",
                 "synthetic contended-host profile: sharp peak, long sparse tail",
                 JitterModel::from_table_counts(
                     {{0, 54223}, {1, 31400}, {2, 14150}, {150, 227}})});
    v.push_back({"ultra-skinny-like",
                 "synthetic idle-host profile: near-deterministic bulk, rare spikes",
                 JitterModel::from_table_counts(
                     {{0, 52670}, {1, 37160}, {2, 10164}, {250, 6}})});
    return v;
}

} // namespace

const std::vector<NamedJitterPreset>& jitter_presets() {
    static const std::vector<NamedJitterPreset> presets = build_presets();
    return presets;
}

const JitterModel& jitter_preset(std::string_view name) {
    for (const auto& p : jitter_presets())
        if (p.name == name) return p.model;
    throw std::invalid_argument("unknown jitter preset: " + std::string(name));
}

std::uint64_t TickHistogramTimer::tick_after() {
    const std::uint64_t delta = inner_.tick_after();
    if (delta > cutoff_) {
        ++oversized_;
    } else {
        if (counts_.size() <= delta) counts_.resize(delta + 1, 0);
        ++counts_[delta];
    }
    return delta;
}

} // namespace rpss
