#include <doctest.h>

#include <cmath>
#include <vector>

#include "rpss/analytics.hpp"
#include "rpss/jitter.hpp"
#include "rpss/stats.hpp"

using namespace rpss;

TEST_SUITE("jitter") {

TEST_CASE("frequency-table import reproduces recorded sample statistics") {
    // Two measured per-trial runtime rows, tick counts starting at 0.
    const auto row5 = JitterModel::from_table_counts(
        {{0, 0}, {1, 853}, {2, 137}, {3, 5}, {4, 1}, {5, 1}});
    CHECK(row5.mean() == doctest::Approx(1151.0 / 997.0).epsilon(1e-14));
    CHECK(std::abs(row5.mean() - 1.154) < 1e-3);
    CHECK(std::abs(std::sqrt(row5.variance()) - 0.398) < 1e-3);

    const auto row7 = JitterModel::from_table_counts(
        {{0, 0}, {1, 453}, {2, 538}, {3, 2}, {4, 2}, {5, 0}, {6, 1}, {7, 2}});
    CHECK(std::abs(row7.mean() - 1.566) < 1e-3);
}

TEST_CASE("degenerate single-point law") {
    const auto unit = JitterModel::from_table_counts({{1, 12345}});
    CHECK(unit.mean() == 1.0);
    CHECK(unit.variance() == 0.0);
    CHECK(unit.support_size() == 1);
}

TEST_CASE("count import is exact: probabilities times total recover counts") {
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> counts{
        {0, 42}, {1, 946}, {2, 8}, {3, 2}, {4, 1}};
    const auto model = JitterModel::from_table_counts(counts);
    double total = 0;
    for (const auto& [t, c] : counts) total += static_cast<double>(c);
    std::size_t idx = 0;
    for (const auto& [t, c] : counts) {
        if (c == 0) continue;
        CHECK(model.ticks()[idx] == t);
        CHECK(std::llround(model.probs()[idx] * total) == static_cast<long long>(c));
        ++idx;
    }
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(JitterModel::from_table_counts({{0, 0}, {1, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(JitterModel::from_table_counts({}), std::invalid_argument);
    CHECK_THROWS_AS(JitterModel::from_probs({1, 1}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(JitterModel::from_probs({1, 2}, {0.6, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(JitterModel::from_probs({1, 2}, {-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(JitterModel::from_probs({1}, {}), std::invalid_argument);
}

TEST_CASE("probabilities sum to one and moments match direct summation") {
    const auto model = JitterModel::from_probs({0, 1, 2, 7, 40},
                                               {0.25, 0.55, 0.15, 0.04, 0.01});
    double sum = 0, mean = 0;
    for (std::size_t i = 0; i < model.support_size(); ++i) {
        sum += model.probs()[i];
        mean += model.probs()[i] * static_cast<double>(model.ticks()[i]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(model.mean() == doctest::Approx(mean).epsilon(1e-12));
    double var = 0;
    for (std::size_t i = 0; i < model.support_size(); ++i) {
        const double d = static_cast<double>(model.ticks()[i]) - mean;
        var += model.probs()[i] * d * d;
    }
    CHECK(model.variance() == doctest::Approx(var).epsilon(1e-12));
}

TEST_CASE("sampling: degenerate and two-point laws") {
    const auto unit = JitterModel::from_probs({1}, {1.0});
    Xoshiro256StarStar rng(5);
    for (int i = 0; i < 1000; ++i) CHECK(unit.sample(rng) == 1);

    const auto two = JitterModel::from_probs({1, 2}, {0.6, 0.4});
    Xoshiro256StarStar rng2(6);
    const int draws = 1'000'000;
    int ones = 0;
    for (int i = 0; i < draws; ++i)
        if (two.sample(rng2) == 1) ++ones;
    CHECK(std::abs(static_cast<double>(ones) / draws - 0.6) < 0.002);
}

TEST_CASE("sampling: heavy tail frequency over ten million draws") {
    const auto model =
        JitterModel::from_probs({1, 500}, {1.0 - 1e-4, 1e-4});
    Xoshiro256StarStar rng(7);
    const int draws = 10'000'000;
    int tail = 0;
    for (int i = 0; i < draws; ++i)
        if (model.sample(rng) == 500) ++tail;
    // 5 sigma around the expected 1000 under the Poisson approximation.
    CHECK(std::abs(tail - 1000) < 5 * std::sqrt(1000.0));
}

TEST_CASE("sampling: determinism and distributional chi-square") {
    const auto model = JitterModel::from_table_counts(
        {{0, 156}, {1, 583}, {2, 241}, {3, 6}, {4, 14}});
    Xoshiro256StarStar a(9), b(9);
    for (int i = 0; i < 100; ++i) CHECK(model.sample(a) == model.sample(b));

    const int draws = 1'000'000;
    std::vector<std::uint64_t> counts(model.support_size(), 0);
    Xoshiro256StarStar rng(10);
    for (int i = 0; i < draws; ++i) {
        const std::uint64_t tick = model.sample(rng);
        for (std::size_t j = 0; j < model.support_size(); ++j)
            if (model.ticks()[j] == tick) ++counts[j];
    }
    double chi2 = 0;
    for (std::size_t j = 0; j < model.support_size(); ++j) {
        const double expected = model.probs()[j] * draws;
        const double d = static_cast<double>(counts[j]) - expected;
        chi2 += d * d / expected;
    }
    const double p = chi_square_p_value(chi2, model.support_size() - 1);
    CHECK(p > 0.001);
}

TEST_CASE("json import: probs, counts, and malformed input") {
    const auto by_probs = JitterModel::from_json_text(
        R"({"ticks": [1, 2], "probs": [0.6, 0.4]})");
    CHECK(by_probs.mean() == doctest::Approx(1.4).epsilon(1e-12));

    const auto by_counts = JitterModel::from_json_text(
        R"({"ticks": [0, 1, 2], "counts": [42, 946, 12]})");
    CHECK(by_counts.support_size() == 3);

    CHECK_THROWS(JitterModel::from_json_text(R"({"probs": [1.0]})"));
    CHECK_THROWS(JitterModel::from_json_text(R"({"ticks": [1, 2], "counts": [3]})"));
    CHECK_THROWS(JitterModel::from_json_text("not json"));
    CHECK_THROWS_AS(JitterModel::from_json_file("/nonexistent/jitter.json"),
                    std::runtime_error);
}

TEST_CASE("shifted law translates ticks only") {
    const auto base = JitterModel::from_probs({1, 5, 9}, {0.92, 0.078, 0.002});
    const auto moved = base.shifted(3);
    CHECK(moved.ticks() == std::vector<std::uint64_t>{4, 8, 12});
    CHECK(moved.mean() == doctest::Approx(base.mean() + 3.0).epsilon(1e-12));
    CHECK(moved.variance() == doctest::Approx(base.variance()).epsilon(1e-12));
}

TEST_CASE("presets exist and order the compound law") {
    CHECK_THROWS_AS(jitter_preset("no-such-preset"), std::invalid_argument);
    const auto& fat = jitter_preset("fat-like");
    const auto& skinny = jitter_preset("skinny-like");
    const auto& ultra = jitter_preset("ultra-skinny-like");

    const RpssConfig cfg(4, 4, 16);
    const MomentSet tf = t_moments(cfg, fat);
    const MomentSet ts = t_moments(cfg, skinny);
    const MomentSet tu = t_moments(cfg, ultra);

    // Mean decreases across the profiles, variance peaks in the middle,
    // asymmetry and tail weight grow.
    CHECK(tf.mean > ts.mean);
    CHECK(ts.mean > tu.mean);
    CHECK(ts.variance > tf.variance);
    CHECK(tf.variance > tu.variance);
    CHECK(tf.skewness < ts.skewness);
    CHECK(ts.skewness < tu.skewness);
    CHECK(tf.excess_kurtosis < ts.excess_kurtosis);
    CHECK(ts.excess_kurtosis < tu.excess_kurtosis);
}

} // TEST_SUITE
