// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// executed criterion fails. Criterion 11 exercises the real timer and is
// environment-dependent; it runs only with --real or --real-only.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rpss/analytics.hpp"
#include "rpss/config.hpp"
#include "rpss/engine.hpp"
#include "rpss/jitter.hpp"
#include "rpss/montecarlo.hpp"
#include "rpss/pipeline.hpp"
#include "rpss/planner.hpp"
#include "rpss/stats.hpp"

using namespace rpss;

namespace {

struct Criterion {
    int id;
    const char* title;
    std::function<bool(std::ostringstream&)> run;
};

bool check(std::ostringstream& out, bool ok, const std::string& what) {
    out << (ok ? "" : " [failed: " + what + "]");
    return ok;
}

// ---- criterion 1: closed-form count moments ------------------------------

bool c1_theory_moments(std::ostringstream& out) {
    const MomentSet ms = nb_moments(RpssConfig(4, 4, 16));
    out << "mean=" << ms.mean << " var=" << ms.variance << " g1=" << ms.skewness
        << " g2=" << ms.excess_kurtosis;
    bool ok = true;
    ok &= check(out, std::abs(ms.mean - 96.0) < 1e-9, "mean != 96");
    ok &= check(out, std::abs(ms.variance - 2208.0) < 1e-9, "variance != 2208");
    ok &= check(out, std::abs(ms.skewness - 1.0002) <= 1e-4, "g1 outside 1.0002 +/- 1e-4");
    ok &= check(out, std::abs(ms.excess_kurtosis - 1.5005) <= 1e-4,
                "g2 outside 1.5005 +/- 1e-4");
    return ok;
}

// ---- criterion 2: empirical count moments --------------------------------

bool c2_empirical_moments(std::ostringstream& out) {
    const RpssConfig cfg(4, 4, 16);
    const auto unit = JitterModel::from_probs({1}, {1.0});
    const auto obs = simulate_cycles_parallel(cfg, unit, 1'000'000, 0xC2E57A11, 0x0D15EA5E);
    std::vector<std::uint64_t> n_p(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) n_p[i] = obs[i].n_p;
    const MomentSet ms = sample_moments(std::span<const std::uint64_t>(n_p));
    out << "mean=" << ms.mean << " var=" << ms.variance << " g1=" << ms.skewness
        << " g2=" << ms.excess_kurtosis;
    bool ok = true;
    ok &= check(out, std::abs(ms.mean - 96.0) <= 0.15, "mean outside 96 +/- 0.15");
    ok &= check(out, std::abs(ms.variance - 2208.0) <= 25.0,
                "variance outside 2208 +/- 25");
    ok &= check(out, std::abs(ms.skewness - 1.00) <= 0.02, "g1 outside 1.00 +/- 0.02");
    ok &= check(out, std::abs(ms.excess_kurtosis - 1.50) <= 0.10,
                "g2 outside 1.50 +/- 0.10");
    return ok;
}

// ---- criterion 3: composed cf vs brute-force convolution -----------------

bool c3_composition_law(std::ostringstream& out) {
    const JitterModel jitters[] = {
        JitterModel::from_probs({1}, {1.0}),
        JitterModel::from_probs({1, 2}, {0.6, 0.4}),
        JitterModel::from_probs({0, 1, 2, 7, 40}, {0.25, 0.55, 0.15, 0.04, 0.01}),
    };
    double worst = 0.0;
    int combos = 0;
    for (int n : {2, 3, 4}) {
        for (int m : {1, 2, 4}) {
            for (std::uint64_t r : {2ull, 8ull, 16ull}) {
                const RpssConfig cfg(n, m, r);
                for (const auto& jit : jitters) {
                    const auto a = mod_residue_t(cfg, jit);
                    const auto b = exact_t_mod(cfg, jit, 1e-12);
                    for (std::uint64_t res = 0; res < r; ++res)
                        worst = std::max(worst, std::abs(a.probabilities[res] -
                                                         b.probabilities[res]));
                    ++combos;
                }
            }
        }
    }
    out << combos << " combinations, worst entry-wise difference " << worst;
    return check(out, worst < 1e-9, "difference >= 1e-9");
}

// ---- criterion 4: deviation bound and geometric decay --------------------

bool c4_bound_and_decay(std::ostringstream& out) {
    bool ok = true;
    double worst_ratio_excess = -1.0;
    for (const auto& ref : reference_parameter_grid()) {
        const RpssConfig cfg(ref.array_size, ref.success_count, ref.modulus);
        const auto rep = convergence_report(cfg);
        const double dev_m = mod_residue_np(cfg).max_deviation;
        ok &= check(out, dev_m <= rep.bound_n * (1.0 + 1e-12) + 1e-18,
                    "deviation above the bound at N=" + std::to_string(ref.array_size));

        const RpssConfig next(ref.array_size, ref.success_count + 1, ref.modulus);
        const double dev_next = mod_residue_np(next).max_deviation;
        const double ratio = dev_next / dev_m;
        worst_ratio_excess = std::max(worst_ratio_excess, ratio - rep.rho_n);
        ok &= check(out, ratio <= rep.rho_n + 1e-9,
                    "decay ratio above rho at N=" + std::to_string(ref.array_size));
    }
    out << "7 rows, worst (ratio - rho) = " << worst_ratio_excess;
    return ok;
}

// ---- criterion 5: 4-bit residue uniformity -------------------------------

bool c5_uniformity_4bit(std::ostringstream& out) {
    const RpssConfig cfg(4, 4, 16);
    const auto unit = JitterModel::from_probs({1}, {1.0});
    const auto obs = simulate_cycles_parallel(cfg, unit, 1'000'000, 0x5EED0005, 0x5EED0006);
    const auto residues = residue_stream(obs, false, 16);
    const StatsReport rep = analyze(std::span<const std::uint64_t>(residues), 16);
    out << "max_dev=" << rep.max_deviation_pct << "% H=" << rep.shannon_entropy_bits
        << " p=" << rep.p_value;
    bool ok = true;
    ok &= check(out, rep.max_deviation_pct < 1.0, "max deviation >= 1%");
    ok &= check(out, rep.shannon_entropy_bits >= 3.9999, "entropy < 3.9999");
    ok &= check(out, rep.p_value > 0.01, "p-value <= 0.01");
    return ok;
}

// ---- criterion 6: 8-bit pipeline uniformity ------------------------------

bool c6_uniformity_8bit(std::ostringstream& out) {
    const bool fast = std::getenv("RPSS_ACCEPTANCE_FAST") != nullptr;
    const std::size_t bytes = fast ? 250'000 : 1'000'000;
    const double h_floor = fast ? 7.996 : 7.999;

    const RpssConfig cfg(5, 5, 256);
    Xoshiro256StarStar rng(0x5EED0007);
    SimulatedTimer timer(jitter_preset("fat-like"), 0x5EED0008);
    Pipeline pipeline(cfg, rng, timer, 0x5EED0009);
    const auto stream = pipeline.generate(bytes);
    const StatsReport rep = analyze(stream);
    out << bytes << " bytes, H=" << rep.shannon_entropy_bits
        << " Hmin=" << rep.min_entropy_bits << " p=" << rep.p_value;
    bool ok = true;
    ok &= check(out, rep.shannon_entropy_bits >= h_floor, "Shannon entropy too low");
    ok &= check(out, rep.min_entropy_bits >= 7.9, "min-entropy < 7.9");
    ok &= check(out, rep.p_value > 0.001, "p-value <= 0.001");
    return ok;
}

// ---- criterion 7: perturbation decoupling --------------------------------

bool c7_perturbation_decoupling(std::ostringstream& out) {
    const std::size_t bytes = 1'000'000;
    const RpssConfig cfg(5, 5, 256);
    // Baseline law on the 1 (mod 4) tick lattice; the +3 translation is a
    // pure mean shift yet lands the support on multiples of 4, which the
    // time residues resolve immediately.
    const auto base = JitterModel::from_probs({1, 5, 9}, {0.92, 0.078, 0.002});
    const auto shifted = base.shifted(3);

    const auto run = [&](bool perturb) {
        Xoshiro256StarStar rng(0x5EED000A);
        SimulatedTimer timer(base, 0x5EED000B);
        Pipeline pipeline(cfg, rng, timer, 0x5EED000C);
        auto first = pipeline.generate_with_probe(bytes / 2);
        if (perturb) timer.set_model(shifted);
        auto second = pipeline.generate_with_probe(bytes - bytes / 2);
        first.primary.insert(first.primary.end(), second.primary.begin(),
                             second.primary.end());
        first.probe.insert(first.probe.end(), second.probe.begin(), second.probe.end());
        return first;
    };

    const auto baseline = run(false);
    const auto perturbed = run(true);
    const StatsReport t_base = analyze(baseline.probe);
    const StatsReport t_pert = analyze(perturbed.probe);
    const StatsReport n_pert = analyze(perturbed.primary);

    const double chi_change =
        std::abs(t_pert.chi_square - t_base.chi_square) / t_base.chi_square;
    out << "probe chi2 " << t_base.chi_square << " -> " << t_pert.chi_square
        << " (change " << chi_change * 100.0 << "%), primary H="
        << n_pert.shannon_entropy_bits << " p=" << n_pert.p_value;
    bool ok = true;
    ok &= check(out, chi_change >= 0.5, "probe chi-square changed by < 50%");
    ok &= check(out, n_pert.shannon_entropy_bits >= 7.999, "primary entropy < 7.999");
    ok &= check(out, n_pert.p_value > 0.01, "primary p-value <= 0.01");
    return ok;
}

// ---- criterion 8: composition identity on traced segments ----------------

bool c8_composition_identity(std::ostringstream& out) {
    std::uint64_t segments = 0, verified = 0;
    class UnitTimer final : public TimerSource {
    public:
        void tick_before() override {}
        std::uint64_t tick_after() override { return 1; }
    } timer;

    std::uint64_t target = 0;
    for (int n : {3, 4, 5}) {
        const RpssConfig cfg(n, 2, 16);
        Xoshiro256StarStar rng(0x5EED000D + static_cast<std::uint64_t>(n));
        CycleTrace trace;
        target += 3334;
        while (segments < target) {
            run_cycle(cfg, rng, timer, &trace);
            std::uint64_t start = 0;
            for (std::size_t seg = 0; seg < trace.success_trials.size(); ++seg) {
                const std::uint64_t end = trace.success_trials[seg];
                const std::vector<Permutation> segment(
                    trace.applied.begin() + static_cast<std::ptrdiff_t>(start),
                    trace.applied.begin() + static_cast<std::ptrdiff_t>(end) + 1);
                const Permutation disorder = seg == 0
                                                 ? trace.initial_disorder
                                                 : Permutation::identity(n);
                ++segments;
                if (verify_composition(segment, disorder)) ++verified;
                start = end + 1;
            }
        }
    }
    out << verified << "/" << segments << " segments verified";
    return check(out, segments >= 10'000 && verified == segments,
                 "composition identity violated");
}

// ---- criterion 9: planner ------------------------------------------------

bool c9_planner(std::ostringstream& out) {
    const auto rows = plan(8, 0.011, 6, 8);
    bool found = false;
    std::uint64_t byte_cost = 0;
    for (const auto& r : rows)
        if (r.array_size == 5 && r.success_count == 5 && r.expected_trials == 600) {
            found = true;
            byte_cost = r.byte_cost;
        }
    const auto grid = reference_grid_comparison();
    out << rows.size() << " planned rows; reference grid with published-vs-computed diff:\n"
        << to_text(std::span<const ReferenceComparisonRow>(grid));
    bool ok = true;
    ok &= check(out, found, "row (N=5, m=5, M=600) missing");
    ok &= check(out, byte_cost == 3000, "C_byte != 3000");
    ok &= check(out, grid.size() == 7, "reference grid incomplete");
    return ok;
}

// ---- criterion 10: statistical engine calibration -------------------------

bool c10_calibration(std::ostringstream& out) {
    const double p = chi_square_p_value(15.0, 15);
    const double independent = oracles::chi_square_upper_tail(15.0, 15);
    bool ok = true;
    ok &= check(out, std::abs(p - 0.4514) <= 0.0005, "p(15,15) outside 0.4514 +/- 0.0005");
    ok &= check(out, std::abs(p - independent) < 1e-9,
                "series/cf and closed-form evaluations disagree");

    // p-values of 1000 exactly-uniform simulated streams must themselves
    // be uniform.
    Xoshiro256StarStar rng(0x5EED000E);
    std::vector<double> pvals;
    pvals.reserve(1000);
    std::vector<std::uint64_t> hist(256);
    for (int stream = 0; stream < 1000; ++stream) {
        std::fill(hist.begin(), hist.end(), 0);
        for (int i = 0; i < 65536; ++i) ++hist[rng.bounded(256)];
        double chi2 = 0;
        const double expected = 65536.0 / 256.0;
        for (std::uint64_t c : hist) {
            const double d = static_cast<double>(c) - expected;
            chi2 += d * d / expected;
        }
        pvals.push_back(chi_square_p_value(chi2, 255));
    }
    const double ks = ks_uniform_statistic(pvals);
    const double crit = ks_critical_value_01(pvals.size());
    out << "p(15,15)=" << p << " KS=" << ks << " crit(0.01)=" << crit;
    ok &= check(out, ks < crit, "p-value KS uniformity check failed");
    return ok;
}

// ---- criterion 11: real-timer mode (environment-dependent) ----------------

bool c11_real_mode(std::ostringstream& out) {
    const RpssConfig cfg(5, 5, 256);
    Xoshiro256StarStar rng(0x5EED000F);
    RealTimer timer;
    Pipeline pipeline(cfg, rng, timer, 0x5EED0010);
    const auto stream = pipeline.generate(100'000);
    const StatsReport rep = analyze(stream);
    out << "H=" << rep.shannon_entropy_bits << " Hmin=" << rep.min_entropy_bits
        << " cycles=" << pipeline.cycle_index();
    return check(out, rep.shannon_entropy_bits >= 7.95, "entropy < 7.95");
}

} // namespace

int main(int argc, char** argv) {
    bool include_real = false, real_only = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--real") == 0) include_real = true;
        if (std::strcmp(argv[i], "--real-only") == 0) real_only = include_real = true;
    }

    const std::vector<Criterion> criteria = {
        {1, "closed-form count moments (N=4, m=4)", c1_theory_moments},
        {2, "empirical count moments over 1e6 cycles", c2_empirical_moments},
        {3, "composition law: cf inversion vs convolution over the grid",
         c3_composition_law},
        {4, "deviation bound and geometric decay on the reference grid",
         c4_bound_and_decay},
        {5, "4-bit residue uniformity over 1e6 cycles", c5_uniformity_4bit},
        {6, "8-bit pipeline uniformity over 1e6 bytes", c6_uniformity_8bit},
        {7, "perturbation decoupling of probe and primary streams",
         c7_perturbation_decoupling},
        {8, "composition identity on 1e4 traced segments", c8_composition_identity},
        {9, "parameter planner and reference grid diff", c9_planner},
        {10, "statistical engine calibration", c10_calibration},
        {11, "real-timer mode (environment-dependent, off by default)", c11_real_mode},
    };

    int failures = 0, executed = 0;
    for (const auto& c : criteria) {
        const bool is_real = c.id == 11;
        if (is_real && !include_real) {
            std::printf("SKIP criterion %2d: %s\n", c.id, c.title);
            continue;
        }
        if (!is_real && real_only) continue;
        std::ostringstream detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail << " [exception: " << e.what() << "]";
        }
        ++executed;
        if (!ok) ++failures;
        std::printf("%s criterion %2d: %s — %s\n", ok ? "PASS" : "FAIL", c.id, c.title,
                    detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d criteria executed, %d failed\n", executed, failures);
    return failures == 0 ? 0 : 1;
}
