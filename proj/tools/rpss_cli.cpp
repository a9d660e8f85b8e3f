// Command-line front end: byte generation, stream analysis, parameter
// planning, composition-law verification, and simulation dumps.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rpss/analytics.hpp"
#include "rpss/config.hpp"
#include "rpss/engine.hpp"
#include "rpss/jitter.hpp"
#include "rpss/montecarlo.hpp"
#include "rpss/pipeline.hpp"
#include "rpss/planner.hpp"
#include "rpss/stats.hpp"

namespace {

constexpr std::uint64_t kDefaultEngineSeed = 1;
constexpr std::uint64_t kDefaultTimerSeed = 2;
constexpr std::uint64_t kDefaultStateSeed = 3;

rpss::JitterModel load_jitter(const std::string& source) {
    if (std::filesystem::exists(source)) return rpss::JitterModel::from_json_file(source);
    return rpss::jitter_preset(source);
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    if (path == "-") {
        std::cout.write(reinterpret_cast<const char*>(bytes.data()),
                        static_cast<std::streamsize>(bytes.size()));
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("writing to stdout failed");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("writing output file failed: " + path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    if (!out) throw std::runtime_error("writing output file failed: " + path);
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

std::string histogram_csv(const std::vector<std::uint64_t>& counts,
                          const char* symbol_header) {
    std::ostringstream os;
    os << symbol_header << ",count\n";
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] != 0) os << i << ',' << counts[i] << "\n";
    return os.str();
}

struct GenerateArgs {
    int array_size = 5;
    int successes = 5;
    int bits = 8;
    std::uint64_t count = 0;
    std::string mode = "sim";
    std::string jitter;
    std::uint64_t engine_seed = kDefaultEngineSeed;
    std::uint64_t timer_seed = kDefaultTimerSeed;
    std::uint64_t state_seed = kDefaultStateSeed;
    bool timer_seed_set = false;
    bool reseed = true;
    std::string source = "counts";
    std::string out = "-";
    std::string probe_out;
    unsigned streams = 1;
};

int cmd_generate(const GenerateArgs& args) {
    if (args.mode != "sim" && args.mode != "real")
        throw std::invalid_argument("mode must be 'sim' or 'real'");
    const bool simulated = args.mode == "sim";
    if (simulated && args.jitter.empty())
        throw std::invalid_argument("sim mode requires --jitter");
    if (!simulated && args.timer_seed_set)
        throw std::invalid_argument("real mode forbids --timer-seed");
    if (args.streams > 1 && args.out == "-")
        throw std::invalid_argument("--streams needs --out to name the files");

    const rpss::RpssConfig cfg(args.array_size, args.successes,
                               1ULL << args.bits);
    const std::optional<rpss::JitterModel> jitter =
        simulated ? std::optional(load_jitter(args.jitter)) : std::nullopt;

    rpss::PipelineOptions options;
    options.reseed_enabled = args.reseed;
    options.source = args.source == "time" ? rpss::SourceSelect::time
                                           : rpss::SourceSelect::counts;

    std::uint64_t cycles_total = 0;
    for (unsigned s = 0; s < args.streams; ++s) {
        const std::uint64_t engine_seed =
            args.streams == 1 ? args.engine_seed : rpss::mix64(args.engine_seed, 3 * s);
        const std::uint64_t timer_seed =
            args.streams == 1 ? args.timer_seed : rpss::mix64(args.timer_seed, 3 * s + 1);
        const std::uint64_t state_seed =
            args.streams == 1 ? args.state_seed : rpss::mix64(args.state_seed, 3 * s + 2);

        rpss::Xoshiro256StarStar rng(engine_seed);
        std::unique_ptr<rpss::TimerSource> timer;
        if (simulated)
            timer = std::make_unique<rpss::SimulatedTimer>(*jitter, timer_seed);
        else
            timer = std::make_unique<rpss::RealTimer>();

        rpss::Pipeline pipeline(cfg, rng, *timer, state_seed, options);
        const std::string out_path =
            args.streams == 1 ? args.out : args.out + "." + std::to_string(s);
        if (!args.probe_out.empty()) {
            auto dual = pipeline.generate_with_probe(args.count);
            write_bytes(out_path, dual.primary);
            const std::string probe_path =
                args.streams == 1 ? args.probe_out
                                  : args.probe_out + "." + std::to_string(s);
            write_bytes(probe_path, dual.probe);
        } else {
            write_bytes(out_path, pipeline.generate(args.count));
        }
        cycles_total += pipeline.cycle_index();
        std::cerr << "stream " << s << ": engine-seed=" << engine_seed;
        if (simulated) std::cerr << " timer-seed=" << timer_seed;
        std::cerr << " state-seed=" << state_seed
                  << " cycles=" << pipeline.cycle_index() << "\n";
    }
    std::cerr << "generated " << args.count << " byte(s) per stream, N="
              << args.array_size << " m=" << args.successes << " R=" << cfg.modulus
              << " mode=" << args.mode << " reseed=" << (args.reseed ? "on" : "off")
              << " source=" << args.source << " cycles-total=" << cycles_total << "\n";
    return 0;
}

struct AnalyzeArgs {
    std::string input;
    int bits = 8;
    bool text = false;
    std::string histogram_path;
};

int cmd_analyze(const AnalyzeArgs& args) {
    if (args.bits != 1 && args.bits != 2 && args.bits != 4 && args.bits != 8)
        throw std::invalid_argument("bits must be 1, 2, 4 or 8");
    const std::vector<std::uint8_t> bytes = read_bytes(args.input);
    if (bytes.empty()) throw std::runtime_error("input file is empty");

    rpss::StatsReport report;
    if (args.bits == 8) {
        report = rpss::analyze(std::span<const std::uint8_t>(bytes));
    } else {
        // Unpack sub-byte symbols most-significant group first.
        std::vector<std::uint64_t> symbols;
        symbols.reserve(bytes.size() * static_cast<std::size_t>(8 / args.bits));
        const unsigned mask = (1u << args.bits) - 1u;
        for (std::uint8_t b : bytes)
            for (int shift = 8 - args.bits; shift >= 0; shift -= args.bits)
                symbols.push_back((static_cast<unsigned>(b) >> shift) & mask);
        report = rpss::analyze(std::span<const std::uint64_t>(symbols),
                               1ULL << args.bits);
    }
    std::cout << (args.text ? rpss::to_text(report) : rpss::to_json_text(report));
    if (!args.text) std::cout << "\n";
    if (!args.histogram_path.empty())
        write_text_file(args.histogram_path, histogram_csv(report.histogram, "symbol"));
    return 0;
}

struct PlanArgs {
    int bits = 8;
    double threshold = 0.01;
    int max_n = 6;
    int max_m = 8;
    bool csv = false;
    bool reference = false;
};

int cmd_plan(const PlanArgs& args) {
    if (args.reference) {
        const auto rows = rpss::reference_grid_comparison();
        std::cout << (args.csv ? rpss::to_csv(rows) : rpss::to_text(rows));
        return 0;
    }
    const auto rows = rpss::plan(args.bits, args.threshold, args.max_n, args.max_m);
    if (rows.empty()) {
        std::cerr << "no (N, m) combination satisfies the threshold within the bounds\n";
        return 2;
    }
    std::cout << (args.csv ? rpss::to_csv(rows) : rpss::to_text(rows));
    return 0;
}

struct VerifyLawArgs {
    int array_size = 3;
    int successes = 2;
    std::uint64_t modulus = 16;
    std::string jitter;
    double tail_eps = 1e-12;
    std::uint64_t mc_cycles = 0;
    std::uint64_t engine_seed = kDefaultEngineSeed;
    std::uint64_t timer_seed = kDefaultTimerSeed;
};

int cmd_verify_law(const VerifyLawArgs& args) {
    const rpss::RpssConfig cfg(args.array_size, args.successes, args.modulus);
    const rpss::JitterModel jitter = load_jitter(args.jitter);

    const auto by_cf = rpss::mod_residue_t(cfg, jitter);
    const auto by_conv = rpss::exact_t_mod(cfg, jitter, args.tail_eps);
    double max_diff = 0;
    for (std::uint64_t r = 0; r < cfg.modulus; ++r)
        max_diff = std::max(max_diff, std::abs(by_cf.probabilities[r] -
                                               by_conv.probabilities[r]));
    const auto conv = rpss::convergence_report(cfg, &jitter);

    std::cout << "max_abs_difference " << max_diff << "\n"
              << "tail_mass " << by_conv.tail_mass << "\n"
              << "rho_n " << conv.rho_n << "\n"
              << "rho_t " << *conv.rho_t << "\n"
              << "bound_n " << conv.bound_n << "\n"
              << "bound_t " << *conv.bound_t << "\n"
              << "max_deviation_t " << by_cf.max_deviation << "\n";

    if (args.mc_cycles > 0) {
        const auto obs = rpss::simulate_cycles_parallel(
            cfg, jitter, args.mc_cycles, args.engine_seed, args.timer_seed);
        std::vector<std::uint64_t> counts(cfg.modulus, 0);
        for (const auto& o : obs) ++counts[o.t_ticks % cfg.modulus];
        const double n = static_cast<double>(args.mc_cycles);
        std::cout << "residue exact empirical band3s within\n";
        for (std::uint64_t r = 0; r < cfg.modulus; ++r) {
            const double p = by_cf.probabilities[r];
            const double f = static_cast<double>(counts[r]) / n;
            const double band = 3.0 * std::sqrt(p * (1.0 - p) / n);
            std::cout << r << ' ' << p << ' ' << f << ' ' << band << ' '
                      << (std::abs(f - p) <= band ? "yes" : "no") << "\n";
        }
        std::cerr << "monte carlo: cycles=" << args.mc_cycles
                  << " engine-seed=" << args.engine_seed
                  << " timer-seed=" << args.timer_seed << "\n";
    }
    return 0;
}

struct SimulateArgs {
    int array_size = 4;
    int successes = 4;
    std::uint64_t modulus = 16;
    std::uint64_t cycles = 1000;
    std::string jitter;
    std::string out = "-";
    std::string np_hist, t_hist, np_residue_hist, t_residue_hist, tick_hist;
    std::uint64_t cutoff = 500;
    std::uint64_t engine_seed = kDefaultEngineSeed;
    std::uint64_t timer_seed = kDefaultTimerSeed;
    bool serial = false;
};

int cmd_simulate(const SimulateArgs& args) {
    const rpss::RpssConfig cfg(args.array_size, args.successes, args.modulus);
    const rpss::JitterModel jitter = load_jitter(args.jitter);

    std::vector<rpss::CycleObservables> obs;
    std::vector<std::uint64_t> tick_counts;
    std::uint64_t oversized = 0;
    if (!args.tick_hist.empty() || args.serial) {
        // Sequential path; needed when the per-trial tick histogram taps
        // the timer stream.
        obs.resize(args.cycles);
        rpss::Xoshiro256StarStar rng(args.engine_seed);
        rpss::SimulatedTimer inner(jitter, args.timer_seed);
        rpss::TickHistogramTimer timer(inner, args.cutoff);
        for (std::uint64_t i = 0; i < args.cycles; ++i) {
            const rpss::CycleSample s = rpss::run_cycle(cfg, rng, timer);
            obs[i] = {static_cast<std::uint32_t>(s.n_p), s.t_ticks};
        }
        tick_counts = timer.counts();
        oversized = timer.oversized_count();
    } else {
        obs = rpss::simulate_cycles_parallel(cfg, jitter, args.cycles,
                                             args.engine_seed, args.timer_seed);
    }

    std::ostringstream csv;
    csv << "cycle,n_p,t_ticks\n";
    for (std::size_t i = 0; i < obs.size(); ++i)
        csv << i << ',' << obs[i].n_p << ',' << obs[i].t_ticks << "\n";
    if (args.out == "-")
        std::cout << csv.str();
    else
        write_text_file(args.out, csv.str());

    const auto max_of = [&](bool use_time) {
        std::uint64_t mx = 0;
        for (const auto& o : obs)
            mx = std::max<std::uint64_t>(mx, use_time ? o.t_ticks : o.n_p);
        return mx;
    };
    if (!args.np_hist.empty())
        write_text_file(args.np_hist,
                        histogram_csv(rpss::histogram_counts(obs, false, max_of(false) + 1),
                                      "symbol"));
    if (!args.t_hist.empty())
        write_text_file(args.t_hist,
                        histogram_csv(rpss::histogram_counts(obs, true, max_of(true) + 1),
                                      "symbol"));
    if (!args.np_residue_hist.empty()) {
        std::vector<std::uint64_t> counts(cfg.modulus, 0);
        for (const auto& o : obs) ++counts[o.n_p % cfg.modulus];
        write_text_file(args.np_residue_hist, histogram_csv(counts, "symbol"));
    }
    if (!args.t_residue_hist.empty()) {
        std::vector<std::uint64_t> counts(cfg.modulus, 0);
        for (const auto& o : obs) ++counts[o.t_ticks % cfg.modulus];
        write_text_file(args.t_residue_hist, histogram_csv(counts, "symbol"));
    }
    if (!args.tick_hist.empty()) {
        write_text_file(args.tick_hist, histogram_csv(tick_counts, "tick"));
        std::cerr << "oversized trials (> " << args.cutoff
                  << " ticks, excluded from the histogram): " << oversized << "\n";
    }
    std::cerr << "simulated " << args.cycles << " cycle(s), N=" << args.array_size
              << " m=" << args.successes << " R=" << args.modulus
              << " engine-seed=" << args.engine_seed
              << " timer-seed=" << args.timer_seed << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random permutation sorting generator and analysis toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "produce raw random bytes");
    generate->add_option("-N,--array-size", gen.array_size, "array size")->required();
    generate->add_option("-m,--successes", gen.successes, "sorts per cycle")->required();
    generate->add_option("-b,--bits", gen.bits, "residue bits (1,2,4,8)")
        ->default_val(8);
    generate->add_option("-c,--count", gen.count, "bytes to emit")->required();
    generate->add_option("--mode", gen.mode, "sim or real")->default_val("sim");
    generate->add_option("--jitter", gen.jitter, "preset name or JSON file (sim mode)");
    generate->add_option("--engine-seed", gen.engine_seed, "engine rng seed");
    auto* tsopt = generate->add_option("--timer-seed", gen.timer_seed,
                                       "simulated timer seed");
    generate->add_option("--state-seed", gen.state_seed, "reseeding state s0");
    generate->add_flag("--reseed,!--no-reseed", gen.reseed,
                       "feedback reseeding (default on)");
    generate->add_option("--source", gen.source, "counts or time")->default_val("counts");
    generate->add_option("-o,--out", gen.out, "output file, '-' for stdout")
        ->default_val("-");
    generate->add_option("--probe-out", gen.probe_out,
                         "also write the complementary residue stream");
    generate->add_option("--streams", gen.streams, "independent pipelines")
        ->default_val(1);

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "statistics of a raw byte stream");
    analyze->add_option("input", an.input, "input file")->required();
    analyze->add_option("-b,--bits", an.bits, "symbol width in bits")->default_val(8);
    analyze->add_flag("--text", an.text, "human-readable table instead of JSON");
    analyze->add_option("--histogram-csv", an.histogram_path, "write symbol,count CSV");

    PlanArgs pl;
    auto* planc = app.add_subcommand("plan", "enumerate (N, m) parameter candidates");
    planc->add_option("-b,--bits", pl.bits, "residue bits")->default_val(8);
    planc->add_option("--threshold", pl.threshold, "rho^m admission threshold")
        ->default_val(0.01);
    planc->add_option("--max-N", pl.max_n, "largest array size")->default_val(6);
    planc->add_option("--max-m", pl.max_m, "largest success count")->default_val(8);
    planc->add_flag("--csv", pl.csv, "CSV instead of aligned table");
    planc->add_flag("--reference-grid", pl.reference,
                    "recompute the reference grid and diff its published column");

    VerifyLawArgs vl;
    auto* verify = app.add_subcommand(
        "verify-law", "cross-check the composed characteristic function "
                      "against brute-force convolution");
    verify->add_option("-N,--array-size", vl.array_size, "array size")->required();
    verify->add_option("-m,--successes", vl.successes, "sorts per cycle")->required();
    verify->add_option("-R,--modulus", vl.modulus, "reduction modulus")->default_val(16);
    verify->add_option("--jitter", vl.jitter, "preset name or JSON file")->required();
    verify->add_option("--tail-eps", vl.tail_eps, "count-tail truncation")
        ->default_val(1e-12);
    verify->add_option("--mc-cycles", vl.mc_cycles,
                       "also simulate this many cycles (0 = skip)");
    verify->add_option("--engine-seed", vl.engine_seed, "engine rng seed");
    verify->add_option("--timer-seed", vl.timer_seed, "simulated timer seed");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "dump per-cycle observables as CSV");
    simulate->add_option("-N,--array-size", sim.array_size, "array size")->required();
    simulate->add_option("-m,--successes", sim.successes, "sorts per cycle")->required();
    simulate->add_option("-R,--modulus", sim.modulus, "residue modulus")->default_val(16);
    simulate->add_option("--cycles", sim.cycles, "cycles to run")->required();
    simulate->add_option("--jitter", sim.jitter, "preset name or JSON file")->required();
    simulate->add_option("-o,--out", sim.out, "cycles CSV, '-' for stdout")
        ->default_val("-");
    simulate->add_option("--np-hist", sim.np_hist, "trial-count histogram CSV");
    simulate->add_option("--t-hist", sim.t_hist, "elapsed-ticks histogram CSV");
    simulate->add_option("--np-residue-hist", sim.np_residue_hist,
                         "trial-count residue histogram CSV");
    simulate->add_option("--t-residue-hist", sim.t_residue_hist,
                         "elapsed-ticks residue histogram CSV");
    simulate->add_option("--tick-hist", sim.tick_hist,
                         "per-trial tick histogram CSV (forces the sequential path)");
    simulate->add_option("--cutoff", sim.cutoff,
                         "tick histogram oversize cutoff")->default_val(500);
    simulate->add_option("--engine-seed", sim.engine_seed, "engine rng seed");
    simulate->add_option("--timer-seed", sim.timer_seed, "simulated timer seed");
    simulate->add_flag("--serial", sim.serial, "use the serial reference kernel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        gen.timer_seed_set = tsopt->count() > 0;
        if (generate->parsed()) return cmd_generate(gen);
        if (analyze->parsed()) return cmd_analyze(an);
        if (planc->parsed()) return cmd_plan(pl);
        if (verify->parsed()) return cmd_verify_law(vl);
        if (simulate->parsed()) return cmd_simulate(sim);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
