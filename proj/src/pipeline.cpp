#include "rpss/pipeline.hpp"

namespace rpss {

Residues reduce(const CycleSample& sample, std::uint64_t modulus) {
    if (modulus < 2) throw std::invalid_argument("reduction modulus must be at least 2");
    return {sample.n_p % modulus, sample.t_ticks % modulus};
}

ByteAssembler::ByteAssembler(int bits) : bits_(bits) {
    if (bits != 1 && bits != 2 && bits != 4 && bits != 8)
        throw std::invalid_argument("residue width must be 1, 2, 4 or 8 bits");
}

std::optional<std::uint8_t> ByteAssembler::push(std::uint64_t residue) {
    acc_ = (acc_ << bits_) | static_cast<unsigned>(residue & ((1u << bits_) - 1u));
    filled_ += bits_;
    if (filled_ == 8) {
        filled_ = 0;
        const auto byte = static_cast<std::uint8_t>(acc_);
        acc_ = 0;
        return byte;
    }
    return std::nullopt;
}

std::vector<std::uint8_t> assemble_bytes(std::span<const std::uint64_t> residues,
                                         int bits) {
    ByteAssembler assembler(bits);
    std::vector<std::uint8_t> out;
    out.reserve(residues.size() * static_cast<std::size_t>(bits) / 8);
    for (std::uint64_t r : residues)
        if (auto byte = assembler.push(r)) out.push_back(*byte);
    return out;
}

Pipeline::Pipeline(const RpssConfig& cfg, EngineRng& engine, TimerSource& timer,
                   std::uint64_t seed0, PipelineOptions options)
    : cfg_(cfg), engine_(engine), timer_(timer), seed_(seed0), options_(options) {
    if (!cfg.byte_assembly_ready())
        throw std::invalid_argument(
            "pipeline requires a power-of-two modulus of 2, 4, 16 or 256");
}

void Pipeline::run_one_cycle(std::uint64_t& n_res, std::uint64_t& t_res) {
    const CycleSample sample =
        run_cycle(cfg_, engine_, timer_, nullptr, options_.trial_guard);
    const Residues res = reduce(sample, cfg_.modulus);
    n_res = res.n_residue;
    t_res = res.t_residue;
    if (options_.reseed_enabled) {
        seed_ = reseed(seed_, sample.t_ticks);
        engine_.set_seed(seed_);
    }
    ++cycle_index_;
}

std::vector<std::uint8_t> Pipeline::generate(std::size_t byte_count) {
    std::vector<std::uint8_t> out;
    out.reserve(byte_count);
    ByteAssembler assembler(cfg_.output_bits());
    while (out.size() < byte_count) {
        std::uint64_t n_res = 0, t_res = 0;
        run_one_cycle(n_res, t_res);
        const std::uint64_t selected =
            options_.source == SourceSelect::counts ? n_res : t_res;
        if (auto byte = assembler.push(selected)) out.push_back(*byte);
    }
    return out;
}

Pipeline::DualOutput Pipeline::generate_with_probe(std::size_t byte_count) {
    DualOutput out;
    out.primary.reserve(byte_count);
    out.probe.reserve(byte_count);
    ByteAssembler primary_assembler(cfg_.output_bits());
    ByteAssembler probe_assembler(cfg_.output_bits());
    while (out.primary.size() < byte_count) {
        std::uint64_t n_res = 0, t_res = 0;
        run_one_cycle(n_res, t_res);
        const bool counts_first = options_.source == SourceSelect::counts;
        if (auto byte = primary_assembler.push(counts_first ? n_res : t_res))
            out.primary.push_back(*byte);
        if (auto byte = probe_assembler.push(counts_first ? t_res : n_res))
            out.probe.push_back(*byte);
    }
    return out;
}

} // namespace rpss
