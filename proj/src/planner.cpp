#include "rpss/planner.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "rpss/analytics.hpp"
#include "rpss/config.hpp"

namespace rpss {

std::vector<PlanRow> plan(int bits, double threshold, int max_n, int max_m) {
    if (bits != 1 && bits != 2 && bits != 4 && bits != 8)
        throw std::invalid_argument("bit width must be 1, 2, 4 or 8");
    if (!(threshold > 0.0) || threshold > 1.0)
        throw std::invalid_argument("threshold must lie in (0, 1]");

    const std::uint64_t modulus = 1ULL << bits;
    std::vector<PlanRow> rows;
    std::map<int, int> minimal_m_for;  // N -> smallest admissible m

    for (int n = 2; n <= max_n; ++n) {
        const RpssConfig probe(n, 1, modulus);
        const double rho = convergence_report(probe).rho_n;
        for (int m = 1; m <= max_m; ++m) {
            const double rho_pow = std::pow(rho, m);
            if (rho_pow >= threshold) continue;
            const RpssConfig cfg(n, m, modulus);
            PlanRow row;
            row.bits = bits;
            row.modulus = modulus;
            row.array_size = n;
            row.success_count = m;
            row.factorial = cfg.factorial;
            row.expected_trials = cfg.expected_trials();
            row.rho_n = rho;
            row.rho_n_pow_m = rho_pow;
            row.bound = (static_cast<double>(modulus) - 1.0) /
                        static_cast<double>(modulus) * rho_pow;
            row.cycle_cost = cfg.cycle_cost();
            row.byte_cost = cfg.byte_cost();
            row.minimal_m = false;
            if (!minimal_m_for.contains(n)) minimal_m_for[n] = m;
            rows.push_back(row);
        }
    }
    for (auto& row : rows)
        row.minimal_m = minimal_m_for.at(row.array_size) == row.success_count;
    std::stable_sort(rows.begin(), rows.end(), [](const PlanRow& a, const PlanRow& b) {
        return a.byte_cost < b.byte_cost;
    });
    return rows;
}

std::span<const ReferenceParamRow> reference_parameter_grid() {
    static const ReferenceParamRow grid[] = {
        {1, 2, 2, 12, 2, 24, 0.0003},
        {1, 2, 3, 3, 6, 18, 0.010},
        {2, 4, 3, 5, 6, 30, 0.004},
        {2, 4, 4, 2, 24, 48, 0.010},
        {4, 16, 4, 4, 24, 96, 0.001},
        {4, 16, 5, 2, 120, 240, 0.006},
        {8, 256, 5, 5, 120, 600, 0.001},
    };
    return grid;
}

std::vector<ReferenceComparisonRow> reference_grid_comparison() {
    std::vector<ReferenceComparisonRow> out;
    for (const auto& ref : reference_parameter_grid()) {
        const RpssConfig cfg(ref.array_size, ref.success_count, ref.modulus);
        const ConvergenceReport rep = convergence_report(cfg);
        ReferenceComparisonRow row;
        row.ref = ref;
        row.computed_rho_n = rep.rho_n;
        row.computed_rho_pow_m = std::pow(rep.rho_n, ref.success_count);
        row.diff = row.computed_rho_pow_m - ref.published_rho_pow_m;
        row.bound = rep.bound_n;
        row.exact_max_deviation = mod_residue_np(cfg).max_deviation;
        out.push_back(row);
    }
    return out;
}

std::string to_text(std::span<const PlanRow> rows) {
    std::ostringstream os;
    os << std::setw(3) << "n" << std::setw(6) << "R" << std::setw(4) << "N"
       << std::setw(4) << "m" << std::setw(10) << "N!" << std::setw(10) << "M"
       << std::setw(12) << "rho_N^m" << std::setw(12) << "bound" << std::setw(12)
       << "C_cycle" << std::setw(12) << "C_byte" << std::setw(7) << "min_m" << "\n";
    for (const auto& r : rows) {
        os << std::setw(3) << r.bits << std::setw(6) << r.modulus << std::setw(4)
           << r.array_size << std::setw(4) << r.success_count << std::setw(10)
           << r.factorial << std::setw(10) << r.expected_trials << std::scientific
           << std::setprecision(3) << std::setw(12) << r.rho_n_pow_m << std::setw(12)
           << r.bound << std::defaultfloat << std::setw(12) << r.cycle_cost
           << std::setw(12) << r.byte_cost << std::setw(7) << (r.minimal_m ? "*" : "")
           << "\n";
    }
    return os.str();
}

std::string to_csv(std::span<const PlanRow> rows) {
    std::ostringstream os;
    os << "n,R,N,m,factorial,M,rho_n,rho_n_pow_m,bound,C_cycle,C_byte,minimal_m\n";
    os << std::setprecision(17);
    for (const auto& r : rows)
        os << r.bits << ',' << r.modulus << ',' << r.array_size << ',' << r.success_count
           << ',' << r.factorial << ',' << r.expected_trials << ',' << r.rho_n << ','
           << r.rho_n_pow_m << ',' << r.bound << ',' << r.cycle_cost << ',' << r.byte_cost
           << ',' << (r.minimal_m ? 1 : 0) << "\n";
    return os.str();
}

std::string to_text(std::span<const ReferenceComparisonRow> rows) {
    std::ostringstream os;
    os << "reference grid vs recomputed geometric factors (informational)\n";
    os << std::setw(3) << "n" << std::setw(6) << "R" << std::setw(4) << "N"
       << std::setw(4) << "m" << std::setw(10) << "M" << std::setw(12) << "published"
       << std::setw(12) << "computed" << std::setw(12) << "diff" << std::setw(12)
       << "bound" << std::setw(12) << "max_dev" << "\n";
    for (const auto& r : rows) {
        os << std::setw(3) << r.ref.bits << std::setw(6) << r.ref.modulus << std::setw(4)
           << r.ref.array_size << std::setw(4) << r.ref.success_count << std::setw(10)
           << r.ref.expected_trials << std::scientific << std::setprecision(3)
           << std::setw(12) << r.ref.published_rho_pow_m << std::setw(12)
           << r.computed_rho_pow_m << std::setw(12) << r.diff << std::setw(12) << r.bound
           << std::setw(12) << r.exact_max_deviation << std::defaultfloat << "\n";
    }
    return os.str();
}

std::string to_csv(std::span<const ReferenceComparisonRow> rows) {
    std::ostringstream os;
    os << "n,R,N,m,M,published_rho_pow_m,computed_rho_pow_m,diff,bound,exact_max_deviation\n";
    os << std::setprecision(17);
    for (const auto& r : rows)
        os << r.ref.bits << ',' << r.ref.modulus << ',' << r.ref.array_size << ','
           << r.ref.success_count << ',' << r.ref.expected_trials << ','
           << r.ref.published_rho_pow_m << ',' << r.computed_rho_pow_m << ',' << r.diff
           << ',' << r.bound << ',' << r.exact_max_deviation << "\n";
    return os.str();
}

} // namespace rpss
