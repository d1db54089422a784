#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jrc/analysis.hpp"
#include "jrc/codec.hpp"

namespace jrc {

// A group of packets sharing one noise level.
struct PacketGroup {
    int count = 0;
    double eps = 0.0;
};

enum class DecoderKind { list, seq };

struct ExperimentConfig {
    std::string name = "experiment";
    int block_bits = 8;               // N
    int state_width = 64;
    std::size_t message_bytes = 1000;
    std::size_t trials = 1000;        // CI profile: 100
    std::size_t budget_width = 256;   // node budget per encoding substep
    std::uint64_t seed = 1;
    DecoderKind decoder = DecoderKind::seq;
    std::vector<PacketGroup> groups;  // received packets per trial
    int threads = 0;                  // 0: hardware concurrency

    int packet_count() const;
    std::vector<double> eps_list() const;
    void validate() const;
};

struct TrialRecord {
    std::uint32_t trial = 0;
    double width = 0.0;
    bool success = false;
    std::uint64_t nodes = 0;
    bool censored = false;  // hit the node budget; width recorded at the cap
};

struct ExperimentReport {
    ExperimentConfig config;
    ParetoResult predicted;            // solve_pareto_c for the configured profile
    std::vector<TrialRecord> trials;   // ordered by trial id
    std::vector<double> sorted_widths; // ascending; censored values sit at the cap
    std::size_t censored = 0;
    double success_rate = 0.0;
    double mean_width = 0.0;
    double median_width = 0.0;
    ParetoFit fit;
    double wall_seconds = 0.0;
};

// Runs the configured trials (parallel, deterministically seeded per trial):
// random message, fresh random table, random packet subset, channel noise,
// decode, width bookkeeping. A below-Shannon profile yields an empty report
// carrying the regime flag.
ExperimentReport run_width_experiment(const ExperimentConfig& config);

// One row per trial: trial id, width, success, nodes, censored.
void write_trials_csv(const ExperimentReport& report, std::ostream& os);

// Summary of the unknown-noise-level study.
struct UnlSummary {
    double mean_rate = 0.0;            // closed form
    double mean_rate_quadrature = 0.0;
    double sigma = 0.0;
    double sigma_quadrature = 0.0;
    FcFecOptimum fcfec;
    std::vector<double> pr_n2;         // p_r(N=2, M) for M = 3..16
    struct Row {
        int n = 0;
        FcJrcOptimum optimum;
    };
    std::vector<Row> fcjrc;            // N in {1,2,3} (+ {4,10,100} when full)
    std::size_t samples = 0;
};

UnlSummary run_unl_study(std::size_t samples, bool full_table, std::uint64_t seed, int threads = 0);

}  // namespace jrc
