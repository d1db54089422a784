#include "jrc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "jrc/channel.hpp"
#include "jrc/decode_list.hpp"
#include "jrc/decode_seq.hpp"
#include "jrc/received.hpp"
#include "jrc/rng.hpp"

namespace jrc {

int ExperimentConfig::packet_count() const {
    int m = 0;
    for (const auto& g : groups) m += g.count;
    return m;
}

std::vector<double> ExperimentConfig::eps_list() const {
    std::vector<double> eps;
    for (const auto& g : groups) eps.insert(eps.end(), g.count, g.eps);
    return eps;
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
    if (message_bytes < 1) throw std::invalid_argument("ExperimentConfig: message_bytes must be >= 1");
    if (budget_width < 1) throw std::invalid_argument("ExperimentConfig: budget_width must be >= 1");
    if (groups.empty() || packet_count() < 1)
        throw std::invalid_argument("ExperimentConfig: at least one received packet required");
    if (packet_count() > state_width)
        throw std::invalid_argument("ExperimentConfig: more packets than state bits");
    for (const auto& g : groups)
        if (g.count < 0 || !(g.eps >= 0.0 && g.eps <= 0.5))
            throw std::invalid_argument("ExperimentConfig: bad packet group");
}

namespace {

// Per-trial stream layout under the master seed; packets get slots
// [kStreamChannel, kStreamChannel + M).
constexpr std::uint64_t kStreamsPerTrial = 1 << 10;
constexpr std::uint64_t kStreamMessage = 0;
constexpr std::uint64_t kStreamTable = 1;
constexpr std::uint64_t kStreamSubset = 2;
constexpr std::uint64_t kStreamChannel = 16;

TrialRecord run_trial(const ExperimentConfig& cfg, std::uint32_t trial) {
    const std::uint64_t base = static_cast<std::uint64_t>(trial) * kStreamsPerTrial;
    const std::size_t message_bits = cfg.message_bytes * 8;
    const std::size_t steps = (message_bits + cfg.block_bits - 1) / cfg.block_bits;

    CodecParams params;
    params.block_bits = cfg.block_bits;
    params.state_width = cfg.state_width;
    params.steps = steps;
    {
        RngStream table_rng(cfg.seed, base + kStreamTable);
        params.seed = table_rng.next_u64();
    }

    BitSeq message(params.message_bits());
    {
        RngStream msg_rng(cfg.seed, base + kStreamMessage);
        for (std::size_t i = 0; i < message_bits; ++i) message.set(i, msg_rng.next_u64() & 1);
    }

    const TransitionTable table = build_transition_table(params);
    const EncodedPacketSet encoded = encode(message, params, table);

    // Random subset of the state bits, noise levels assigned group by group.
    const int m = cfg.packet_count();
    std::vector<int> positions(cfg.state_width);
    std::iota(positions.begin(), positions.end(), 0);
    {
        RngStream subset_rng(cfg.seed, base + kStreamSubset);
        for (int i = 0; i < m; ++i) {
            const int r = i + static_cast<int>(subset_rng.next_below(cfg.state_width - i));
            std::swap(positions[i], positions[r]);
        }
    }
    positions.resize(m);
    std::sort(positions.begin(), positions.end());
    const PacketIndexSet which{positions};
    const std::vector<double> eps = cfg.eps_list();

    const Received received = make_received(encoded, {which}, {eps}, cfg.seed,
                                            base + kStreamChannel, /*with_final_state=*/true);

    const std::size_t max_nodes = cfg.budget_width * params.total_substeps();
    TrialRecord rec;
    rec.trial = trial;
    if (cfg.decoder == DecoderKind::list) {
        const PartitionTable ptable = build_partition_table(table, {which});
        const auto res = decode_list(received, params, table, ptable,
                                     std::size_t{1} << 20, max_nodes);
        rec.nodes = res.nodes;
        rec.width = res.width;
        rec.censored = res.status == DecodeStatus::budget_exhausted;
        bool found = false;
        for (const auto& msg : res.messages)
            if (msg == message) found = true;
        rec.success = res.status == DecodeStatus::ok && found;
    } else {
        const SortedCandidateTable stable = build_sorted_table(table, {which}, {eps});
        const auto res = decode_sequential(received, params, table, stable, DecodeBudget{max_nodes});
        rec.nodes = res.nodes_expanded;
        rec.width = res.width;
        rec.censored = res.status == DecodeStatus::budget_exhausted;
        rec.success = res.success && res.message == message;
    }
    if (rec.censored) rec.width = static_cast<double>(cfg.budget_width);
    return rec;
}

}  // namespace

ExperimentReport run_width_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    ExperimentReport report;
    report.config = config;
    report.predicted = solve_pareto_c(config.eps_list(), config.block_bits);

    if (report.predicted.regime == ParetoRegime::below_shannon) {
        report.wall_seconds = 0.0;
        return report;
    }

    report.trials.resize(config.trials);
    std::atomic<std::uint32_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::uint32_t t = next.fetch_add(1);
            if (t >= config.trials) return;
            report.trials[t] = run_trial(config, t);
        }
    };
    int nthreads = config.threads;
    if (nthreads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        nthreads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::size_t successes = 0;
    for (const auto& rec : report.trials) {
        report.sorted_widths.push_back(rec.width);
        if (rec.success) ++successes;
        if (rec.censored) ++report.censored;
        report.mean_width += rec.width;
    }
    std::sort(report.sorted_widths.begin(), report.sorted_widths.end());
    report.success_rate = static_cast<double>(successes) / static_cast<double>(config.trials);
    report.mean_width /= static_cast<double>(config.trials);
    report.median_width = report.sorted_widths[report.sorted_widths.size() / 2];
    report.fit = fit_pareto_tail(report.sorted_widths, report.censored);

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

void write_trials_csv(const ExperimentReport& report, std::ostream& os) {
    os << "trial,width,success,nodes,censored\n";
    for (const auto& rec : report.trials)
        os << rec.trial << ',' << rec.width << ',' << (rec.success ? 1 : 0) << ',' << rec.nodes
           << ',' << (rec.censored ? 1 : 0) << '\n';
}

UnlSummary run_unl_study(std::size_t samples, bool full_table, std::uint64_t seed, int threads) {
    UnlSummary s;
    s.samples = samples;
    s.mean_rate = unl_mean_rate();
    s.mean_rate_quadrature = unl_mean_rate_quadrature();
    s.sigma = unl_sigma();
    s.sigma_quadrature = unl_sigma_quadrature();
    s.fcfec = unl_fcfec_optimum();

    const auto pr2 = unl_pr_curve(2, 16, samples, seed, threads);
    for (int m = 3; m <= 16; ++m) s.pr_n2.push_back(pr2[m]);

    std::vector<int> rows{1, 2, 3};
    if (full_table) rows = {1, 2, 3, 4, 10, 100};
    for (int n : rows) {
        // The wide scans of large N get fewer samples to stay desk-scale.
        std::size_t budget = samples;
        if (n >= 10) budget = std::min<std::size_t>(samples, 200000);
        s.fcjrc.push_back({n, unl_fcjrc_optimize(n, budget, seed + n, threads)});
    }
    return s;
}

}  // namespace jrc
