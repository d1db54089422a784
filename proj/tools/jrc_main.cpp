// Command line front end: encode/corrupt/decode packet files, run the
// analysis calculators and the experiment harness.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jrc/analysis.hpp"
#include "jrc/channel.hpp"
#include "jrc/codec.hpp"
#include "jrc/container.hpp"
#include "jrc/decode_list.hpp"
#include "jrc/decode_seq.hpp"
#include "jrc/harness.hpp"
#include "jrc/received.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitError = 1;
constexpr int kExitBudget = 2;
constexpr int kExitBelowShannon = 3;

std::vector<int> parse_int_list(const std::string& arg) {
    std::vector<int> out;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& arg) {
    std::vector<double> out;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path);
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> bits_to_bytes(const jrc::BitSeq& bits, std::uint64_t bit_count) {
    jrc::BitSeq out(static_cast<std::size_t>(bit_count));
    for (std::uint64_t i = 0; i < bit_count && i < bits.size(); ++i)
        out.set(static_cast<std::size_t>(i), bits.get(static_cast<std::size_t>(i)));
    return out.bytes();
}

// ---------------------------------------------------------------- encode ---

struct EncodeArgs {
    std::string in;
    std::string out_dir;
    int n = 8;
    int state_width = 64;
    int phases = 1;
    std::uint64_t seed = 0;
    int packets = 0;
    std::string which;
    std::string permutation_subset;
    bool no_final_state = false;
    bool omit_seed = false;
};

int run_encode(const EncodeArgs& args) {
    const auto bytes = read_file_bytes(args.in);
    const std::uint64_t message_bits = static_cast<std::uint64_t>(bytes.size()) * 8;

    jrc::CodecParams params;
    params.block_bits = args.n;
    params.state_width = args.state_width;
    params.phases = args.phases;
    params.seed = args.seed;
    params.steps = jrc::padded_steps(message_bits, args.n);
    params.validate();

    std::vector<int> ids;
    if (!args.which.empty())
        ids = parse_int_list(args.which);
    else
        for (int i = 0; i < args.packets; ++i) ids.push_back(i);
    if (ids.empty()) throw std::runtime_error("encode: no packet ids selected");
    const jrc::PacketIndexSet which{ids};

    std::optional<jrc::PacketIndexSet> perm;
    jrc::TableMode mode = jrc::TableMode::random;
    if (!args.permutation_subset.empty()) {
        perm = jrc::PacketIndexSet{parse_int_list(args.permutation_subset)};
        mode = jrc::TableMode::permutation;
    }
    const auto table = jrc::build_transition_table(params, mode, perm ? &*perm : nullptr);

    // Zero-pad the message to a whole number of blocks; the true bit length
    // travels in every header.
    jrc::BitSeq message(params.message_bits());
    {
        const jrc::BitSeq raw = jrc::BitSeq::from_bytes(bytes, message_bits);
        for (std::uint64_t i = 0; i < message_bits; ++i)
            message.set(static_cast<std::size_t>(i), raw.get(static_cast<std::size_t>(i)));
    }
    const auto encoded = jrc::encode(message, params, table);

    fs::create_directories(args.out_dir);
    std::uint8_t flags = 0;
    if (!args.no_final_state) flags |= jrc::kFlagFinalState;
    if (args.omit_seed) flags |= jrc::kFlagSeedOmitted;
    if (mode == jrc::TableMode::permutation) flags |= jrc::kFlagPermutationTable;

    std::vector<jrc::ManifestEntry> manifest;
    for (int s = 0; s < params.phases; ++s) {
        for (int id : ids) {
            jrc::PacketFile p;
            p.header.flags = flags;
            p.header.block_bits = static_cast<std::uint8_t>(params.block_bits);
            p.header.state_width = static_cast<std::uint8_t>(params.state_width);
            p.header.phases = static_cast<std::uint8_t>(params.phases);
            p.header.phase = static_cast<std::uint8_t>(s);
            p.header.packet_id = static_cast<std::uint8_t>(id);
            p.header.seed = args.omit_seed ? 0 : params.seed;
            p.header.steps = static_cast<std::uint32_t>(params.steps);
            p.header.message_bits = message_bits;
            p.header.final_state = encoded.final_state.value;
            p.payload = encoded.packets[s][id];

            char name[32];
            std::snprintf(name, sizeof name, "packet_s%d_%02d.jrc", s, id);
            const auto path = (fs::path(args.out_dir) / name).string();
            jrc::write_packet_file(path, p);
            manifest.push_back({name, 0.0});
        }
    }
    jrc::write_manifest((fs::path(args.out_dir) / "manifest.txt").string(), manifest);

    std::printf("packets: %zu\nsteps: %zu\nfinal_state: %016llx\n", manifest.size(), params.steps,
                static_cast<unsigned long long>(encoded.final_state.value));
    return 0;
}

// --------------------------------------------------------------- corrupt ---

int run_corrupt(const std::string& in, const std::string& out, double eps, std::uint64_t seed) {
    auto packet = jrc::read_packet_file(in);
    // Independent stream per (phase, id) so one seed covers a whole packet group.
    jrc::RngStream rng(seed, (static_cast<std::uint64_t>(packet.header.phase) << 8) |
                                 packet.header.packet_id);
    packet.payload = jrc::apply_bsc(packet.payload, eps, rng);
    jrc::write_packet_file(out, packet);
    return 0;
}

// ---------------------------------------------------------------- decode ---

struct DecodeArgs {
    std::string manifest;
    std::string out;
    std::string mode = "auto";
    std::uint64_t budget = 0;  // 0: default 256 per substep
    bool require_final_state = false;
    std::optional<std::uint64_t> seed;
    std::string permutation_subset;
};

int run_decode(const DecodeArgs& args) {
    const auto entries = jrc::read_manifest(args.manifest);
    auto loaded = jrc::load_packets(entries, args.seed);
    auto& received = loaded.received;
    const auto& params = loaded.params;

    if (args.require_final_state && !received.final_state) {
        std::fprintf(stderr, "decode: packets carry no final state\n");
        return kExitError;
    }

    jrc::TableMode mode = jrc::TableMode::random;
    std::optional<jrc::PacketIndexSet> perm;
    if (loaded.header.permutation_table() || !args.permutation_subset.empty()) {
        if (args.permutation_subset.empty()) {
            std::fprintf(stderr,
                         "decode: packets were encoded with a permutation table; pass "
                         "--permutation-subset\n");
            return kExitError;
        }
        perm = jrc::PacketIndexSet{parse_int_list(args.permutation_subset)};
        mode = jrc::TableMode::permutation;
    }
    const auto table = jrc::build_transition_table(params, mode, perm ? &*perm : nullptr);

    const auto eps = received.flat_eps();
    bool all_clean = true;
    for (double e : eps) all_clean &= e == 0.0;

    // Feasibility gate: refuse scenarios below the Shannon bound.
    const auto regime = jrc::solve_pareto_c(eps, params.block_bits);
    if (regime.regime == jrc::ParetoRegime::below_shannon) {
        double have = 0.0;
        for (double e : eps) have += jrc::rate(0, e);
        std::fprintf(stderr,
                     "decode: not enough information: %.4f bits/step received, %d required "
                     "(missing %.4f); wait for more packets\n",
                     have, params.block_bits, params.block_bits - have);
        return kExitBelowShannon;
    }

    std::vector<jrc::PacketIndexSet> which;
    for (const auto& p : received.phases) which.push_back(p.which);

    std::string mode_used = args.mode;
    const std::size_t total = params.total_substeps();
    const std::uint64_t budget = args.budget ? args.budget : 256ull * std::max<std::size_t>(total, 1);

    auto emit_message = [&](const jrc::BitSeq& message) {
        write_file_bytes(args.out, bits_to_bytes(message, loaded.header.message_bits));
    };

    if (args.mode == "auto") {
        if (all_clean) {
            const auto ptable = jrc::build_partition_table(table, which);
            mode_used = ptable.injective() ? "straightforward" : "list";
        } else {
            mode_used = "seq";
        }
    }

    if (mode_used == "straightforward" || mode_used == "list") {
        if (!all_clean)
            std::fprintf(stderr, "decode: warning: %s mode ignores nonzero eps\n", mode_used.c_str());
        const auto ptable = jrc::build_partition_table(table, which);
        if (mode_used == "straightforward") {
            const auto res = jrc::decode_straightforward(received, params, table, ptable);
            if (res.status == jrc::DecodeStatus::ok) {
                emit_message(res.message);
                std::printf("mode: straightforward\nsteps: %zu\n", res.position);
                return 0;
            }
            if (res.status == jrc::DecodeStatus::ambiguous && args.mode == "auto") {
                mode_used = "list";  // fall through below
            } else {
                std::fprintf(stderr, "decode: straightforward failed at substep %zu (%s)\n",
                             res.position,
                             res.status == jrc::DecodeStatus::ambiguous ? "ambiguous" : "inconsistent");
                return kExitError;
            }
        }
        if (mode_used == "list") {
            const auto res = jrc::decode_list(received, params, table, ptable,
                                              std::size_t{1} << 20, budget);
            if (res.status == jrc::DecodeStatus::budget_exhausted) {
                std::fprintf(stderr, "decode: list budget exhausted at substep %zu\n", res.position);
                return kExitBudget;
            }
            if (res.status != jrc::DecodeStatus::ok || res.messages.empty()) {
                std::fprintf(stderr, "decode: list decoding failed at substep %zu\n", res.position);
                return kExitError;
            }
            if (res.messages.size() > 1)
                std::fprintf(stderr, "decode: warning: ambiguous output (%zu candidates)\n",
                             res.messages.size());
            emit_message(res.messages.front());
            std::printf("mode: list\nwidth: %.4f\n", res.width);
            return 0;
        }
    }

    // Sequential decoding for the general damaged case.
    std::vector<std::vector<double>> eps_per_phase;
    for (const auto& p : received.phases)
        eps_per_phase.push_back(p.eps.empty() ? std::vector<double>(p.packet_count(), 0.0) : p.eps);
    const auto stable = jrc::build_sorted_table(table, which, eps_per_phase);
    const auto res =
        jrc::decode_sequential(received, params, table, stable, jrc::DecodeBudget{budget});
    if (res.success) {
        emit_message(res.message);
        std::printf("mode: seq\nwidth: %.4f\nnodes: %zu\n", res.width, res.nodes_expanded);
        return 0;
    }
    if (res.status == jrc::DecodeStatus::budget_exhausted) {
        // Partial prefix: best effort output plus the position reached.
        write_file_bytes(args.out, bits_to_bytes(res.message, res.message.size()));
        std::fprintf(stderr,
                     "decode: budget exhausted after %zu nodes; prefix of %zu substeps (%zu bits) "
                     "written\n",
                     res.nodes_expanded, res.deepest_position, res.message.size());
        return kExitBudget;
    }
    std::fprintf(stderr, "decode: search exhausted without reaching the end (deepest substep %zu)\n",
                 res.deepest_position);
    return kExitError;
}

// --------------------------------------------------------------- analyze ---

json pareto_json(const jrc::ParetoResult& res) {
    json j;
    switch (res.regime) {
        case jrc::ParetoRegime::below_shannon: j["regime"] = "below_shannon"; break;
        case jrc::ParetoRegime::undamaged_surplus: j["regime"] = "undamaged_surplus"; break;
        case jrc::ParetoRegime::finite:
            j["regime"] = "finite";
            j["c"] = res.c;
            break;
    }
    return j;
}

json unl_json(const jrc::UnlSummary& s) {
    json j;
    j["samples"] = s.samples;
    j["mean_rate"] = s.mean_rate;
    j["mean_rate_quadrature"] = s.mean_rate_quadrature;
    j["sigma"] = s.sigma;
    j["sigma_quadrature"] = s.sigma_quadrature;
    j["fcfec"] = {{"eps", s.fcfec.eps_bar}, {"rate", s.fcfec.rate}};
    j["pr_n2_m3_to_16"] = s.pr_n2;
    json rows = json::array();
    for (const auto& row : s.fcjrc)
        rows.push_back({{"N", row.n},
                        {"M", row.optimum.m},
                        {"p_r", row.optimum.p_r},
                        {"rate", row.optimum.rate}});
    j["fcjrc"] = rows;
    return j;
}

// ------------------------------------------------------------ experiment ---

jrc::ExperimentConfig config_from_json(const json& j) {
    jrc::ExperimentConfig cfg;
    cfg.name = j.value("name", std::string("experiment"));
    cfg.block_bits = j.value("N", 8);
    cfg.state_width = j.value("state_width", 64);
    cfg.message_bytes = j.value("message_bytes", std::size_t{1000});
    cfg.trials = j.value("trials", std::size_t{1000});
    cfg.budget_width = j.value("budget_width", std::size_t{256});
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.threads = j.value("threads", 0);
    const std::string dec = j.value("decoder", std::string("seq"));
    if (dec == "list")
        cfg.decoder = jrc::DecoderKind::list;
    else if (dec == "seq")
        cfg.decoder = jrc::DecoderKind::seq;
    else
        throw std::runtime_error("experiment config: decoder must be list or seq");
    if (!j.contains("groups") || !j["groups"].is_array() || j["groups"].empty())
        throw std::runtime_error("experiment config: groups array required");
    for (const auto& g : j["groups"])
        cfg.groups.push_back({g.at("count").get<int>(), g.at("eps").get<double>()});
    return cfg;
}

json config_to_json(const jrc::ExperimentConfig& cfg) {
    json groups = json::array();
    for (const auto& g : cfg.groups) groups.push_back({{"count", g.count}, {"eps", g.eps}});
    return json{{"name", cfg.name},
                {"N", cfg.block_bits},
                {"state_width", cfg.state_width},
                {"message_bytes", cfg.message_bytes},
                {"trials", cfg.trials},
                {"budget_width", cfg.budget_width},
                {"seed", cfg.seed},
                {"decoder", cfg.decoder == jrc::DecoderKind::list ? "list" : "seq"},
                {"groups", groups}};
}

jrc::ExperimentConfig preset_config(const std::string& preset, int n, int d) {
    jrc::ExperimentConfig cfg;
    cfg.decoder = jrc::DecoderKind::seq;
    if (preset == "fig4") {
        cfg.name = "fig4-n" + std::to_string(n);
        cfg.block_bits = n;
        cfg.groups = {{n + 1, 0.0}};
    } else if (preset == "fig5") {
        cfg.name = "fig5-n" + std::to_string(n);
        cfg.block_bits = n;
        cfg.budget_width = 512;
        cfg.groups = {{n - 1, 0.0}, {1, 0.05}, {1, 0.04}};
    } else if (preset == "fig6") {
        cfg.name = "fig6-d" + std::to_string(d);
        cfg.block_bits = 3;
        cfg.budget_width = 256;
        cfg.groups = {{2, 0.0}, {d, 0.2}};
    } else {
        throw std::runtime_error("unknown preset " + preset);
    }
    return cfg;
}

int run_experiment_cmd(const jrc::ExperimentConfig& cfg, const std::string& out_dir) {
    const auto report = jrc::run_width_experiment(cfg);
    fs::create_directories(out_dir);
    {
        std::ofstream os(fs::path(out_dir) / "widths.csv");
        jrc::write_trials_csv(report, os);
    }
    json j;
    j["config"] = config_to_json(report.config);
    j["predicted"] = pareto_json(report.predicted);
    j["success_rate"] = report.success_rate;
    j["mean_width"] = report.mean_width;
    j["median_width"] = report.median_width;
    j["censored"] = report.censored;
    if (report.fit.defined) {
        j["fit"] = {{"c_hat", report.fit.c_hat}, {"c_p", report.fit.c_p},
                    {"points", report.fit.points}};
    } else {
        j["fit"] = nullptr;
    }
    j["timing"] = {{"wall_seconds", report.wall_seconds}};
    std::ofstream os(fs::path(out_dir) / "summary.json");
    os << j.dump(2) << '\n';
    std::printf("%s\n", j.dump(2).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint reconstruction codes toolkit"};
    app.require_subcommand(1);

    // encode
    EncodeArgs enc;
    auto* cmd_encode = app.add_subcommand("encode", "encode a file into packets");
    cmd_encode->add_option("--in", enc.in, "input file")->required();
    cmd_encode->add_option("--N", enc.n, "message bits per step");
    cmd_encode->add_option("--state-width", enc.state_width, "state width W_s (4..64)");
    cmd_encode->add_option("--phases", enc.phases, "interleaving phases S");
    cmd_encode->add_option("--seed", enc.seed, "table seed")->required();
    cmd_encode->add_option("--packets", enc.packets, "emit packet ids 0..k-1 (per phase)");
    cmd_encode->add_option("--which", enc.which, "comma list of packet ids (per phase)");
    cmd_encode->add_option("--permutation-subset", enc.permutation_subset,
                           "bit positions getting a permutation table");
    cmd_encode->add_flag("--no-final-state", enc.no_final_state, "omit final state from headers");
    cmd_encode->add_flag("--omit-seed", enc.omit_seed,
                         "zero the seed field; decode needs --seed out of band");
    cmd_encode->add_option("--out", enc.out_dir, "output directory")->required();

    // corrupt
    std::string cor_in, cor_out;
    double cor_eps = 0.0;
    std::uint64_t cor_seed = 0;
    auto* cmd_corrupt = app.add_subcommand("corrupt", "pass a packet payload through a BSC");
    cmd_corrupt->add_option("--in", cor_in)->required();
    cmd_corrupt->add_option("--eps", cor_eps, "bit flip probability in [0, 0.5]")->required();
    cmd_corrupt->add_option("--seed", cor_seed)->required();
    cmd_corrupt->add_option("--out", cor_out)->required();

    // decode
    DecodeArgs dec;
    std::uint64_t dec_seed = 0;
    bool dec_seed_set = false;
    auto* cmd_decode = app.add_subcommand("decode", "reconstruct a message from packets");
    cmd_decode->add_option("--manifest", dec.manifest, "packet list with per-packet eps")->required();
    cmd_decode->add_option("--mode", dec.mode, "auto|straightforward|list|seq")
        ->check(CLI::IsMember({"auto", "straightforward", "list", "seq"}));
    cmd_decode->add_option("--budget", dec.budget, "node budget (default 256 per substep)");
    cmd_decode->add_flag("--require-final-state", dec.require_final_state);
    cmd_decode->add_option("--seed", dec_seed, "table seed override")->each([&](const std::string&) {
        dec_seed_set = true;
    });
    cmd_decode->add_option("--permutation-subset", dec.permutation_subset);
    cmd_decode->add_option("--out", dec.out, "output file")->required();

    // analyze
    auto* cmd_analyze = app.add_subcommand("analyze", "closed-form and numeric calculators");
    cmd_analyze->require_subcommand(1);

    double an_c = 0.0, an_eps = 0.0;
    auto* an_rate = cmd_analyze->add_subcommand("rate", "R_c(eps)");
    an_rate->add_option("--c", an_c)->required();
    an_rate->add_option("--eps", an_eps)->required();

    int an_n = 0, an_m = 0;
    std::string an_eps_list;
    auto* an_pareto = cmd_analyze->add_subcommand("pareto", "Pareto coefficient for a noise profile");
    an_pareto->add_option("--N", an_n)->required();
    an_pareto->add_option("--eps", an_eps_list, "comma list of per-packet eps")->required();

    int sf_n = 0, sf_m = 0;
    auto* an_sf = cmd_analyze->add_subcommand("straightforward", "probability of unique decoding");
    an_sf->add_option("--N", sf_n)->required();
    an_sf->add_option("--M", sf_m)->required();

    int st_n = 0, st_m = 0, st_states = 64;
    bool st_exact = false;
    auto* an_st = cmd_analyze->add_subcommand("stationary", "stationary width distribution");
    an_st->add_option("--N", st_n)->required();
    an_st->add_option("--M", st_m)->required();
    an_st->add_flag("--exact", st_exact, "finite-size transition matrix (default asymptotic)");
    an_st->add_option("--states", st_states);

    std::size_t unl_samples = 1000000;
    bool unl_full = false;
    std::uint64_t unl_seed = 1;
    auto* an_unl = cmd_analyze->add_subcommand("unl", "unknown noise level study");
    an_unl->add_option("--samples", unl_samples);
    an_unl->add_flag("--full", unl_full, "include the N=4,10,100 rows");
    an_unl->add_option("--seed", unl_seed);

    // experiment
    std::string exp_config, exp_preset, exp_out = "experiment_out";
    int exp_n = 8, exp_d = 9, exp_threads = 0;
    std::size_t exp_trials = 0;
    std::size_t exp_budget_width = 0;
    std::uint64_t exp_seed = 0;
    bool exp_ci = false;
    bool exp_seed_set = false;
    auto* cmd_exp = app.add_subcommand("experiment", "randomized width experiments");
    cmd_exp->add_option("--config", exp_config, "JSON config file");
    cmd_exp->add_option("--preset", exp_preset, "fig4|fig5|fig6")
        ->check(CLI::IsMember({"fig4", "fig5", "fig6"}));
    cmd_exp->add_option("--N", exp_n, "block bits for fig4/fig5 presets");
    cmd_exp->add_option("--d", exp_d, "damaged packet count for the fig6 preset");
    cmd_exp->add_option("--trials", exp_trials);
    cmd_exp->add_option("--budget-width", exp_budget_width);
    cmd_exp->add_option("--seed", exp_seed)->each([&](const std::string&) { exp_seed_set = true; });
    cmd_exp->add_option("--threads", exp_threads);
    cmd_exp->add_flag("--ci", exp_ci, "quick profile: 100 trials");
    cmd_exp->add_option("--out", exp_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_encode) return run_encode(enc);
        if (*cmd_corrupt) return run_corrupt(cor_in, cor_out, cor_eps, cor_seed);
        if (*cmd_decode) {
            if (dec_seed_set) dec.seed = dec_seed;
            return run_decode(dec);
        }
        if (*cmd_analyze) {
            json j;
            if (*an_rate) {
                j = {{"c", an_c}, {"eps", an_eps}, {"rate", jrc::rate(an_c, an_eps)}};
            } else if (*an_pareto) {
                j = pareto_json(jrc::solve_pareto_c(parse_double_list(an_eps_list), an_n));
                j["N"] = an_n;
            } else if (*an_sf) {
                j = {{"N", sf_n},
                     {"M", sf_m},
                     {"probability", jrc::straightforward_prob(sf_n, sf_m)},
                     {"log2_probability", jrc::straightforward_log2_prob(sf_n, sf_m)}};
            } else if (*an_st) {
                const auto dist = jrc::stationary_width_dist(
                    st_n, st_m, st_exact ? jrc::StationaryMode::exact : jrc::StationaryMode::asymptotic,
                    st_states);
                std::vector<double> head(dist.p.begin(),
                                         dist.p.begin() + std::min<std::size_t>(dist.p.size(), 16));
                j = {{"N", st_n},          {"M", st_m},
                     {"mode", st_exact ? "exact" : "asymptotic"},
                     {"p", head},          {"mean", dist.mean},
                     {"stddev", dist.stddev}, {"converged", dist.converged},
                     {"residual", dist.residual}};
            } else if (*an_unl) {
                j = unl_json(jrc::run_unl_study(unl_samples, unl_full, unl_seed));
            }
            std::printf("%s\n", j.dump(2).c_str());
            return 0;
        }
        if (*cmd_exp) {
            jrc::ExperimentConfig cfg;
            if (!exp_config.empty()) {
                std::ifstream is(exp_config);
                if (!is) throw std::runtime_error("cannot read config " + exp_config);
                json j;
                is >> j;
                cfg = config_from_json(j);
            } else if (!exp_preset.empty()) {
                cfg = preset_config(exp_preset, exp_n, exp_d);
            } else {
                throw std::runtime_error("experiment: pass --config or --preset");
            }
            if (exp_ci) cfg.trials = 100;
            if (exp_trials) cfg.trials = exp_trials;
            if (exp_budget_width) cfg.budget_width = exp_budget_width;
            if (exp_seed_set) cfg.seed = exp_seed;
            if (exp_threads) cfg.threads = exp_threads;
            return run_experiment_cmd(cfg, exp_out);
        }
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return kExitError;
    }
    return 0;
}
