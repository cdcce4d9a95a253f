// Command-line front end: configuration checking, analytic sweeps, Monte Carlo
// campaigns, and the canned figure presets, all emitted as CSV.

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "mmlink/allocation.hpp"
#include "mmlink/config.hpp"
#include "mmlink/csv.hpp"
#include "mmlink/errors.hpp"
#include "mmlink/estimation.hpp"
#include "mmlink/ici.hpp"
#include "mmlink/mcsim.hpp"
#include "mmlink/presets.hpp"
#include "mmlink/rate.hpp"

using namespace mmlink;

namespace {

std::vector<Combiner> parse_combiners(const std::string& s) {
    if (s == "zf") return {Combiner::kZf};
    if (s == "mrc") return {Combiner::kMrc};
    return {Combiner::kZf, Combiner::kMrc};
}

SweepAxis parse_axis(const std::string& s) {
    if (s == "n") return SweepAxis::kSymbolIndex;
    if (s == "v_max") return SweepAxis::kVmax;
    if (s == "users_per_subcarrier") return SweepAxis::kUsersPerSubcarrier;
    if (s == "n_data") return SweepAxis::kFrameLength;
    return SweepAxis::kSnrDb;
}

std::vector<double> default_grid(SweepAxis axis, bool campaign) {
    switch (axis) {
        case SweepAxis::kSymbolIndex:
            return {1, 5, 10, 20, 30};
        case SweepAxis::kVmax: {
            if (campaign) return {5, 15, 25, 35, 45};
            std::vector<double> g;
            for (int v = 1; v <= 50; ++v) g.push_back(v);
            return g;
        }
        case SweepAxis::kUsersPerSubcarrier:
            return campaign ? std::vector<double>{8, 64}
                            : std::vector<double>{4, 8, 16, 32, 64, 128};
        case SweepAxis::kFrameLength: {
            if (campaign) return {4, 12, 28};
            std::vector<double> g;
            for (int n = 1; n <= 60; ++n) g.push_back(n);
            return g;
        }
        case SweepAxis::kSnrDb: {
            if (campaign) return {-10, 0, 10, 20};
            std::vector<double> g;
            for (int s = -10; s <= 20; s += 2) g.push_back(s);
            return g;
        }
    }
    return {};
}

SystemConfig apply_axis(const SystemConfig& cfg, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::kVmax:
            return with_v_max(cfg, value);
        case SweepAxis::kUsersPerSubcarrier:
            return with_users_per_subcarrier(cfg, static_cast<int>(value));
        case SweepAxis::kFrameLength:
            return with_frame_data_length(cfg, static_cast<int>(value));
        case SweepAxis::kSnrDb:
            return with_snr_db(cfg, value);
        case SweepAxis::kSymbolIndex:
            break;
    }
    return cfg;
}

void finish(const CsvTable& table, const std::string& out) {
    if (out.empty())
        std::cout << render_csv(table);
    else
        emit_csv(table, out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uplink analysis and simulation for a multi-user MIMO-OFDM cell with "
                 "mobile users: inter-carrier interference, channel-aging-aware rate "
                 "bounds, and a cross-checking Monte Carlo simulator."};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 1;
    std::string out;
    std::string combiner = "both";
    std::string scale = "desk";
    std::string nv_rule;
    int threads = 0;
    long trials = 0;
    std::vector<int> users;

    app.add_option("--config", config_path, "configuration file (flat key = value)");
    app.add_option("--seed", seed, "master seed for every random quantity");
    app.add_option("--out", out, "output CSV path (default: stdout)");
    app.add_option("--combiner", combiner, "receive combiner(s)")
        ->check(CLI::IsMember({"zf", "mrc", "both"}));
    auto* combiner_opt = app.get_option("--combiner");
    app.add_option("--scale", scale,
                   "preset scale: desk = 64 antennas and thinned grids for the Monte "
                   "Carlo presets, paper = full grids at the configured antenna count")
        ->check(CLI::IsMember({"desk", "paper"}));
    app.add_option("--threads", threads, "worker threads (0 = library default)");
    app.add_option("--trials", trials, "Monte Carlo trials per grid point (0 = default)");
    app.add_option("--nv-rule", nv_rule, "pilot-subcarriers-per-UE rule override")
        ->check(CLI::IsMember({"proof", "literal"}));
    app.add_option("--users", users, "users-per-subcarrier grid for user-load sweeps")
        ->delimiter(',');

    auto* sub_validate = app.add_subcommand(
        "validate", "check a configuration and print the derived group structure");

    auto* sub_ici = app.add_subcommand(
        "ici", "per-subcarrier exact ICI power and the closed-form total");
    std::string eta = "uniform";
    sub_ici->add_option("--eta", eta, "power-coefficient model")
        ->check(CLI::IsMember({"uniform", "random"}));

    auto* sub_nmse = app.add_subcommand(
        "nmse", "channel-estimate NMSE vs pilot SNR, single- and multi-carrier");

    auto* sub_rate = app.add_subcommand(
        "rate", "analytic per-symbol rate vs symbol index");
    double rate_v = -1.0;
    int rate_n_max = 30;
    sub_rate->add_option("--v", rate_v, "override maximum UE speed (m/s)");
    sub_rate->add_option("--n-max", rate_n_max, "largest symbol index")
        ->check(CLI::PositiveNumber);

    auto* sub_sumrate = app.add_subcommand("sumrate", "analytic system sum-rate sweep");
    std::string sr_axis = "v_max";
    std::vector<double> sr_grid;
    sub_sumrate->add_option("--axis", sr_axis, "swept parameter")
        ->check(CLI::IsMember({"v_max", "users_per_subcarrier", "n_data", "snr_db"}));
    sub_sumrate->add_option("--grid", sr_grid, "swept values")->delimiter(',');

    auto* sub_mc = app.add_subcommand(
        "mc", "Monte Carlo campaign against the analytic rates");
    std::string mc_axis = "n";
    std::vector<double> mc_grid;
    sub_mc->add_option("--axis", mc_axis, "swept parameter")
        ->check(CLI::IsMember({"n", "v_max", "users_per_subcarrier", "n_data", "snr_db"}));
    sub_mc->add_option("--grid", mc_grid, "swept values")->delimiter(',');

    auto* sub_preset = app.add_subcommand("preset", "run a canned experiment sweep");
    std::string preset_name;
    sub_preset->add_option("name", preset_name, "one of fig3..fig9")->required();

    CLI11_PARSE(app, argc, argv);

    try {
#ifdef _OPENMP
        if (threads > 0) omp_set_num_threads(threads);
#endif
        SystemConfig cfg = config_path.empty() ? baseline_config() : load_config(config_path);
        if (!nv_rule.empty()) {
            cfg.nv_rule = nv_rule == "literal" ? NvRule::kLiteral : NvRule::kProofConsistent;
            cfg = validate_config(cfg);
        }
        const std::vector<Combiner> combiners = parse_combiners(combiner);

        if (sub_validate->parsed()) {
            const AllocationPlan plan = build_allocation(cfg);
            std::cout << "L=" << plan.n_groups << "\n"
                      << "N_H=" << cfg.n_coherence_subcarriers << "\n"
                      << "N_P=" << plan.pilot.pilot_length << "\n"
                      << "N_V=" << plan.pilot.pilot_carriers_per_ue << "\n"
                      << "coverage=" << (plan.pilot.coverage_complete ? "complete" : "partial")
                      << "\n";
            return 0;
        }

        if (sub_ici->parsed()) {
            AllocationPlan plan = build_allocation(cfg);
            if (eta == "random")
                plan = sample_power_coefficients(plan, cfg, PowerMode::kRandom, seed);
            LeakageTable table(cfg);
            table.warm(true);
            const double closed = ici_power_closed_form(cfg);
            CsvTable t;
            t.header = {"subcarrier", "ici_power_exact", "ici_power_closed_form"};
            for (int i = 0; i < cfg.n_subcarriers; ++i)
                t.add_row({format_value(static_cast<long>(i)),
                           format_value(ici_power_exact(cfg, plan, i, table)),
                           format_value(closed)});
            finish(t, out);
            return 0;
        }

        if (sub_nmse->parsed()) {
            CsvTable t;
            t.header = {"pilot_snr_db", "nmse_singlecarrier", "nmse_multicarrier"};
            for (int snr = -10; snr <= 40; snr += 2) {
                const SystemConfig p = with_snr_db(cfg, snr);
                const PilotPlan plan = pilot_plan(p, p.nv_rule);
                const double single =
                    p.noise_variance / (p.effective_tx_power * p.channel_variance);
                t.add_row({format_value(static_cast<long>(snr)), format_value(single),
                           format_value(nmse_analytic(p, plan))});
            }
            finish(t, out);
            return 0;
        }

        if (sub_rate->parsed()) {
            const SystemConfig p = rate_v >= 0.0 ? with_v_max(cfg, rate_v) : cfg;
            const AllocationPlan plan = build_allocation(p);
            CsvTable t;
            t.header = {"n", "v_max_mps", "combiner", "rate_bps"};
            for (Combiner c : combiners)
                for (int n = 1; n <= rate_n_max; ++n)
                    t.add_row({format_value(static_cast<long>(n)), format_value(p.v_max),
                               combiner_name(c),
                               format_value(analytic_symbol_rate(c, n, p, plan))});
            finish(t, out);
            return 0;
        }

        if (sub_sumrate->parsed()) {
            const SweepAxis axis = parse_axis(sr_axis);
            const std::vector<double> grid =
                sr_grid.empty() ? default_grid(axis, false) : sr_grid;
            const AllocationPlan base_plan = build_allocation(cfg);
            CsvTable t;
            t.header = {sweep_axis_name(axis), "combiner", "sum_rate_bps"};
            for (double g : grid) {
                const SystemConfig point = apply_axis(cfg, axis, g);
                const AllocationPlan plan = axis == SweepAxis::kUsersPerSubcarrier
                                                ? build_allocation(point)
                                                : base_plan;
                for (Combiner c : combiners)
                    t.add_row({format_value(g), combiner_name(c),
                               format_value(sum_rate(c, point, plan).system_sum_rate)});
            }
            finish(t, out);
            return 0;
        }

        if (sub_mc->parsed()) {
            Experiment ex;
            ex.axis = parse_axis(mc_axis);
            ex.grid = mc_grid.empty() ? default_grid(ex.axis, true) : mc_grid;
            ex.trials = trials > 0 ? trials : 20000;
            const AllocationPlan plan = build_allocation(cfg);
            const auto rows = run_campaign(ex, combiners, cfg, plan, seed);
            CsvTable t;
            t.header = {sweep_axis_name(ex.axis), "combiner",      "analytic_rate",
                        "empirical_rate",         "empirical_stderr", "failed_trials"};
            for (const CampaignRow& row : rows)
                t.add_row({format_value(row.swept_value), combiner_name(row.combiner),
                           format_value(row.analytic_rate), format_value(row.empirical_rate),
                           format_value(row.empirical_stderr),
                           format_value(row.failed_trials)});
            finish(t, out);
            return 0;
        }

        // preset
        PresetOptions opt;
        opt.desk = scale != "paper";
        opt.seed = seed;
        if (combiner_opt->count() > 0) opt.combiners = combiners;
        opt.trials = trials;
        opt.users = users;
        finish(run_preset(preset_name, cfg, opt), out);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
