#include "mmlink/presets.hpp"

#include <algorithm>

#include "mmlink/allocation.hpp"
#include "mmlink/channel.hpp"
#include "mmlink/errors.hpp"
#include "mmlink/mcsim.hpp"
#include "mmlink/rng.hpp"

namespace mmlink {

namespace {

std::vector<Combiner> pick(const PresetOptions& opt, std::vector<Combiner> fallback) {
    return opt.combiners.empty() ? fallback : opt.combiners;
}

SystemConfig desk_antennas(const SystemConfig& cfg, const PresetOptions& opt) {
    if (!opt.desk) return cfg;
    SystemConfig out = cfg;
    out.n_antennas = 64;
    return validate_config(out);
}

// Pilot percentages {12.5, 25, 50} correspond to frame data lengths {7, 3, 1} x N_P.
const int kMuMultipliers[3] = {7, 3, 1};

std::vector<double> speeds_1_to_50() {
    std::vector<double> v;
    for (int s = 1; s <= 50; ++s) v.push_back(s);
    return v;
}

// Speed-indexed cache of aging moments for n = 1..length.
std::vector<double> moments_for(const SystemConfig& cfg, int length) {
    std::vector<double> m;
    m.reserve(length);
    const int horizon = std::max(64, length);
    for (int n = 1; n <= length; ++n) m.push_back(aging_moment(n, cfg, horizon));
    return m;
}

CsvTable fig3(const SystemConfig& cfg, const PresetOptions& opt) {
    const auto combiners = pick(opt, {Combiner::kZf, Combiner::kMrc});
    const long trials = opt.trials > 0 ? opt.trials : 20000;
    SystemConfig base = desk_antennas(cfg, opt);
    base = with_frame_data_length(base, std::max(base.frame_data_length, 30));
    const AllocationPlan plan = build_allocation(base);

    std::vector<double> n_grid;
    if (opt.desk)
        n_grid = {1, 5, 10, 20, 30};
    else
        for (int n = 1; n <= 30; ++n) n_grid.push_back(n);

    CsvTable t;
    t.header = {"n",
                "v_max_mps",
                "combiner",
                "analytic_rate_bps",
                "empirical_rate_bps",
                "empirical_stderr_bps",
                "failed_trials"};
    const std::vector<double> speeds = {5, 25, 100};
    for (std::size_t vi = 0; vi < speeds.size(); ++vi) {
        const SystemConfig point = with_v_max(base, speeds[vi]);
        Experiment ex;
        ex.axis = SweepAxis::kSymbolIndex;
        ex.grid = n_grid;
        ex.trials = trials;
        const auto rows = run_campaign(ex, combiners, point, plan, mix(opt.seed, 0xF133, vi));
        for (const CampaignRow& row : rows)
            t.add_row({format_value(static_cast<long>(row.swept_value)),
                       format_value(speeds[vi]), combiner_name(row.combiner),
                       format_value(row.analytic_rate), format_value(row.empirical_rate),
                       format_value(row.empirical_stderr), format_value(row.failed_trials)});
    }
    return t;
}

CsvTable fig4(const SystemConfig& cfg, const PresetOptions& opt) {
    const auto combiners = pick(opt, {Combiner::kZf, Combiner::kMrc});
    const std::vector<int> users =
        opt.users.empty() ? std::vector<int>{4, 8, 16, 32, 64, 128} : opt.users;

    CsvTable t;
    t.header = {"n", "v_max_mps", "users_per_subcarrier", "combiner", "rate_bps"};
    const std::vector<double> speeds = {5, 25, 100};
    for (double v : speeds) {
        const SystemConfig at_speed = with_v_max(cfg, v);
        for (int u : users) {
            const SystemConfig point = with_users_per_subcarrier(at_speed, u);
            const AllocationPlan plan = build_allocation(point);
            for (Combiner c : combiners)
                for (int n = 1; n <= 30; ++n)
                    t.add_row({format_value(static_cast<long>(n)), format_value(v),
                               format_value(static_cast<long>(u)), combiner_name(c),
                               format_value(analytic_symbol_rate(c, n, point, plan))});
        }
    }
    return t;
}

CsvTable fig5(const SystemConfig& cfg, const PresetOptions& opt) {
    const auto combiners = pick(opt, {Combiner::kZf, Combiner::kMrc});
    const long trials = opt.trials > 0 ? opt.trials : 5000;
    const SystemConfig base = desk_antennas(cfg, opt);
    const AllocationPlan plan = build_allocation(base);
    const int n_p = plan.pilot.pilot_length;
    const std::vector<double> mc_speeds = {5, 15, 25, 35, 45};

    CsvTable t;
    t.header = {"v_max_mps",
                "mu_pct",
                "combiner",
                "analytic_sum_rate_bps",
                "empirical_sum_rate_bps",
                "empirical_stderr_bps",
                "failed_trials"};

    // Aging moments depend only on speed; compute once per speed for the longest frame.
    std::vector<std::vector<double>> cache(51);

    for (std::size_t mi = 0; mi < 3; ++mi) {
        const int n_d = kMuMultipliers[mi] * n_p;
        const double mu = pilot_percentage(n_p, n_d);
        const SystemConfig at_mu = with_frame_data_length(base, n_d);
        for (int v = 1; v <= 50; ++v) {
            const SystemConfig point = with_v_max(at_mu, v);
            if (cache[v].empty()) cache[v] = moments_for(point, 7 * n_p);
            const bool measure =
                std::find(mc_speeds.begin(), mc_speeds.end(), static_cast<double>(v)) !=
                mc_speeds.end();
            for (Combiner c : combiners) {
                const double analytic = sum_rate(c, point, plan, &cache[v]).system_sum_rate;
                std::string emp, se, failed;
                if (measure) {
                    std::vector<int> ns(n_d);
                    for (int n = 1; n <= n_d; ++n) ns[n - 1] = n;
                    const auto measured = measure_many(
                        trials, ns, c, point, plan, mix(opt.seed, 0xF155, mi, v));
                    const FrameMeasurement fm = aggregate_frame(measured, point, plan);
                    emp = format_value(fm.system_sum_rate);
                    se = format_value(fm.system_sum_rate_stderr);
                    failed = format_value(fm.failed_trials);
                }
                t.add_row({format_value(static_cast<double>(v)), format_value(mu),
                           combiner_name(c), format_value(analytic), emp, se, failed});
            }
        }
    }
    return t;
}

CsvTable fig67(const SystemConfig& cfg, const PresetOptions& opt, Combiner fallback) {
    const auto combiners = pick(opt, {fallback});
    const bool with_users = !opt.users.empty();

    CsvTable t;
    if (with_users)
        t.header = {"v_max_mps", "mu_pct", "users_per_subcarrier", "combiner", "sum_rate_bps"};
    else
        t.header = {"v_max_mps", "mu_pct", "combiner", "sum_rate_bps"};

    const std::vector<int> users = with_users ? opt.users : std::vector<int>{
        cfg.users_per_subcarrier};

    // cache[speed] holds moments for the longest frame needed by any user load.
    int max_np = 0;
    std::vector<AllocationPlan> plans;
    std::vector<SystemConfig> cfgs;
    for (int u : users) {
        cfgs.push_back(with_users_per_subcarrier(cfg, u));
        plans.push_back(build_allocation(cfgs.back()));
        max_np = std::max(max_np, plans.back().pilot.pilot_length);
    }
    std::vector<std::vector<double>> cache(51);

    for (std::size_t mi = 0; mi < 3; ++mi) {
        for (std::size_t ui = 0; ui < users.size(); ++ui) {
            const int n_p = plans[ui].pilot.pilot_length;
            const int n_d = kMuMultipliers[mi] * n_p;
            const double mu = pilot_percentage(n_p, n_d);
            const SystemConfig at_mu = with_frame_data_length(cfgs[ui], n_d);
            for (int v = 1; v <= 50; ++v) {
                const SystemConfig point = with_v_max(at_mu, v);
                if (cache[v].empty()) cache[v] = moments_for(point, 7 * max_np);
                for (Combiner c : combiners) {
                    const double value =
                        sum_rate(c, point, plans[ui], &cache[v]).system_sum_rate;
                    std::vector<std::string> row = {format_value(static_cast<double>(v)),
                                                    format_value(mu)};
                    if (with_users) row.push_back(format_value(static_cast<long>(users[ui])));
                    row.push_back(combiner_name(c));
                    row.push_back(format_value(value));
                    t.add_row(std::move(row));
                }
            }
        }
    }
    return t;
}

CsvTable fig8(const SystemConfig& cfg, const PresetOptions& opt) {
    const auto combiners = pick(opt, {Combiner::kZf, Combiner::kMrc});
    const bool with_users = !opt.users.empty();
    const std::vector<int> users = with_users ? opt.users : std::vector<int>{
        cfg.users_per_subcarrier};

    CsvTable t;
    if (with_users)
        t.header = {"n_data", "v_max_mps", "users_per_subcarrier", "combiner", "sum_rate_bps"};
    else
        t.header = {"n_data", "v_max_mps", "combiner", "sum_rate_bps"};

    const std::vector<double> speeds = {5, 25, 100};
    for (double v : speeds) {
        const SystemConfig at_speed = with_v_max(cfg, v);
        const std::vector<double> moments = moments_for(at_speed, 60);
        for (int u : users) {
            const SystemConfig point_u = with_users_per_subcarrier(at_speed, u);
            const AllocationPlan plan = build_allocation(point_u);
            for (Combiner c : combiners) {
                for (int n_d = 1; n_d <= 60; ++n_d) {
                    const SystemConfig point = with_frame_data_length(point_u, n_d);
                    const double value = sum_rate(c, point, plan, &moments).system_sum_rate;
                    std::vector<std::string> row = {format_value(static_cast<long>(n_d)),
                                                    format_value(v)};
                    if (with_users) row.push_back(format_value(static_cast<long>(u)));
                    row.push_back(combiner_name(c));
                    row.push_back(format_value(value));
                    t.add_row(std::move(row));
                }
            }
        }
    }
    return t;
}

CsvTable fig9(const SystemConfig& cfg, const PresetOptions& opt) {
    const auto combiners = pick(opt, {Combiner::kZf, Combiner::kMrc});
    const std::vector<int> users =
        opt.users.empty() ? std::vector<int>{16, 32, 64, 128} : opt.users;
    std::vector<int> nd_grid;
    for (int n = 1; n <= 64; ++n) nd_grid.push_back(n);

    CsvTable t;
    t.header = {"snr_db", "v_max_mps", "users_per_subcarrier", "combiner", "best_n_d",
                "sum_rate_bps"};
    const std::vector<double> speeds = {5, 25, 100};
    for (double v : speeds) {
        const SystemConfig at_speed = with_v_max(cfg, v);
        for (int u : users) {
            const SystemConfig point_u = with_users_per_subcarrier(at_speed, u);
            const AllocationPlan plan = build_allocation(point_u);
            for (int snr = -10; snr <= 20; snr += 2) {
                const SystemConfig point = with_snr_db(point_u, snr);
                for (Combiner c : combiners) {
                    const auto [best_nd, result] =
                        optimize_frame_length(c, point, plan, nd_grid);
                    t.add_row({format_value(static_cast<long>(snr)), format_value(v),
                               format_value(static_cast<long>(u)), combiner_name(c),
                               format_value(static_cast<long>(best_nd)),
                               format_value(result.system_sum_rate)});
                }
            }
        }
    }
    return t;
}

} // namespace

CsvTable run_preset(const std::string& name, const SystemConfig& cfg,
                    const PresetOptions& opt) {
    if (!cfg.validated) throw PlanError("run_preset: configuration must be validated");
    if (name == "fig3") return fig3(cfg, opt);
    if (name == "fig4") return fig4(cfg, opt);
    if (name == "fig5") return fig5(cfg, opt);
    if (name == "fig6") return fig67(cfg, opt, Combiner::kZf);
    if (name == "fig7") return fig67(cfg, opt, Combiner::kMrc);
    if (name == "fig8") return fig8(cfg, opt);
    if (name == "fig9") return fig9(cfg, opt);
    throw DomainError("run_preset: unknown preset '" + name + "' (known: fig3..fig9)");
}

} // namespace mmlink
