#include "mmlink/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "mmlink/errors.hpp"
#include "mmlink/ici.hpp"
#include "mmlink/rng.hpp"

namespace mmlink {

ReceivedSymbol synthesize_symbol(const ChannelBlock& block, const EstimateBlock& est, int n,
                                 const AllocationPlan& plan, const SystemConfig& cfg,
                                 std::uint64_t seed) {
    if (n < 1 || n > cfg.frame_data_length)
        throw DomainError("synthesize_symbol: symbol index outside [1, frame_data_length]");
    if (block.aged.find(n) == block.aged.end())
        throw PlanError("synthesize_symbol: symbol index not materialized in the block");
    const int n_u = cfg.users_per_subcarrier;
    const int n_b = cfg.n_antennas;
    if (est.estimate.rows() != n_b || est.estimate.cols() != n_u)
        throw PlanError("synthesize_symbol: estimate does not match the configuration");

    ReceivedSymbol sym;
    sym.n = n;
    sym.x.resize(n_u);
    {
        Rng rng(mix(seed, kTagSymbols, static_cast<std::uint64_t>(n)));
        for (int k = 0; k < n_u; ++k) sym.x(k) = rng.unit_phase();
    }

    // Power-scaled symbol vector sqrt(P_T) D_eta^{1/2} x on the representative
    // subcarrier (the first subcarrier of the first group).
    const auto& eta = plan.power_coefficients.at(0);
    Eigen::VectorXcd scaled(n_u);
    for (int k = 0; k < n_u; ++k)
        scaled(k) = std::sqrt(cfg.effective_tx_power * eta.at(k)) * sym.x(k);

    const Eigen::VectorXd& rho = block.rho.at(n);
    Eigen::VectorXcd rho_scaled(n_u);
    for (int k = 0; k < n_u; ++k) rho_scaled(k) = rho(k) * scaled(k);

    sym.desired = block.aged.at(n) * scaled;
    sym.known_part = est.estimate * rho_scaled;
    sym.est_error_part = -(est.error * rho_scaled);
    sym.aging_part = block.innovation.at(n) * scaled;

    const double ici_var =
        cfg.users_per_subcarrier * cfg.effective_tx_power * ici_variance(cfg) /
        cfg.subcarriers_per_user;
    sym.ici.resize(n_b);
    {
        Rng rng(mix(seed, kTagIciSamples, static_cast<std::uint64_t>(n)));
        for (int m = 0; m < n_b; ++m) sym.ici(m) = rng.complex_normal(ici_var);
    }
    sym.noise.resize(n_b);
    {
        Rng rng(mix(seed, kTagNoise, static_cast<std::uint64_t>(n)));
        for (int m = 0; m < n_b; ++m) sym.noise(m) = rng.complex_normal(cfg.noise_variance);
    }

    sym.r = sym.desired + sym.ici + sym.noise;
    return sym;
}

CombinedSymbol combine(const ReceivedSymbol& sym, const EstimateBlock& est,
                       Combiner combiner) {
    const int n_u = static_cast<int>(est.estimate.cols());
    Eigen::MatrixXcd stacked(est.estimate.rows(), 7);
    stacked.col(0) = sym.r;
    stacked.col(1) = sym.desired;
    stacked.col(2) = sym.ici;
    stacked.col(3) = sym.noise;
    stacked.col(4) = sym.known_part;
    stacked.col(5) = sym.est_error_part;
    stacked.col(6) = sym.aging_part;

    Eigen::MatrixXcd combined;
    if (combiner == Combiner::kZf) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(est.estimate);
        if (qr.rank() < n_u)
            throw SingularityError("combine: rank-deficient estimate under zero-forcing");
        combined = qr.solve(stacked);
    } else {
        combined = est.estimate.adjoint() * stacked;
    }

    CombinedSymbol out;
    out.y = combined.col(0);
    out.desired = combined.col(1);
    out.ici = combined.col(2);
    out.noise = combined.col(3);
    out.known_part = combined.col(4);
    out.est_error_part = combined.col(5);
    out.aging_part = combined.col(6);
    return out;
}

namespace {

double capped_ratio(double num, double den, bool* capped) {
    if (den <= 0.0) {
        if (num == 0.0) return 0.0;
        *capped = true;
        return kSinrCeiling;
    }
    const double ratio = num / den;
    if (ratio > kSinrCeiling) {
        *capped = true;
        return kSinrCeiling;
    }
    return ratio;
}

} // namespace

std::vector<TrialResult> measure_many(long trials, const std::vector<int>& symbol_indices,
                                      Combiner combiner, const SystemConfig& cfg,
                                      const AllocationPlan& plan, std::uint64_t master_seed,
                                      bool parallel) {
    if (trials < 1) throw DomainError("measure_many: trials must be >= 1");
    if (symbol_indices.empty()) throw DomainError("measure_many: no symbol indices");
    for (int n : symbol_indices)
        if (n < 1 || n > cfg.frame_data_length)
            throw DomainError("measure_many: symbol index outside [1, frame_data_length]");

    const int n_u = cfg.users_per_subcarrier;
    const int n_points = static_cast<int>(symbol_indices.size());
    const double tx = cfg.effective_tx_power;
    const double var_hat = estimate_variance(cfg, plan.pilot);
    const auto& eta = plan.power_coefficients.at(0); // representative subcarrier

    // Per-trial slots; the reduction below walks them in trial order so the result is
    // independent of the parallel schedule.
    std::vector<double> sig(static_cast<std::size_t>(trials) * n_points * n_u, 0.0);
    std::vector<double> resid(static_cast<std::size_t>(trials) * n_points * n_u, 0.0);
    std::vector<unsigned char> failed(trials, 0);

    auto run_trial = [&](long t) {
        const std::uint64_t trial_seed = mix(master_seed, static_cast<std::uint64_t>(t));
        const auto states = draw_ue_states(cfg, n_u, trial_seed);
        const ChannelBlock block = evolve_channel(trial_seed, states, cfg, symbol_indices);
        const EstimateBlock est = ls_estimate(block, plan, cfg, trial_seed);

        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr;
        if (combiner == Combiner::kZf) {
            qr.compute(est.estimate);
            if (qr.rank() < n_u) {
                failed[t] = 1;
                return;
            }
        }

        for (int p = 0; p < n_points; ++p) {
            const int n = symbol_indices[p];
            const ReceivedSymbol sym = synthesize_symbol(block, est, n, plan, cfg, trial_seed);
            const Eigen::VectorXcd y = (combiner == Combiner::kZf)
                                           ? Eigen::VectorXcd(qr.solve(sym.r))
                                           : Eigen::VectorXcd(est.estimate.adjoint() * sym.r);
            const Eigen::VectorXd& rho = block.rho.at(n);
            const std::size_t base = (static_cast<std::size_t>(t) * n_points + p) * n_u;
            for (int k = 0; k < n_u; ++k) {
                double gain = std::sqrt(tx * eta.at(k)) * rho(k);
                if (combiner == Combiner::kMrc) gain *= cfg.n_antennas * var_hat;
                const std::complex<double> d = gain * sym.x(k);
                sig[base + k] = std::norm(d);
                resid[base + k] = std::norm(std::complex<double>(y(k) - d));
            }
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long t = 0; t < trials; ++t) run_trial(t);
    } else {
        for (long t = 0; t < trials; ++t) run_trial(t);
    }

    long successes = 0;
    for (long t = 0; t < trials; ++t)
        if (!failed[t]) ++successes;
    if (successes == 0)
        throw SingularityError("measure_many: every trial had a rank-deficient estimate");

    std::vector<TrialResult> results(n_points);
    for (int p = 0; p < n_points; ++p) {
        TrialResult& tr = results[p];
        tr.combiner = combiner;
        tr.n = symbol_indices[p];
        tr.trials = trials;
        tr.failed_trials = trials - successes;
        tr.signal_power.assign(n_u, 0.0);
        tr.interference_power.assign(n_u, 0.0);
        tr.sinr_per_ue.assign(n_u, 0.0);
        tr.batch_sinr.assign(kErrorBatches, 0.0);

        std::vector<double> batch_sig(kErrorBatches, 0.0);
        std::vector<double> batch_resid(kErrorBatches, 0.0);
        for (long t = 0; t < trials; ++t) {
            if (failed[t]) continue;
            const int b = static_cast<int>((t * kErrorBatches) / trials);
            const std::size_t base = (static_cast<std::size_t>(t) * n_points + p) * n_u;
            for (int k = 0; k < n_u; ++k) {
                tr.signal_power[k] += sig[base + k];
                tr.interference_power[k] += resid[base + k];
                batch_sig[b] += sig[base + k];
                batch_resid[b] += resid[base + k];
            }
        }

        double pooled_sig = 0.0;
        double pooled_resid = 0.0;
        for (int k = 0; k < n_u; ++k) {
            pooled_sig += tr.signal_power[k];
            pooled_resid += tr.interference_power[k];
            tr.sinr_per_ue[k] =
                capped_ratio(tr.signal_power[k], tr.interference_power[k], &tr.capped);
            tr.signal_power[k] /= successes;
            tr.interference_power[k] /= successes;
        }
        tr.empirical_sinr = capped_ratio(pooled_sig, pooled_resid, &tr.capped);
        tr.empirical_rate = per_symbol_rate(tr.empirical_sinr, cfg);

        double mean_rate = 0.0;
        std::vector<double> batch_rate(kErrorBatches, 0.0);
        for (int b = 0; b < kErrorBatches; ++b) {
            tr.batch_sinr[b] = capped_ratio(batch_sig[b], batch_resid[b], &tr.capped);
            batch_rate[b] = per_symbol_rate(tr.batch_sinr[b], cfg);
            mean_rate += batch_rate[b];
        }
        mean_rate /= kErrorBatches;
        double var = 0.0;
        for (int b = 0; b < kErrorBatches; ++b)
            var += (batch_rate[b] - mean_rate) * (batch_rate[b] - mean_rate);
        var /= (kErrorBatches - 1);
        tr.empirical_stderr = std::sqrt(var / kErrorBatches);
    }
    return results;
}

TrialResult measure_sinr(long trials, int n, Combiner combiner, const SystemConfig& cfg,
                         const AllocationPlan& plan, std::uint64_t master_seed,
                         bool parallel) {
    return measure_many(trials, {n}, combiner, cfg, plan, master_seed, parallel).front();
}

FrameMeasurement aggregate_frame(const std::vector<TrialResult>& per_symbol,
                                 const SystemConfig& cfg, const AllocationPlan& plan) {
    const int n_d = cfg.frame_data_length;
    if (static_cast<int>(per_symbol.size()) != n_d)
        throw DomainError("aggregate_frame: need one measurement per data symbol");
    for (int p = 0; p < n_d; ++p)
        if (per_symbol[p].n != p + 1)
            throw DomainError("aggregate_frame: measurements must cover n = 1..frame length");

    FrameMeasurement fm;
    if (n_d == 0) return fm;
    const int frame = plan.pilot.pilot_length + n_d;
    const double pairs =
        static_cast<double>(cfg.n_subcarriers) * cfg.users_per_subcarrier;

    double frame_sum = 0.0;
    for (const TrialResult& tr : per_symbol) {
        frame_sum += tr.empirical_rate;
        fm.capped = fm.capped || tr.capped;
    }
    fm.per_ue_frame_rate = frame_sum / frame;
    fm.system_sum_rate = pairs * fm.per_ue_frame_rate;
    fm.failed_trials = per_symbol.front().failed_trials;

    std::vector<double> batch_frame(kErrorBatches, 0.0);
    for (const TrialResult& tr : per_symbol)
        for (int b = 0; b < kErrorBatches; ++b)
            batch_frame[b] += per_symbol_rate(tr.batch_sinr[b], cfg);
    double mean = 0.0;
    for (int b = 0; b < kErrorBatches; ++b) {
        batch_frame[b] /= frame;
        mean += batch_frame[b];
    }
    mean /= kErrorBatches;
    double var = 0.0;
    for (int b = 0; b < kErrorBatches; ++b)
        var += (batch_frame[b] - mean) * (batch_frame[b] - mean);
    var /= (kErrorBatches - 1);
    fm.system_sum_rate_stderr = pairs * std::sqrt(var / kErrorBatches);
    return fm;
}

std::string sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::kSymbolIndex: return "n";
        case SweepAxis::kVmax: return "v_max_mps";
        case SweepAxis::kUsersPerSubcarrier: return "users_per_subcarrier";
        case SweepAxis::kFrameLength: return "n_data";
        case SweepAxis::kSnrDb: return "snr_db";
    }
    return "value";
}

namespace {

int as_int(double v, const char* axis) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw DomainError(std::string("run_campaign: axis '") + axis +
                          "' requires integer grid values");
    return i;
}

} // namespace

std::vector<CampaignRow> run_campaign(const Experiment& experiment,
                                      const std::vector<Combiner>& combiners,
                                      const SystemConfig& cfg, const AllocationPlan& plan,
                                      std::uint64_t master_seed) {
    if (experiment.grid.empty()) throw DomainError("run_campaign: empty grid");
    if (combiners.empty()) throw DomainError("run_campaign: no combiners selected");

    std::vector<CampaignRow> rows;

    if (experiment.axis == SweepAxis::kSymbolIndex) {
        std::vector<int> ns;
        int max_n = 0;
        for (double g : experiment.grid) {
            const int n = as_int(g, "n");
            if (n < 1) throw DomainError("run_campaign: symbol indices must be >= 1");
            ns.push_back(n);
            max_n = std::max(max_n, n);
        }
        const SystemConfig point_cfg =
            with_frame_data_length(cfg, std::max(cfg.frame_data_length, max_n));
        for (Combiner c : combiners) {
            const auto measured =
                measure_many(experiment.trials, ns, c, point_cfg, plan, master_seed);
            for (std::size_t p = 0; p < ns.size(); ++p) {
                CampaignRow row;
                row.swept_value = ns[p];
                row.combiner = c;
                row.analytic_rate = analytic_symbol_rate(c, ns[p], point_cfg, plan);
                row.empirical_rate = measured[p].empirical_rate;
                row.empirical_stderr = measured[p].empirical_stderr;
                row.failed_trials = measured[p].failed_trials;
                rows.push_back(row);
            }
        }
        return rows;
    }

    for (std::size_t gi = 0; gi < experiment.grid.size(); ++gi) {
        const double value = experiment.grid[gi];
        SystemConfig point_cfg = cfg;
        AllocationPlan point_plan = plan;
        switch (experiment.axis) {
            case SweepAxis::kVmax:
                point_cfg = with_v_max(cfg, value);
                break;
            case SweepAxis::kUsersPerSubcarrier:
                point_cfg = with_users_per_subcarrier(cfg, as_int(value, "users_per_subcarrier"));
                point_plan = build_allocation(point_cfg);
                break;
            case SweepAxis::kFrameLength:
                point_cfg = with_frame_data_length(cfg, as_int(value, "n_data"));
                break;
            case SweepAxis::kSnrDb:
                point_cfg = with_snr_db(cfg, value);
                break;
            case SweepAxis::kSymbolIndex:
                break; // handled above
        }
        const std::uint64_t point_seed = mix(master_seed, 0xCA11, gi);

        std::vector<int> ns(point_cfg.frame_data_length);
        for (int n = 1; n <= point_cfg.frame_data_length; ++n) ns[n - 1] = n;

        for (Combiner c : combiners) {
            CampaignRow row;
            row.swept_value = value;
            row.combiner = c;
            row.analytic_rate = sum_rate(c, point_cfg, point_plan).system_sum_rate;
            if (!ns.empty()) {
                const auto measured =
                    measure_many(experiment.trials, ns, c, point_cfg, point_plan, point_seed);
                const FrameMeasurement fm = aggregate_frame(measured, point_cfg, point_plan);
                row.empirical_rate = fm.system_sum_rate;
                row.empirical_stderr = fm.system_sum_rate_stderr;
                row.failed_trials = fm.failed_trials;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace mmlink
