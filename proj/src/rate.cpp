#include "mmlink/rate.hpp"

#include <algorithm>
#include <cmath>

#include "mmlink/channel.hpp"
#include "mmlink/errors.hpp"
#include "mmlink/estimation.hpp"
#include "mmlink/ici.hpp"

namespace mmlink {

std::string combiner_name(Combiner c) { return c == Combiner::kZf ? "zf" : "mrc"; }

namespace {

// Shared denominator D of both SINR bounds.
double interference_floor(double moment, double eta_bar, const SystemConfig& cfg,
                          const PilotPlan& plan) {
    const double residual = cfg.users_per_subcarrier * ici_variance(cfg) /
                                cfg.subcarriers_per_user +
                            cfg.noise_variance / cfg.effective_tx_power;
    const double pilot_share =
        static_cast<double>(plan.pilot_carriers_per_ue) / plan.pilot_length;
    return residual * (1.0 + pilot_share * eta_bar * moment) +
           eta_bar * cfg.channel_variance * (1.0 - moment);
}

void check_sinr_inputs(double moment, double eta, double eta_bar) {
    if (!(moment >= 0.0 && moment <= 1.0))
        throw DomainError("sinr: aging moment must lie in [0, 1]");
    if (!(eta >= 0.0) || !(eta_bar >= eta))
        throw DomainError("sinr: need 0 <= eta <= eta_bar");
}

} // namespace

double zf_sinr(double moment, double eta, double eta_bar, const SystemConfig& cfg,
               const PilotPlan& plan) {
    check_sinr_inputs(moment, eta, eta_bar);
    if (cfg.n_antennas <= cfg.users_per_subcarrier - 1)
        throw RegimeError("zf_sinr: needs more antennas than UE slots per subcarrier");
    const double numerator = (cfg.n_antennas - cfg.users_per_subcarrier + 1) * eta *
                             estimate_variance(cfg, plan) * moment;
    return numerator / interference_floor(moment, eta_bar, cfg, plan);
}

double mrc_sinr(double moment, double eta, double eta_bar, const SystemConfig& cfg,
                const PilotPlan& plan) {
    check_sinr_inputs(moment, eta, eta_bar);
    const double var_hat = estimate_variance(cfg, plan);
    const double numerator = cfg.n_antennas * eta * var_hat * moment;
    return numerator /
           (interference_floor(moment, eta_bar, cfg, plan) + var_hat * eta_bar * moment);
}

double zf_sinr_at(int n, double eta, double eta_bar, const SystemConfig& cfg,
                  const PilotPlan& plan) {
    return zf_sinr(aging_moment(n, cfg), eta, eta_bar, cfg, plan);
}

double mrc_sinr_at(int n, double eta, double eta_bar, const SystemConfig& cfg,
                   const PilotPlan& plan) {
    return mrc_sinr(aging_moment(n, cfg), eta, eta_bar, cfg, plan);
}

double per_symbol_rate(double sinr, const SystemConfig& cfg) {
    if (!(sinr >= 0.0)) throw DomainError("per_symbol_rate: sinr must be >= 0");
    return cfg.subcarrier_spacing * std::log2(1.0 + sinr);
}

RateResult sum_rate(Combiner combiner, const SystemConfig& cfg, const AllocationPlan& plan,
                    const std::vector<double>* moments) {
    const int n_d = cfg.frame_data_length;
    const int n_p = plan.pilot.pilot_length;

    std::vector<double> local_moments;
    if (moments == nullptr) {
        local_moments.reserve(n_d);
        const int horizon = std::max(64, n_d);
        for (int n = 1; n <= n_d; ++n)
            local_moments.push_back(aging_moment(n, cfg, horizon));
        moments = &local_moments;
    } else if (static_cast<int>(moments->size()) < n_d) {
        throw DomainError("sum_rate: moment cache shorter than the frame");
    }

    RateResult result;
    result.combiner = combiner;
    result.pilot_percentage = pilot_percentage(n_p, n_d);

    const bool uniform = [&] {
        const double ref = 1.0 / cfg.subcarriers_per_user;
        for (const auto& row : plan.power_coefficients)
            for (double c : row)
                if (c != ref) return false;
        return true;
    }();

    auto sinr_of = [&](double moment, double eta, double eta_bar) {
        return combiner == Combiner::kZf ? zf_sinr(moment, eta, eta_bar, cfg, plan.pilot)
                                         : mrc_sinr(moment, eta, eta_bar, cfg, plan.pilot);
    };

    const double uniform_eta = 1.0 / cfg.subcarriers_per_user;
    const double uniform_eta_bar =
        static_cast<double>(cfg.users_per_subcarrier) / cfg.subcarriers_per_user;

    result.per_symbol_sinr.resize(n_d, 0.0);
    result.per_symbol_rate.resize(n_d, 0.0);
    double frame_sum = 0.0; // representative UE under uniform coefficients
    for (int n = 1; n <= n_d; ++n) {
        const double moment = (*moments)[n - 1];
        const double sinr = sinr_of(moment, uniform_eta, uniform_eta_bar);
        result.per_symbol_sinr[n - 1] = sinr;
        result.per_symbol_rate[n - 1] = per_symbol_rate(sinr, cfg);
        frame_sum += result.per_symbol_rate[n - 1];
    }
    result.per_ue_frame_rate = (n_d == 0) ? 0.0 : frame_sum / (n_p + n_d);

    if (uniform) {
        result.system_sum_rate = static_cast<double>(cfg.n_subcarriers) *
                                 cfg.users_per_subcarrier * result.per_ue_frame_rate;
        return result;
    }

    // General coefficients: every (subcarrier, UE-slot) pair contributes its own frame
    // average. eta_bar varies per subcarrier.
    double total = 0.0;
    for (int i = 0; i < cfg.n_subcarriers; ++i) {
        const double eta_bar = plan.coefficient_sum(i);
        for (int k = 0; k < cfg.users_per_subcarrier; ++k) {
            const double eta = plan.power_coefficients[i][k];
            double frame = 0.0;
            for (int n = 1; n <= n_d; ++n)
                frame += per_symbol_rate(sinr_of((*moments)[n - 1], eta, eta_bar), cfg);
            total += (n_d == 0) ? 0.0 : frame / (n_p + n_d);
        }
    }
    result.system_sum_rate = total;
    return result;
}

double analytic_symbol_rate(Combiner combiner, int n, const SystemConfig& cfg,
                            const AllocationPlan& plan) {
    const double eta = plan.power_coefficients.at(0).at(0);
    const double eta_bar = plan.coefficient_sum(0);
    const double moment = aging_moment(n, cfg, std::max(64, n));
    const double sinr = combiner == Combiner::kZf
                            ? zf_sinr(moment, eta, eta_bar, cfg, plan.pilot)
                            : mrc_sinr(moment, eta, eta_bar, cfg, plan.pilot);
    return per_symbol_rate(sinr, cfg);
}

std::pair<int, RateResult> optimize_frame_length(Combiner combiner, const SystemConfig& cfg,
                                                 const AllocationPlan& plan,
                                                 const std::vector<int>& n_d_grid) {
    if (n_d_grid.empty()) throw DomainError("optimize_frame_length: empty grid");
    const int max_nd = *std::max_element(n_d_grid.begin(), n_d_grid.end());
    const int horizon = std::max(64, max_nd);
    std::vector<double> moments;
    moments.reserve(max_nd);
    for (int n = 1; n <= max_nd; ++n) moments.push_back(aging_moment(n, cfg, horizon));

    int best_nd = -1;
    RateResult best;
    for (int n_d : n_d_grid) {
        if (n_d < 0) throw DomainError("optimize_frame_length: frame length must be >= 0");
        const SystemConfig point = with_frame_data_length(cfg, n_d);
        const RateResult r = sum_rate(combiner, point, plan, &moments);
        const bool better =
            best_nd < 0 || r.system_sum_rate > best.system_sum_rate ||
            (r.system_sum_rate == best.system_sum_rate && n_d < best_nd);
        if (better) {
            best_nd = n_d;
            best = r;
        }
    }
    return {best_nd, best};
}

double pilot_percentage(int n_pilot, int n_data) {
    if (n_pilot < 1) throw DomainError("pilot_percentage: pilot length must be >= 1");
    if (n_data < 0) throw DomainError("pilot_percentage: data length must be >= 0");
    return 100.0 * n_pilot / (n_pilot + n_data);
}

} // namespace mmlink
