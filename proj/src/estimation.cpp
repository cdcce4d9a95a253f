#include "mmlink/estimation.hpp"

#include <cmath>
#include <complex>

#include "mmlink/errors.hpp"
#include "mmlink/ici.hpp"
#include "mmlink/rng.hpp"

namespace mmlink {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

PilotBook pilot_book(int pilot_length) {
    if (pilot_length < 1) throw DomainError("pilot_book: pilot_length must be >= 1");
    PilotBook book;
    book.sequences.resize(pilot_length, pilot_length);
    for (int a = 0; a < pilot_length; ++a) {
        for (int b = 0; b < pilot_length; ++b) {
            const double phase = -2.0 * kPi * a * b / pilot_length;
            book.sequences(a, b) = std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return book;
}

EstimateBlock ls_estimate(const ChannelBlock& block, const AllocationPlan& plan,
                          const SystemConfig& cfg, std::uint64_t seed) {
    const int n_u = cfg.users_per_subcarrier;
    const int n_b = cfg.n_antennas;
    const PilotPlan& pilots = plan.pilot;
    if (block.pilot_channel.cols() != n_u || block.pilot_channel.rows() != n_b)
        throw PlanError("ls_estimate: channel block does not match the configuration");
    if (static_cast<int>(pilots.rosters.size()) != cfg.subcarriers_per_user)
        throw PlanError("ls_estimate: pilot plan does not match the configuration");

    const int n_p = pilots.pilot_length;
    const int n_v = pilots.pilot_carriers_per_ue;
    const double tx_amp = std::sqrt(cfg.effective_tx_power / n_v);
    const double disturbance_var =
        cfg.users_per_subcarrier * cfg.effective_tx_power * ici_variance(cfg) /
            cfg.subcarriers_per_user +
        cfg.noise_variance;
    const PilotBook book = pilot_book(n_p);

    // The estimate is taken from the group's first coherence block; every UE pilots
    // somewhere in it, and the block shares one channel realization.
    const int block_size = std::min(cfg.subcarriers_per_user, pilots.n_coherence_subcarriers);

    EstimateBlock out;
    out.estimate.resize(n_b, n_u);
    out.estimate.setZero();
    out.variance = estimate_variance(cfg, pilots);
    std::vector<bool> estimated(n_u, false);

    for (int s = 0; s < block_size; ++s) {
        const auto& roster = pilots.rosters[s];
        if (roster.empty()) continue;
        if (static_cast<int>(roster.size()) > n_p)
            throw PlanError("ls_estimate: roster exceeds the pilot length");

        // Received pilot block on subcarrier s: Y = tx_amp * sum_a h_{roster[a]} Phi_a + W.
        Eigen::MatrixXcd received(n_b, n_p);
        {
            Rng rng(mix(seed, kTagPilotNoise, static_cast<std::uint64_t>(s)));
            for (int t = 0; t < n_p; ++t)
                for (int m = 0; m < n_b; ++m)
                    received(m, t) = rng.complex_normal(disturbance_var);
        }
        for (int a = 0; a < static_cast<int>(roster.size()); ++a)
            received.noalias() +=
                tx_amp * block.pilot_channel.col(roster[a]) * book.sequences.row(a);

        // Correlation against each assigned sequence: hhat = Y Phi_a^H / (N_P tx_amp).
        for (int a = 0; a < static_cast<int>(roster.size()); ++a) {
            const int ue = roster[a];
            if (ue < 0 || ue >= n_u) throw PlanError("ls_estimate: roster UE slot out of range");
            if (estimated[ue]) throw PlanError("ls_estimate: UE piloted twice in one block");
            out.estimate.col(ue) =
                received * book.sequences.row(a).adjoint() / (n_p * tx_amp);
            estimated[ue] = true;
        }
    }
    for (int ue = 0; ue < n_u; ++ue)
        if (!estimated[ue])
            throw PlanError("ls_estimate: UE slot " + std::to_string(ue) +
                            " has no pilot in the first coherence block");

    out.error = out.estimate - block.pilot_channel;
    return out;
}

double estimate_variance(const SystemConfig& cfg, const PilotPlan& plan) {
    const double n_p = plan.pilot_length;
    const double n_v = plan.pilot_carriers_per_ue;
    return cfg.channel_variance +
           n_v * cfg.users_per_subcarrier * ici_variance(cfg) /
               (n_p * cfg.subcarriers_per_user) +
           n_v * cfg.noise_variance / (n_p * cfg.effective_tx_power);
}

double nmse_analytic(const SystemConfig& cfg, const PilotPlan& plan) {
    return (estimate_variance(cfg, plan) - cfg.channel_variance) / cfg.channel_variance;
}

double nmse_empirical(const SystemConfig& cfg, const AllocationPlan& plan, int trials,
                      std::uint64_t seed) {
    if (trials < 1) throw DomainError("nmse_empirical: trials must be >= 1");
    // Per-trial slots plus a fixed-order sum keep the result identical for any thread count.
    std::vector<double> ratios(trials, 0.0);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = mix(seed, static_cast<std::uint64_t>(t));
        const auto states = draw_ue_states(cfg, cfg.users_per_subcarrier, trial_seed);
        const ChannelBlock block = evolve_channel(trial_seed, states, cfg, {});
        const EstimateBlock est = ls_estimate(block, plan, cfg, trial_seed);
        ratios[t] = est.error.squaredNorm() / block.pilot_channel.squaredNorm();
    }
    double total = 0.0;
    for (double r : ratios) total += r;
    return total / trials;
}

} // namespace mmlink
