#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mmlink/allocation.hpp"
#include "mmlink/channel.hpp"
#include "mmlink/config.hpp"
#include "mmlink/estimation.hpp"
#include "mmlink/rate.hpp"

namespace mmlink {

// Reported SINR is clamped here when a measurement has zero residual power
// (noise-free, fully nulled); the result is flagged instead of returning infinity.
inline constexpr double kSinrCeiling = 1e12;

// Number of equal trial blocks used for the Monte Carlo standard error.
inline constexpr int kErrorBatches = 20;

// One received data symbol on the representative subcarrier, with every additive piece
// retained. r is formed as desired + ici + noise (so the sum is exact by construction);
// the desired term is additionally split through the estimate into
// known/estimation-error/aging parts (these sum to `desired` up to rounding).
struct ReceivedSymbol {
    int n = 0;
    Eigen::VectorXcd x;        // unit-modulus transmitted symbols (N_U)
    Eigen::VectorXcd desired;  // sqrt(P_T) aged * diag(sqrt eta) * x (N_B)
    Eigen::VectorXcd ici;      // CN(0, N_U P_T sigma_u^2 / N_C) per entry
    Eigen::VectorXcd noise;    // CN(0, sigma_n^2) per entry
    Eigen::VectorXcd r;        // desired + ici + noise
    Eigen::VectorXcd known_part;     //  sqrt(P_T) estimate * diag(rho) diag(sqrt eta) x
    Eigen::VectorXcd est_error_part; // -sqrt(P_T) error    * diag(rho) diag(sqrt eta) x
    Eigen::VectorXcd aging_part;     //  sqrt(P_T) innovation * diag(sqrt eta) x
};

// Draws symbols, ICI, and noise from per-(seed, purpose, n) substreams and assembles
// the received vector using the aged channel for symbol index n (which must have been
// materialized in `block` and lie in [1, frame_data_length]).
ReceivedSymbol synthesize_symbol(const ChannelBlock& block, const EstimateBlock& est, int n,
                                 const AllocationPlan& plan, const SystemConfig& cfg,
                                 std::uint64_t seed);

// Combiner outputs for one symbol: the combined receive vector and the same combiner
// applied to each stored component (their sums match y up to rounding).
struct CombinedSymbol {
    Eigen::VectorXcd y;
    Eigen::VectorXcd desired, ici, noise;
    Eigen::VectorXcd known_part, est_error_part, aging_part;
};

// ZF applies the pseudoinverse of the estimate (throws SingularityError when the
// estimate is rank deficient); MRC applies its adjoint.
CombinedSymbol combine(const ReceivedSymbol& sym, const EstimateBlock& est,
                       Combiner combiner);

// Aggregated measurement at one symbol index.
struct TrialResult {
    Combiner combiner = Combiner::kZf;
    int n = 0;
    long trials = 0;
    long failed_trials = 0;               // rank-deficient ZF trials, dropped
    std::vector<double> signal_power;     // per UE slot, mean |desired_k|^2
    std::vector<double> interference_power; // per UE slot, mean |y_k - desired_k|^2
    std::vector<double> sinr_per_ue;
    double empirical_sinr = 0.0;          // pooled over UE slots
    double empirical_rate = 0.0;          // bits/s
    double empirical_stderr = 0.0;        // bits/s, from kErrorBatches trial blocks
    std::vector<double> batch_sinr;       // pooled SINR per trial block
    bool capped = false;                  // some ratio hit kSinrCeiling
};

// Measures the empirical SINR at each listed symbol index with shared trials: each
// trial draws one mobility/channel/estimate realization and one symbol per index. The
// signal convention follows the analytic bounds: ZF scores the known-channel term
// sqrt(P_T eta_k) rho_k x_k as desired; MRC scores the expected beamforming gain
// sqrt(P_T eta_k) rho_k N_B sigma_hhat^2 x_k, counting the gain fluctuation as
// interference. Results are bit-identical for any thread count (per-trial substreams,
// slot storage, fixed-order reduction); `parallel=false` is the serial reference.
std::vector<TrialResult> measure_many(long trials, const std::vector<int>& symbol_indices,
                                      Combiner combiner, const SystemConfig& cfg,
                                      const AllocationPlan& plan, std::uint64_t master_seed,
                                      bool parallel = true);

// Single-index convenience wrapper; equals the matching column of measure_many.
TrialResult measure_sinr(long trials, int n, Combiner combiner, const SystemConfig& cfg,
                         const AllocationPlan& plan, std::uint64_t master_seed,
                         bool parallel = true);

// Frame-level aggregation of per-symbol measurements for n = 1..frame_data_length:
// per-UE frame rate, system sum-rate, and a batch-based standard error of the sum-rate.
struct FrameMeasurement {
    double per_ue_frame_rate = 0.0;
    double system_sum_rate = 0.0;
    double system_sum_rate_stderr = 0.0;
    long failed_trials = 0;
    bool capped = false;
};

FrameMeasurement aggregate_frame(const std::vector<TrialResult>& per_symbol,
                                 const SystemConfig& cfg, const AllocationPlan& plan);

// Sweep descriptions for Monte Carlo campaigns.
enum class SweepAxis { kSymbolIndex, kVmax, kUsersPerSubcarrier, kFrameLength, kSnrDb };

std::string sweep_axis_name(SweepAxis axis); // CSV column name for the swept value

struct Experiment {
    SweepAxis axis = SweepAxis::kSymbolIndex;
    std::vector<double> grid; // integer-valued entries for integer axes
    long trials = 20000;
};

// One output row per (grid point, combiner).
struct CampaignRow {
    double swept_value = 0.0;
    Combiner combiner = Combiner::kZf;
    double analytic_rate = 0.0;   // bits/s; per-symbol rate on the n axis, sum-rate otherwise
    double empirical_rate = 0.0;  // bits/s, same convention
    double empirical_stderr = 0.0;
    long failed_trials = 0;
};

// Runs measure_many per grid point (symbol-index sweeps share one trial set; the other
// axes measure a full frame per point) against the matching analytic value.
// Deterministic in (cfg, plan, experiment, combiners, master_seed).
std::vector<CampaignRow> run_campaign(const Experiment& experiment,
                                      const std::vector<Combiner>& combiners,
                                      const SystemConfig& cfg, const AllocationPlan& plan,
                                      std::uint64_t master_seed);

} // namespace mmlink
