#pragma once

#include <map>
#include <string>
#include <vector>

#include "mmlink/allocation.hpp"
#include "mmlink/config.hpp"

namespace mmlink {

enum class Combiner { kZf, kMrc };

std::string combiner_name(Combiner c);

// Analytic per-symbol SINR lower bounds for one UE on one subcarrier, n symbols after
// the pilot epoch. eta is the UE's power coefficient on this subcarrier, eta_bar the
// coefficient sum over the subcarrier's UE slots, moment the speed-averaged squared
// aging autocorrelation at n (see aging_moment).
//
// Zero-forcing: ((N_B - N_U + 1) eta sigma_hhat^2 moment) / D with
//   D = (N_U sigma_u^2/N_C + sigma_n^2/P_T) (1 + (N_V eta_bar/N_P) moment)
//     + eta_bar sigma_h^2 (1 - moment).
// Maximal-ratio: (N_B eta sigma_hhat^2 moment) / (D + sigma_hhat^2 eta_bar moment).
double zf_sinr(double moment, double eta, double eta_bar, const SystemConfig& cfg,
               const PilotPlan& plan);
double mrc_sinr(double moment, double eta, double eta_bar, const SystemConfig& cfg,
                const PilotPlan& plan);

// Convenience overloads evaluating the aging moment internally for symbol index n.
double zf_sinr_at(int n, double eta, double eta_bar, const SystemConfig& cfg,
                  const PilotPlan& plan);
double mrc_sinr_at(int n, double eta, double eta_bar, const SystemConfig& cfg,
                   const PilotPlan& plan);

// Spectral-efficiency map: spacing * log2(1 + sinr), in bits/s.
double per_symbol_rate(double sinr, const SystemConfig& cfg);

// Frame-level aggregate for one combiner.
struct RateResult {
    Combiner combiner = Combiner::kZf;
    std::vector<double> per_symbol_sinr; // index 0 holds n = 1
    std::vector<double> per_symbol_rate; // bits/s
    double per_ue_frame_rate = 0.0;      // (1/(N_P + N_D)) sum_n rate[n], bits/s
    double system_sum_rate = 0.0;        // summed over all subcarriers and UE slots
    double pilot_percentage = 0.0;       // 100 N_P / (N_P + N_D)
};

// Evaluates the per-symbol trajectory for n = 1..frame_data_length and the frame
// averages. Under uniform power coefficients every (subcarrier, UE) pair is identical
// and the system sum collapses to N_G * N_U * per-UE rate; general coefficients are
// summed pair by pair. `moments`, when given, must hold aging_moment(n) at index n-1
// for n = 1..frame_data_length (a shared cache for sweeps); otherwise moments are
// computed here with a horizon of max(64, frame_data_length).
RateResult sum_rate(Combiner combiner, const SystemConfig& cfg, const AllocationPlan& plan,
                    const std::vector<double>* moments = nullptr);

// Analytic per-symbol rate for the first UE slot of the first subcarrier (the
// representative pair under uniform coefficients), shared by sweeps and presets so
// every emitter produces bit-identical values for the same parameters.
double analytic_symbol_rate(Combiner combiner, int n, const SystemConfig& cfg,
                            const AllocationPlan& plan);

// Evaluates sum_rate at every frame length in the grid and returns the first maximizer
// (ties break toward the smaller frame length) with its result.
std::pair<int, RateResult> optimize_frame_length(Combiner combiner, const SystemConfig& cfg,
                                                 const AllocationPlan& plan,
                                                 const std::vector<int>& n_d_grid);

double pilot_percentage(int n_pilot, int n_data);

} // namespace mmlink
