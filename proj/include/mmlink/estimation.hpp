#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "mmlink/allocation.hpp"
#include "mmlink/channel.hpp"
#include "mmlink/config.hpp"

namespace mmlink {

// Orthogonal pilot sequences: Phi[a][b] = exp(-2 pi sqrt(-1) a b / N_P), rows are the
// per-UE sequences; Phi Phi^H = N_P I.
struct PilotBook {
    Eigen::MatrixXcd sequences; // N_P x N_P
};

PilotBook pilot_book(int pilot_length);

// Least-squares channel estimate for one UE group, produced by explicitly simulating
// the pilot phase on each piloted subcarrier of the group's first coherence block.
struct EstimateBlock {
    Eigen::MatrixXcd estimate;    // N_B x N_U
    Eigen::MatrixXcd error;       // estimate - pilot_channel, column variance uniform
    double variance = 0.0;        // analytic per-entry variance of `estimate`
};

// Simulates pilot_length symbols per piloted subcarrier: each roster UE transmits its
// pilot sequence at power P_T / N_V, the receiver sees Gaussian ICI-plus-noise of
// per-entry variance N_U P_T sigma_u^2 / N_C + sigma_n^2, and correlation against the
// sequence yields the estimate. UEs piloting on another subcarrier of the same
// coherence block contribute their estimate from there (the channel is identical
// within the block). Bit-reproducible for a fixed seed.
EstimateBlock ls_estimate(const ChannelBlock& block, const AllocationPlan& plan,
                          const SystemConfig& cfg, std::uint64_t seed);

// Analytic per-entry variance of the LS estimate:
// sigma_h^2 + (N_V N_U / (N_P N_C)) sigma_u^2 + (N_V / (N_P P_T)) sigma_n^2.
double estimate_variance(const SystemConfig& cfg, const PilotPlan& plan);

// Normalized estimation error (variance ratio). Analytic value
// (estimate_variance - sigma_h^2) / sigma_h^2.
double nmse_analytic(const SystemConfig& cfg, const PilotPlan& plan);

// Empirical counterpart: mean ||estimate - pilot_channel||^2 / ||pilot_channel||^2 over
// `trials` frames, each with fresh mobility, channel, and pilot noise.
double nmse_empirical(const SystemConfig& cfg, const AllocationPlan& plan, int trials,
                      std::uint64_t seed);

} // namespace mmlink
