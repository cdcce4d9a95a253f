#pragma once

#include <cstdint>
#include <vector>

#include "mmlink/config.hpp"

namespace mmlink {

// Pilot schedule for one UE group across its subcarriers. Because every group has the
// same size and the channel is flat within a coherence block, one schedule describes
// all groups; rosters[s] lists the UE slots (0..users_per_subcarrier-1) that transmit
// pilots on the group's s-th subcarrier.
struct PilotPlan {
    int pilot_length = 0;           // pilot symbols per frame (N_P)
    int pilot_carriers_per_ue = 0;  // subcarriers each UE pilots on (N_V)
    int n_coherence_subcarriers = 0;
    std::vector<std::vector<int>> rosters; // one entry per subcarrier of the group
    // False only when a coherence block is too small to host a pilot from every UE
    // within pilot_length symbols (then later blocks are filled to capacity and the
    // remaining UEs rely on their first-block estimate).
    bool coverage_complete = true;
};

// Static UE <-> subcarrier mapping plus per-subcarrier power coefficients.
// Group g owns subcarriers [g*N_C, (g+1)*N_C) and UEs [g*N_U, (g+1)*N_U).
// power_coefficients[i][k] is the fraction of UE-slot k's power spent on subcarrier i
// (i global, k local to i's group); each UE's coefficients sum to 1 over its group.
struct AllocationPlan {
    int n_groups = 0;
    int users_per_subcarrier = 0;
    int subcarriers_per_user = 0;
    PilotPlan pilot;
    std::vector<std::vector<double>> power_coefficients; // [n_subcarriers][users_per_subcarrier]

    int group_of_subcarrier(int i) const { return i / subcarriers_per_user; }
    int group_of_user(int ue) const { return ue / users_per_subcarrier; }
    // Sum of the power coefficients on subcarrier i across its UE slots.
    double coefficient_sum(int i) const {
        double s = 0.0;
        for (double c : power_coefficients[i]) s += c;
        return s;
    }
};

enum class PowerMode { kUniform, kRandom };

// Pilot schedule: pilot_length = ceil(N_U / min(N_C, N_H)); pilot_carriers_per_ue per
// the chosen rule; rosters assigned round-robin (UE slot u pilots on subcarrier
// block_start + u mod block_size of each coherence block its group spans, oldest UEs
// first when a block cannot host everyone).
PilotPlan pilot_plan(const SystemConfig& cfg, NvRule rule);

// Contiguous groups in index order with uniform power coefficients and the pilot plan
// from cfg.nv_rule. Deterministic.
AllocationPlan build_allocation(const SystemConfig& cfg);

// Replaces the power coefficients: uniform sets every coefficient to 1/N_C; random
// draws each UE's coefficients from the flat simplex (sorted-uniform spacings) with a
// per-UE substream of `seed`, so per-UE sums stay 1 and results are reproducible.
AllocationPlan sample_power_coefficients(const AllocationPlan& plan, const SystemConfig& cfg,
                                         PowerMode mode, std::uint64_t seed);

} // namespace mmlink
