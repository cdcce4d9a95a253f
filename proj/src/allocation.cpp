#include "mmlink/allocation.hpp"

#include <algorithm>
#include <cmath>

#include "mmlink/errors.hpp"
#include "mmlink/rng.hpp"

namespace mmlink {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

void require_validated(const SystemConfig& cfg) {
    if (!cfg.validated) throw PlanError("configuration has not been validated");
}

} // namespace

PilotPlan pilot_plan(const SystemConfig& cfg, NvRule rule) {
    require_validated(cfg);
    const int n_u = cfg.users_per_subcarrier;
    const int n_c = cfg.subcarriers_per_user;
    const int n_h = cfg.n_coherence_subcarriers;

    PilotPlan plan;
    plan.n_coherence_subcarriers = n_h;
    plan.pilot_length = ceil_div(n_u, std::min(n_c, n_h));
    const int blocks_spanned = ceil_div(n_c, n_h);
    plan.pilot_carriers_per_ue =
        (rule == NvRule::kProofConsistent) ? std::max(1, blocks_spanned)
                                           : std::min(1, blocks_spanned);
    plan.rosters.assign(n_c, {});

    // One pilot appearance per UE in each coherence block the group spans (first block
    // only under the literal rule), assigned round-robin across the block's subcarriers.
    const int blocks_used = (rule == NvRule::kProofConsistent) ? blocks_spanned : 1;
    for (int b = 0; b < blocks_used; ++b) {
        const int start = b * n_h;
        const int size = std::min(n_h, n_c - start);
        const int capacity = size * plan.pilot_length;
        if (capacity < n_u) plan.coverage_complete = false;
        const int hosted = std::min(n_u, capacity);
        for (int u = 0; u < hosted; ++u)
            plan.rosters[start + u % size].push_back(u);
    }
    return plan;
}

AllocationPlan build_allocation(const SystemConfig& cfg) {
    require_validated(cfg);
    AllocationPlan plan;
    plan.n_groups = cfg.n_groups;
    plan.users_per_subcarrier = cfg.users_per_subcarrier;
    plan.subcarriers_per_user = cfg.subcarriers_per_user;
    plan.pilot = pilot_plan(cfg, cfg.nv_rule);
    plan.power_coefficients.assign(
        cfg.n_subcarriers,
        std::vector<double>(cfg.users_per_subcarrier, 1.0 / cfg.subcarriers_per_user));
    return plan;
}

AllocationPlan sample_power_coefficients(const AllocationPlan& plan, const SystemConfig& cfg,
                                         PowerMode mode, std::uint64_t seed) {
    require_validated(cfg);
    if (static_cast<int>(plan.power_coefficients.size()) != cfg.n_subcarriers)
        throw PlanError("allocation plan does not match the configuration");

    AllocationPlan out = plan;
    const int n_c = cfg.subcarriers_per_user;
    if (mode == PowerMode::kUniform) {
        for (auto& row : out.power_coefficients)
            std::fill(row.begin(), row.end(), 1.0 / n_c);
        return out;
    }

    // Flat-simplex draw per UE: spacings of n_c - 1 sorted uniforms partition [0, 1].
    const int n_u = cfg.users_per_subcarrier;
    for (int g = 0; g < cfg.n_groups; ++g) {
        for (int k = 0; k < n_u; ++k) {
            const std::uint64_t ue = static_cast<std::uint64_t>(g) * n_u + k;
            Rng rng(mix(seed, kTagPowerCoeff, ue));
            std::vector<double> cuts(n_c - 1);
            for (double& c : cuts) c = rng.uniform();
            std::sort(cuts.begin(), cuts.end());
            double prev = 0.0;
            for (int s = 0; s < n_c; ++s) {
                const double next = (s == n_c - 1) ? 1.0 : cuts[s];
                out.power_coefficients[g * n_c + s][k] = next - prev;
                prev = next;
            }
        }
    }
    return out;
}

} // namespace mmlink
