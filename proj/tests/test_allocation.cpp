#include <doctest.h>

#include <set>
#include <vector>

#include "mmlink/allocation.hpp"
#include "mmlink/errors.hpp"

using namespace mmlink;

TEST_CASE("pilot plan at the baseline: length 4, one pilot subcarrier per UE") {
    const SystemConfig cfg = baseline_config();
    const PilotPlan plan = pilot_plan(cfg, NvRule::kProofConsistent);
    CHECK(plan.pilot_length == 4); // ceil(8 / min(2, 30))
    CHECK(plan.pilot_carriers_per_ue == 1);
    CHECK(plan.coverage_complete);
    REQUIRE(plan.rosters.size() == 2);
    CHECK(plan.rosters[0] == std::vector<int>{0, 2, 4, 6}); // round-robin by UE slot
    CHECK(plan.rosters[1] == std::vector<int>{1, 3, 5, 7});
}

TEST_CASE("pilot plan structural properties hold across configurations") {
    SystemConfig cfg = baseline_config();
    for (int users : {4, 8, 16, 32, 64, 128}) {
        const SystemConfig p = with_users_per_subcarrier(cfg, users);
        const PilotPlan plan = pilot_plan(p, NvRule::kProofConsistent);

        // Pilot length never exceeds the no-reuse baseline of one symbol per UE.
        CHECK(plan.pilot_length <= users);
        CHECK(plan.pilot_length >= 1);

        // Every UE pilots at least once; within the first coherence block rosters are
        // disjoint across UEs and no roster exceeds the pilot length.
        std::set<int> seen;
        const int block = std::min(p.subcarriers_per_user, p.n_coherence_subcarriers);
        for (int s = 0; s < block; ++s) {
            CHECK(static_cast<int>(plan.rosters[s].size()) <= plan.pilot_length);
            for (int ue : plan.rosters[s]) {
                CHECK(!seen.count(ue));
                seen.insert(ue);
            }
        }
        CHECK(static_cast<int>(seen.size()) == users);
    }
}

TEST_CASE("proof-consistent and literal rules differ once a group spans blocks") {
    // 64 users on 64 subcarriers per group spans ceil(64/30) = 3 coherence blocks.
    SystemConfig cfg = baseline_config();
    cfg.n_users = 512;
    cfg.n_subcarriers = 512;
    cfg.users_per_subcarrier = 64;
    cfg.subcarriers_per_user = 64;
    cfg.total_bandwidth = 512 * cfg.subcarrier_spacing;
    cfg = validate_config(cfg);

    const PilotPlan proof = pilot_plan(cfg, NvRule::kProofConsistent);
    const PilotPlan literal = pilot_plan(cfg, NvRule::kLiteral);
    CHECK(proof.pilot_length == 3); // ceil(64/30)
    CHECK(proof.pilot_carriers_per_ue == 3);
    CHECK(literal.pilot_carriers_per_ue == 1);

    // The literal rule only schedules the first block.
    bool later_blocks_empty = true;
    for (int s = cfg.n_coherence_subcarriers; s < cfg.subcarriers_per_user; ++s)
        if (!literal.rosters[s].empty()) later_blocks_empty = false;
    CHECK(later_blocks_empty);

    // Proof-consistent fills the 4-subcarrier tail block to capacity (12 of 64 UEs)
    // and reports the shortfall.
    CHECK_FALSE(proof.coverage_complete);
    int tail = 0;
    for (int s = 60; s < 64; ++s) tail += static_cast<int>(proof.rosters[s].size());
    CHECK(tail == 12);
}

TEST_CASE("build_allocation: uniform coefficients, deterministic, correct mapping") {
    const SystemConfig cfg = baseline_config();
    const AllocationPlan a = build_allocation(cfg);
    const AllocationPlan b = build_allocation(cfg);
    CHECK(a.power_coefficients == b.power_coefficients);
    CHECK(a.n_groups == 256);
    CHECK(a.group_of_subcarrier(0) == 0);
    CHECK(a.group_of_subcarrier(511) == 255);
    CHECK(a.group_of_user(15) == 1);
    CHECK(a.coefficient_sum(7) == doctest::Approx(8.0 / 2.0).epsilon(1e-14));

    // Per-UE coefficients across the group's subcarriers sum to one.
    for (int ue = 0; ue < cfg.users_per_subcarrier; ++ue) {
        double total = 0.0;
        for (int s = 0; s < cfg.subcarriers_per_user; ++s)
            total += a.power_coefficients[s][ue];
        CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("random power coefficients live on the simplex and are reproducible") {
    const SystemConfig base = baseline_config();
    const SystemConfig cfg = with_users_per_subcarrier(base, 16); // N_C = 4
    const AllocationPlan uniform = build_allocation(cfg);
    const AllocationPlan r1 = sample_power_coefficients(uniform, cfg, PowerMode::kRandom, 42);
    const AllocationPlan r2 = sample_power_coefficients(uniform, cfg, PowerMode::kRandom, 42);
    const AllocationPlan r3 = sample_power_coefficients(uniform, cfg, PowerMode::kRandom, 43);
    CHECK(r1.power_coefficients == r2.power_coefficients);
    CHECK(r1.power_coefficients != r3.power_coefficients);

    for (int g = 0; g < cfg.n_groups; ++g) {
        for (int k = 0; k < cfg.users_per_subcarrier; ++k) {
            double total = 0.0;
            for (int s = 0; s < cfg.subcarriers_per_user; ++s) {
                const double c = r1.power_coefficients[g * cfg.subcarriers_per_user + s][k];
                CHECK(c >= 0.0);
                CHECK(c <= 1.0);
                total += c;
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    // Uniform mode restores the 1/N_C coefficients.
    const AllocationPlan back = sample_power_coefficients(r1, cfg, PowerMode::kUniform, 0);
    CHECK(back.power_coefficients == uniform.power_coefficients);
}

TEST_CASE("plans require a validated configuration") {
    SystemConfig raw;
    CHECK_THROWS_AS(build_allocation(raw), PlanError);
    CHECK_THROWS_AS(pilot_plan(raw, NvRule::kProofConsistent), PlanError);
}
