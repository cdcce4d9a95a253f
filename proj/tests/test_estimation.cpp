#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "mmlink/errors.hpp"
#include "mmlink/estimation.hpp"
#include "mmlink/ici.hpp"
#include "oracles.hpp"

using namespace mmlink;

namespace {

// Estimation statistics do not depend on the antenna count, so shrink it for speed.
SystemConfig small_cfg() {
    SystemConfig cfg = baseline_config();
    cfg.n_antennas = 32;
    return validate_config(cfg);
}

bool same_bits(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), sizeof(std::complex<double>) * a.size()) == 0;
}

} // namespace

TEST_CASE("pilot book rows are orthogonal unit-modulus sequences") {
    const PilotBook book = pilot_book(4);
    REQUIRE(book.sequences.rows() == 4);
    REQUIRE(book.sequences.cols() == 4);
    for (int b = 0; b < 4; ++b) CHECK(book.sequences(0, b) == std::complex<double>(1.0, 0.0));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            CHECK(std::abs(book.sequences(a, b)) == doctest::Approx(1.0).epsilon(1e-14));
    const Eigen::MatrixXcd gram = book.sequences * book.sequences.adjoint();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const std::complex<double> want = (a == b) ? 4.0 : 0.0;
            CHECK(std::abs(gram(a, b) - want) < 1e-12);
        }
    CHECK_THROWS_AS(pilot_book(0), DomainError);
}

TEST_CASE("analytic estimate variance at the reference operating point") {
    const SystemConfig cfg = baseline_config();
    const PilotPlan plan = pilot_plan(cfg, cfg.nv_rule);
    REQUIRE(plan.pilot_length == 4);
    REQUIRE(plan.pilot_carriers_per_ue == 1);
    CHECK(estimate_variance(cfg, plan) ==
          doctest::Approx(oracle::kEstimateVar_reference).epsilon(1e-9));
    CHECK(nmse_analytic(cfg, plan) ==
          (estimate_variance(cfg, plan) - cfg.channel_variance) / cfg.channel_variance);
}

TEST_CASE("analytic NMSE falls with SNR toward the interference floor") {
    const SystemConfig cfg = baseline_config();
    const PilotPlan plan = pilot_plan(cfg, cfg.nv_rule);
    const double floor = plan.pilot_carriers_per_ue * cfg.users_per_subcarrier *
                         ici_variance(cfg) /
                         (plan.pilot_length * cfg.subcarriers_per_user * cfg.channel_variance);
    double prev = 1e300;
    for (double snr = -10.0; snr <= 40.0; snr += 10.0) {
        const double nmse = nmse_analytic(with_snr_db(cfg, snr), plan);
        CHECK(nmse > floor); // the Doppler term never washes out
        CHECK(nmse < prev);  // but the noise term decays monotonically
        prev = nmse;
    }
    // At 40 dB the noise contribution is small, so the floor dominates.
    CHECK(prev < 1.5 * floor);
}

TEST_CASE("least-squares estimate: shape, error identity, and determinism") {
    const SystemConfig cfg = small_cfg();
    const AllocationPlan plan = build_allocation(cfg);
    const auto states = draw_ue_states(cfg, cfg.users_per_subcarrier, 3);
    const ChannelBlock block = evolve_channel(3, states, cfg, {});

    const EstimateBlock est = ls_estimate(block, plan, cfg, 17);
    REQUIRE(est.estimate.rows() == cfg.n_antennas);
    REQUIRE(est.estimate.cols() == cfg.users_per_subcarrier);
    Eigen::MatrixXcd diff = est.estimate - block.pilot_channel;
    CHECK(same_bits(diff, est.error));
    CHECK(est.variance == estimate_variance(cfg, plan.pilot));

    const EstimateBlock again = ls_estimate(block, plan, cfg, 17);
    CHECK(same_bits(again.estimate, est.estimate));
    const EstimateBlock other = ls_estimate(block, plan, cfg, 18);
    CHECK_FALSE(same_bits(other.estimate, est.estimate));
}

TEST_CASE("least-squares estimate rejects corrupted pilot plans") {
    const SystemConfig cfg = small_cfg();
    const auto states = draw_ue_states(cfg, cfg.users_per_subcarrier, 3);
    const ChannelBlock block = evolve_channel(3, states, cfg, {});

    AllocationPlan duplicated = build_allocation(cfg);
    duplicated.pilot.rosters[0] = {0, 0, 2, 4};
    CHECK_THROWS_AS(ls_estimate(block, duplicated, cfg, 1), PlanError);

    AllocationPlan uncovered = build_allocation(cfg);
    uncovered.pilot.rosters[1] = {1, 3, 5}; // UE slot 7 loses its pilot
    CHECK_THROWS_AS(ls_estimate(block, uncovered, cfg, 1), PlanError);

    AllocationPlan oversized = build_allocation(cfg);
    oversized.pilot.rosters[0] = {0, 2, 4, 6, 7}; // more UEs than pilot symbols
    CHECK_THROWS_AS(ls_estimate(block, oversized, cfg, 1), PlanError);

    AllocationPlan mismatched = build_allocation(cfg);
    mismatched.pilot.rosters.resize(3);
    CHECK_THROWS_AS(ls_estimate(block, mismatched, cfg, 1), PlanError);

    SystemConfig tall = baseline_config(); // 256 antennas vs the block's 32
    const AllocationPlan plan = build_allocation(tall);
    CHECK_THROWS_AS(ls_estimate(block, plan, tall, 1), PlanError);
}

TEST_CASE("estimation error statistics match the analytic variance split") {
    const SystemConfig cfg = small_cfg();
    const AllocationPlan plan = build_allocation(cfg);
    const double var_est = estimate_variance(cfg, plan.pilot);
    const double var_err = var_est - cfg.channel_variance;

    const int kTrials = 2000;
    double est_power = 0.0, err_power = 0.0;
    std::complex<double> err_vs_true(0.0, 0.0); // E[g conj(h)]    -> 0
    std::complex<double> err_vs_est(0.0, 0.0);  // E[g conj(hhat)] -> var_err
    for (int t = 0; t < kTrials; ++t) {
        const auto states = draw_ue_states(cfg, cfg.users_per_subcarrier, 500 + t);
        const ChannelBlock block = evolve_channel(500 + t, states, cfg, {});
        const EstimateBlock est = ls_estimate(block, plan, cfg, 500 + t);
        est_power += est.estimate.squaredNorm();
        err_power += est.error.squaredNorm();
        err_vs_true += (block.pilot_channel.conjugate().cwiseProduct(est.error)).sum();
        err_vs_est += (est.estimate.conjugate().cwiseProduct(est.error)).sum();
    }
    const double entries =
        static_cast<double>(kTrials) * cfg.n_antennas * cfg.users_per_subcarrier;

    const double se_est = var_est / std::sqrt(entries);
    CHECK(std::abs(est_power / entries - var_est) <= 3.0 * se_est);

    const double se_err = var_err / std::sqrt(entries);
    CHECK(std::abs(err_power / entries - var_err) <= 3.0 * se_err);

    // The error is uncorrelated with the true channel ...
    const double se_cross = std::sqrt(var_err * cfg.channel_variance / entries);
    CHECK(std::abs(err_vs_true) / entries <= 4.0 * se_cross);
    // ... which makes it correlated with the estimate it sits inside: E[g conj(hhat)]
    // equals the full error variance, not zero.
    CHECK(std::abs(err_vs_est / entries - var_err) <= 4.0 * se_cross);
}

TEST_CASE("empirical NMSE agrees with the analytic ratio") {
    const SystemConfig cfg = small_cfg();
    const AllocationPlan plan = build_allocation(cfg);
    const double analytic = nmse_analytic(cfg, plan.pilot);
    const double empirical = nmse_empirical(cfg, plan, 4000, 2024);
    CHECK(std::abs(empirical - analytic) / analytic < 0.05);
    CHECK(nmse_empirical(cfg, plan, 50, 9) == nmse_empirical(cfg, plan, 50, 9));
    CHECK_THROWS_AS(nmse_empirical(cfg, plan, 0, 1), DomainError);
}
