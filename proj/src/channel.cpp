#include "mmlink/channel.hpp"

#include <cmath>

#include "mmlink/errors.hpp"
#include "mmlink/quad.hpp"
#include "mmlink/rng.hpp"
#include "mmlink/special.hpp"

namespace mmlink {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

std::vector<UePhysicalState> draw_ue_states(const SystemConfig& cfg, int count,
                                            std::uint64_t seed) {
    if (count < 1) throw DomainError("draw_ue_states: count must be >= 1");
    Rng rng(mix(seed, kTagUeState));
    std::vector<UePhysicalState> states(count);
    for (auto& st : states) {
        st.velocity = cfg.v_max * rng.uniform();
        st.angle = 2.0 * kPi * rng.uniform();
        st.max_doppler = st.velocity * cfg.carrier_frequency / cfg.speed_of_light;
    }
    return states;
}

double aging_coefficient(double velocity, int n, const SystemConfig& cfg) {
    if (n < 0) throw DomainError("aging_coefficient: n must be >= 0");
    const double doppler = velocity * cfg.carrier_frequency / cfg.speed_of_light;
    return bessel_j0(2.0 * kPi * doppler * n * cfg.symbol_duration);
}

double aging_moment(int n, const SystemConfig& cfg, int horizon) {
    if (n < 0) throw DomainError("aging_moment: n must be >= 0");
    if (n > horizon)
        throw DomainError("aging_moment: n exceeds the evaluation horizon (" +
                          std::to_string(horizon) + ")");
    if (n == 0 || cfg.v_max == 0.0) return 1.0;
    const double scale =
        2.0 * kPi * cfg.carrier_frequency * n * cfg.symbol_duration / cfg.speed_of_light;
    // J_0^2(scale * v) completes one oscillation roughly every pi/scale in v; give the
    // subdivision budget room for the fastest tested case.
    QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    spec.rel_tol = 1e-9;
    spec.max_subdivisions = 20000;
    const double integral = integrate(
        [scale](double v) {
            const double j = bessel_j0(scale * v);
            return j * j;
        },
        0.0, cfg.v_max, spec);
    return integral / cfg.v_max;
}

ChannelBlock evolve_channel(std::uint64_t seed, const std::vector<UePhysicalState>& states,
                            const SystemConfig& cfg,
                            const std::vector<int>& symbol_indices) {
    const int n_u = cfg.users_per_subcarrier;
    if (static_cast<int>(states.size()) != n_u)
        throw PlanError("evolve_channel: need one mobility state per UE slot");
    const int n_b = cfg.n_antennas;
    const double var_h = cfg.channel_variance;

    ChannelBlock block;
    block.symbol_indices = symbol_indices;
    block.pilot_channel.resize(n_b, n_u);
    {
        Rng rng(mix(seed, kTagPilotChannel));
        for (int k = 0; k < n_u; ++k)
            for (int m = 0; m < n_b; ++m) block.pilot_channel(m, k) = rng.complex_normal(var_h);
    }

    for (int n : symbol_indices) {
        if (n < 1) throw DomainError("evolve_channel: symbol indices must be >= 1");
        Eigen::VectorXd rho(n_u);
        for (int k = 0; k < n_u; ++k) rho(k) = aging_coefficient(states[k].velocity, n, cfg);

        Eigen::MatrixXcd innovation(n_b, n_u);
        Rng rng(mix(seed, kTagInnovation, static_cast<std::uint64_t>(n)));
        for (int k = 0; k < n_u; ++k) {
            const double var_g = var_h * (1.0 - rho(k) * rho(k));
            for (int m = 0; m < n_b; ++m) innovation(m, k) = rng.complex_normal(var_g);
        }

        Eigen::MatrixXcd aged = block.pilot_channel * rho.asDiagonal();
        aged += innovation;
        block.rho.emplace(n, std::move(rho));
        block.aged.emplace(n, std::move(aged));
        block.innovation.emplace(n, std::move(innovation));
    }
    return block;
}

} // namespace mmlink
