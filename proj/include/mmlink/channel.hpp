#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "mmlink/config.hpp"

namespace mmlink {

// Mobility state of one UE. The angle is drawn for completeness (direction enters the
// leakage average) but the aging coefficient depends on speed only.
struct UePhysicalState {
    double velocity = 0.0;    // m/s, uniform on [0, v_max]
    double angle = 0.0;       // radians, uniform on [0, 2pi)
    double max_doppler = 0.0; // Hz, velocity * f_c / c
};

// i.i.d. mobility draws, reproducible for a fixed seed.
std::vector<UePhysicalState> draw_ue_states(const SystemConfig& cfg, int count,
                                            std::uint64_t seed);

// Temporal autocorrelation of the fading process for one UE after n symbols:
// J_0(2 pi (v f_c / c) n T_s).
double aging_coefficient(double velocity, int n, const SystemConfig& cfg);

// Speed-averaged squared autocorrelation lambda(n) = (1/v_max) Int_0^{v_max}
// J_0^2(2 pi v f_c n T_s / c) dv; equals 1 when n = 0 or v_max = 0. The integrand
// oscillates faster as n grows, so evaluation is limited to n <= horizon.
double aging_moment(int n, const SystemConfig& cfg, int horizon = 64);

// One frame's channel on a representative subcarrier: the pilot-epoch matrix plus the
// aged matrices for the requested symbol indices, kept with their synthesis pieces so
// tests can check the aging recursion directly. Columns are UE slots.
struct ChannelBlock {
    Eigen::MatrixXcd pilot_channel;             // N_B x N_U, per-entry variance sigma_h^2
    std::vector<int> symbol_indices;            // the n values materialized below
    std::map<int, Eigen::VectorXd> rho;         // n -> per-UE aging coefficient
    std::map<int, Eigen::MatrixXcd> aged;       // n -> pilot_channel * diag(rho) + innovation
    std::map<int, Eigen::MatrixXcd> innovation; // n -> per-entry variance sigma_h^2 (1 - rho^2)
};

// Synthesizes the pilot-epoch channel and its aged versions for every n in
// symbol_indices (each n >= 1). Innovation draws come from a per-n substream of `seed`,
// so a block materialized for {5} matches the n = 5 slice of a block materialized for
// {1,...,30} bit for bit.
ChannelBlock evolve_channel(std::uint64_t seed, const std::vector<UePhysicalState>& states,
                            const SystemConfig& cfg, const std::vector<int>& symbol_indices);

} // namespace mmlink
