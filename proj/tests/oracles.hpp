#pragma once

// Reference values for the numeric tests, frozen from independent oracles before the
// library was written: high-precision series/quadrature evaluations (mpmath at 50
// digits) for the special functions and integrals, and direct formula evaluations for
// the physical quantities. Tests compare against these constants, never against the
// library's own output.

namespace oracle {

// J_0(x), 17 significant digits.
inline constexpr double kJ0_1 = 0.76519768655796655;
inline constexpr double kJ0_first_zero_arg = 2.404825557695773; // J0 here ~ -6.1e-17
inline constexpr double kJ0_5 = -0.17759677131433830;
inline constexpr double kJ0_10 = -0.24593576445134834;
inline constexpr double kJ0_16_9 = -0.17878338789121922;  // just below the series cutoff
inline constexpr double kJ0_17_1 = -0.15928533153226531;  // just above the series cutoff
inline constexpr double kJ0_25 = 0.09626678327595812;
inline constexpr double kJ0_40 = 0.00736689058423729;
inline constexpr double kJ0_50 = 0.05581232766925182;
inline constexpr double kJ0_half_pi = 0.47200121576823477;

// Si(z), 17 significant digits.
inline constexpr double kSi_1 = 0.94608307036718301;
inline constexpr double kSi_pi = 1.85193705198246617; // global maximum of Si
inline constexpr double kSi_16 = 1.63130226827003289; // series/quadrature handoff point
inline constexpr double kSi_100 = 1.56222546688905629;
inline constexpr double kSi_0_08 = 0.07997156101629450;
inline constexpr double kSi_0_2 = 0.19955608852623383;

// Integral of J_0^2 over [0, 1] (1e6-point midpoint oracle agreed to 1e-10).
inline constexpr double kIntJ0Sq_0_1 = 0.85089447970838871;

// Speed-averaged squared aging autocorrelation at the reference point
// (v_max = 25 m/s, f_c = 3 GHz, T_s = 1e-4 s, c = 2.998e8 m/s, n = 10).
inline constexpr double kAgingMoment_n10 = 0.6858007812113647;

// Doppler parameter b = pi v_max f_c T_s / c and the Gaussian-model ICI variance
// b^2/18 at the reference point (v_max = 25, f_c = 3e9, T_s = 1e-4, c = 2.998e8).
inline constexpr double kB_reference = 0.0785922111472;
inline constexpr double kIciVar_reference = 3.43151980722e-4;
// A published example point with different physics (v = 27.78 m/s, f_c = 2 GHz,
// T_s = 7e-5 s): b and b^2/18.
inline constexpr double kB_example = 0.0407547770125;
inline constexpr double kIciVar_example = 9.22751027409e-5;

// Closed-form ICI factor (the bracketed integral term) at pinned b values, from
// 50-digit quadrature of the Si/sin^2 integrand.
inline constexpr double kFactor_0_04 = 8.8880356136026e-5;
inline constexpr double kFactor_0_1 = 5.5522236390272e-4;
inline constexpr double kFactor_reference = 3.4302474329931e-4; // at kB_reference
inline constexpr double kFactor_0_314 = 5.4452870846806e-3;

// Per-entry variance of the LS estimate at the reference configuration
// (sigma_h^2 = 1, P_T = 10, N_P = 4, N_V = 1, N_U = 8, N_C = 2, v_max = 25):
// 1 + (8/8) * kIciVar_reference + 1/40.
inline constexpr double kEstimateVar_reference = 1.02534315198;

} // namespace oracle
