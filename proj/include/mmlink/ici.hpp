#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <vector>

#include "mmlink/allocation.hpp"
#include "mmlink/config.hpp"

namespace mmlink {

// Dimensionless Doppler parameter b = pi * v_max * f_c * T_s / c.
double doppler_parameter(const SystemConfig& cfg);

// Normalized per-subcarrier ICI power under the Gaussian model: b^2 / 18.
double ici_variance(const SystemConfig& cfg);

// Fraction of subcarrier j's power that leaks onto subcarrier i, averaged over UE speed
// (uniform on [0, v_max]) and direction (uniform on [0, 2pi)):
//   (1 / 2 pi v_max) Int_0^{2pi} Int_0^{v_max}
//       sinc^2( ((i - j) spacing + (v/c) f_c cos(psi)) * T_s ) dv dpsi
// evaluated by nested adaptive quadrature; v_max = 0 degenerates to the point value.
// Indices are 0-based; depends on i and j only through i - j.
double leakage(const SystemConfig& cfg, int i, int j);

// Lazily built |i-j|-keyed cache over the leakage integrals: the full n_subcarriers^2
// pair table costs only n_subcarriers distinct integrations. Thread-safe (at-most-once
// insertion per key); warm() precomputes every key, in parallel when requested.
class LeakageTable {
  public:
    explicit LeakageTable(const SystemConfig& cfg);

    double at(int i, int j) const;        // leakage between subcarriers i and j
    void warm(bool parallel);             // compute all n_subcarriers keys
    int computed_keys() const { return computed_.load(); }
    const SystemConfig& config() const { return cfg_; }

  private:
    double key_value(int d) const;

    SystemConfig cfg_;
    mutable std::vector<double> values_;
    std::unique_ptr<std::once_flag[]> flags_;
    mutable std::atomic<int> computed_{0};
};

// Exact ICI power arriving on subcarrier i (0-based): the leakage-weighted sum of every
// other subcarrier's transmit power,
//   P_T * sum_k ( sum_j eta_jk L(i,j)  -  eta_ik L(i,i) ).
double ici_power_exact(const SystemConfig& cfg, const AllocationPlan& plan, int i,
                       const LeakageTable& table);

// The b-dependent factor of the closed-form total:
//   1 - (2/pi) Int_0^{pi/2} [ Si(2 b cos psi)/(b cos psi) - sin^2(b cos psi)/(b cos psi)^2 ] dpsi
// with the removable b cos(psi) -> 0 limit (value 1) substituted below 1e-8.
// Approximately b^2/18 for small b.
double ici_closed_form_factor(double b);

// Closed-form total ICI power under uniform power coefficients and a large subcarrier
// count: (N_U P_T / N_C) * ici_closed_form_factor(b). Zero when v_max = 0.
double ici_power_closed_form(const SystemConfig& cfg);

} // namespace mmlink
