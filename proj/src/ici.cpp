#include "mmlink/ici.hpp"

#include <cmath>

#include "mmlink/errors.hpp"
#include "mmlink/quad.hpp"
#include "mmlink/special.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mmlink {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

double doppler_parameter(const SystemConfig& cfg) {
    return kPi * cfg.v_max * cfg.carrier_frequency * cfg.symbol_duration /
           cfg.speed_of_light;
}

double ici_variance(const SystemConfig& cfg) {
    const double b = doppler_parameter(cfg);
    return b * b / 18.0;
}

namespace {

// Leakage integrand core for a fixed subcarrier offset, as a function of (v, psi).
double leakage_value(const SystemConfig& cfg, int delta) {
    const double base = delta * cfg.subcarrier_spacing;
    const double doppler_scale = cfg.carrier_frequency / cfg.speed_of_light;
    const double ts = cfg.symbol_duration;
    if (cfg.v_max == 0.0) {
        const double s = sinc(base * ts);
        return s * s;
    }
    QuadratureSpec tight;
    tight.abs_tol = 1e-12;
    tight.rel_tol = 1e-11;
    tight.max_subdivisions = 2000;
    const double outer = integrate(
        [&](double psi) {
            const double shift = doppler_scale * std::cos(psi);
            return integrate(
                [&](double v) {
                    const double s = sinc((base + v * shift) * ts);
                    return s * s;
                },
                0.0, cfg.v_max, tight);
        },
        0.0, 2.0 * kPi, tight);
    return outer / (2.0 * kPi * cfg.v_max);
}

} // namespace

double leakage(const SystemConfig& cfg, int i, int j) {
    if (i < 0 || i >= cfg.n_subcarriers || j < 0 || j >= cfg.n_subcarriers)
        throw DomainError("leakage: subcarrier index out of range");
    return leakage_value(cfg, i - j);
}

LeakageTable::LeakageTable(const SystemConfig& cfg)
    : cfg_(cfg),
      values_(cfg.n_subcarriers, 0.0),
      flags_(std::make_unique<std::once_flag[]>(cfg.n_subcarriers)) {
    if (!cfg.validated) throw PlanError("LeakageTable requires a validated configuration");
}

double LeakageTable::key_value(int d) const {
    std::call_once(flags_[d], [this, d] {
        values_[d] = leakage_value(cfg_, d);
        computed_.fetch_add(1);
    });
    return values_[d];
}

double LeakageTable::at(int i, int j) const {
    if (i < 0 || i >= cfg_.n_subcarriers || j < 0 || j >= cfg_.n_subcarriers)
        throw DomainError("LeakageTable::at: subcarrier index out of range");
    return key_value(std::abs(i - j));
}

void LeakageTable::warm(bool parallel) {
    const int n = cfg_.n_subcarriers;
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int d = 0; d < n; ++d) key_value(d);
    } else {
        for (int d = 0; d < n; ++d) key_value(d);
    }
}

double ici_power_exact(const SystemConfig& cfg, const AllocationPlan& plan, int i,
                       const LeakageTable& table) {
    if (static_cast<int>(plan.power_coefficients.size()) != cfg.n_subcarriers)
        throw PlanError("ici_power_exact: plan does not match configuration");
    if (i < 0 || i >= cfg.n_subcarriers)
        throw DomainError("ici_power_exact: subcarrier index out of range");
    // sum_k sum_j eta_jk L(i,j) = sum_j L(i,j) * (per-subcarrier coefficient sum), and
    // the self term removes subcarrier i's own contribution.
    double total = 0.0;
    for (int j = 0; j < cfg.n_subcarriers; ++j)
        total += plan.coefficient_sum(j) * table.at(i, j);
    total -= plan.coefficient_sum(i) * table.at(i, i);
    return cfg.effective_tx_power * total;
}

double ici_closed_form_factor(double b) {
    if (!(b >= 0.0) || !std::isfinite(b))
        throw DomainError("ici_closed_form_factor: b must be >= 0 and finite");
    if (b == 0.0) return 0.0;
    QuadratureSpec tight;
    tight.abs_tol = 1e-12;
    tight.rel_tol = 1e-12;
    tight.max_subdivisions = 2000;
    const double integral = integrate(
        [b](double psi) {
            const double t = b * std::cos(psi);
            if (t < 1e-8) return 1.0; // removable limit: Si(2t)/t -> 2, sin^2(t)/t^2 -> 1
            const double s = std::sin(t) / t;
            return sine_integral(2.0 * t) / t - s * s;
        },
        0.0, kPi / 2.0, tight);
    return 1.0 - (2.0 / kPi) * integral;
}

double ici_power_closed_form(const SystemConfig& cfg) {
    if (cfg.v_max == 0.0) return 0.0;
    const double prefactor = static_cast<double>(cfg.users_per_subcarrier) *
                             cfg.effective_tx_power / cfg.subcarriers_per_user;
    return prefactor * ici_closed_form_factor(doppler_parameter(cfg));
}

} // namespace mmlink
