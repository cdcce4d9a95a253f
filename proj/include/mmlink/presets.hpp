#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmlink/config.hpp"
#include "mmlink/csv.hpp"
#include "mmlink/rate.hpp"

namespace mmlink {

// Options shared by the canned experiment sweeps.
struct PresetOptions {
    bool desk = true;                 // desk: 64 antennas and thinned grids for the
                                      // Monte Carlo presets; analytic sweeps keep the
                                      // configured antenna count either way
    std::uint64_t seed = 1;
    std::vector<Combiner> combiners;  // empty = the preset's own default
    long trials = 0;                  // 0 = the preset's own default
    std::vector<int> users;           // optional users_per_subcarrier grid for the
                                      // sum-rate-vs-speed presets (adds a column)
};

// Known preset names: fig3..fig9. Throws DomainError for anything else.
//  fig3  per-symbol rate vs symbol index, analytic + Monte Carlo, speeds {5,25,100}
//  fig4  analytic per-symbol rate vs symbol index across user loads
//  fig5  sum-rate vs speed per pilot percentage, analytic + Monte Carlo spot checks
//  fig6  ZF sum-rate vs speed per pilot percentage (analytic)
//  fig7  MRC sum-rate vs speed per pilot percentage (analytic)
//  fig8  sum-rate vs frame data length, speeds {5,25,100} (analytic)
//  fig9  frame-length-optimized sum-rate vs SNR across user loads (analytic)
CsvTable run_preset(const std::string& name, const SystemConfig& cfg,
                    const PresetOptions& opt);

} // namespace mmlink
