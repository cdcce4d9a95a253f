#pragma once

#include <string>

namespace mmlink {

// Rule for the number of subcarriers each UE pilots on (per coherence block spanned by
// its group). The two published statements of this count disagree; both are available
// and the choice is explicit. See pilot_plan().
enum class NvRule {
    kProofConsistent, // max(1, ceil(N_C / N_H)): one pilot subcarrier per coherence block
    kLiteral,         // min(1, ceil(N_C / N_H)): always exactly one
};

// Full system configuration. Counts and physical scalars use the same names as the
// config-file keys. Power quantities are linear here; the config file carries them in
// dB and load_config converts (that conversion happens nowhere else).
struct SystemConfig {
    int n_antennas = 256;           // receive antennas at the access point (N_B)
    int n_users = 2048;             // single-antenna users in the cell (N_R)
    int n_subcarriers = 512;        // OFDM subcarriers (N_G)
    int users_per_subcarrier = 8;   // UEs sharing each subcarrier (N_U)
    int subcarriers_per_user = 2;   // subcarriers allotted to each UE (N_C)
    double subcarrier_spacing = 1e4;    // Hz
    double total_bandwidth = 5.12e6;    // Hz (derived n_subcarriers * spacing if absent)
    double carrier_frequency = 3e9;     // Hz
    double symbol_duration = 1e-4;      // s (derived 1/spacing if absent)
    double v_max = 25.0;                // maximum UE speed, m/s
    double effective_tx_power = 10.0;   // per-UE received power after power control, linear
    double noise_variance = 1.0;        // receiver noise power, linear
    double channel_variance = 1.0;      // per-entry channel power, linear
    double coherence_bandwidth = 3e5;   // Hz
    int frame_data_length = 12;         // data symbols per frame (N_D); 0 = pilot-only frame
    double speed_of_light = 2.998e8;    // m/s
    NvRule nv_rule = NvRule::kProofConsistent;

    // Derived by validate_config.
    int n_groups = 0;               // number of UE groups == number of subcarrier groups
    int n_coherence_subcarriers = 0; // subcarriers per coherence bandwidth, floor(B_c/spacing)
    bool validated = false;
};

double db_to_linear(double db);
double linear_to_db(double lin);

// Checks every structural and physical constraint and returns the config with the
// derived group count and coherence width attached.
// Throws GroupingError when the user/subcarrier counts do not tile into equal groups,
// RegimeError when users_per_subcarrier >= n_antennas, DomainError for nonpositive
// physical quantities or an inconsistent symbol duration.
SystemConfig validate_config(const SystemConfig& cfg);

// Loads a flat "key = value" file ('#' starts a comment). Keys match the SystemConfig
// field names. effective_tx_power, noise_variance, and channel_variance are read as dB
// and converted to linear. symbol_duration defaults to 1/subcarrier_spacing and
// total_bandwidth to n_subcarriers * subcarrier_spacing when the keys are absent.
// The result is validated. Throws IoError on unreadable files, unknown or duplicate
// keys, or unparseable values.
SystemConfig load_config(const std::string& path);

// The reference configuration used throughout: 256 antennas, 2048 users on 512
// subcarriers in groups of 8 users x 2 subcarriers, 10 kHz spacing, 3 GHz carrier,
// 10 dB SNR, 300 kHz coherence bandwidth, 12 data symbols, v_max 25 m/s.
SystemConfig baseline_config();

// Helpers for parameter sweeps: each returns a revalidated copy.
// with_users_per_subcarrier rescales subcarriers_per_user to preserve the group
// structure (n_users/users_per_subcarrier == n_subcarriers/subcarriers_per_user).
SystemConfig with_users_per_subcarrier(const SystemConfig& cfg, int users);
SystemConfig with_v_max(const SystemConfig& cfg, double v_max);
SystemConfig with_frame_data_length(const SystemConfig& cfg, int n_data);
SystemConfig with_snr_db(const SystemConfig& cfg, double snr_db); // sets tx power = noise * 10^(snr/10)

} // namespace mmlink
