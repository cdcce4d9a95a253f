#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "mmlink/config.hpp"
#include "mmlink/errors.hpp"

using namespace mmlink;

namespace {

std::string write_temp(const std::string& body) {
    static int counter = 0;
    std::string path = "/tmp/mmlink_cfg_" + std::to_string(counter++) + ".cfg";
    std::ofstream out(path);
    out << body;
    return path;
}

const char* kBaselineFile =
    "# reference configuration\n"
    "n_antennas = 256\n"
    "n_users = 2048\n"
    "n_subcarriers = 512\n"
    "users_per_subcarrier = 8\n"
    "subcarriers_per_user = 2\n"
    "subcarrier_spacing = 1e4\n"
    "carrier_frequency = 3e9\n"
    "v_max = 25\n"
    "effective_tx_power = 10\n"   // dB
    "noise_variance = 0\n"        // dB
    "channel_variance = 0\n"      // dB
    "coherence_bandwidth = 3e5\n"
    "frame_data_length = 12\n"
    "speed_of_light = 2.998e8\n";

} // namespace

TEST_CASE("baseline config validates with the documented derived quantities") {
    const SystemConfig cfg = baseline_config();
    CHECK(cfg.validated);
    CHECK(cfg.n_groups == 256);
    CHECK(cfg.n_coherence_subcarriers == 30);
    CHECK(cfg.effective_tx_power == doctest::Approx(10.0));
    CHECK(cfg.noise_variance == doctest::Approx(1.0));
    CHECK(cfg.symbol_duration == doctest::Approx(1e-4));
}

TEST_CASE("load_config converts dB powers and derives duration and bandwidth") {
    const SystemConfig cfg = load_config(write_temp(kBaselineFile));
    CHECK(cfg.effective_tx_power == doctest::Approx(10.0).epsilon(1e-12)); // 10 dB
    CHECK(cfg.noise_variance == doctest::Approx(1.0).epsilon(1e-12));      // 0 dB
    CHECK(cfg.channel_variance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cfg.symbol_duration == doctest::Approx(1e-4).epsilon(1e-12));    // 1/spacing
    CHECK(cfg.total_bandwidth == doctest::Approx(5.12e6).epsilon(1e-12));  // N_G * spacing
    CHECK(cfg.n_groups == 256);
}

TEST_CASE("load_config rejects unknown keys, duplicates, and bad values") {
    CHECK_THROWS_AS(load_config(write_temp(std::string(kBaselineFile) + "mystery = 3\n")),
                    IoError);
    CHECK_THROWS_AS(load_config(write_temp(std::string(kBaselineFile) + "v_max = 30\n")),
                    IoError);
    CHECK_THROWS_AS(load_config(write_temp(std::string(kBaselineFile) + "n_antennas = abc\n")),
                    IoError);
    CHECK_THROWS_AS(load_config("/tmp/definitely_missing_mmlink.cfg"), IoError);
}

TEST_CASE("validate_config enforces the structural constraints") {
    SystemConfig cfg = baseline_config();

    SUBCASE("grouping must tile") {
        cfg.subcarriers_per_user = 3; // 2048/8 != 512/3
        CHECK_THROWS_AS(validate_config(cfg), GroupingError);
    }
    SUBCASE("users per subcarrier must stay below the antenna count") {
        cfg.n_antennas = 8;
        CHECK_THROWS_AS(validate_config(cfg), RegimeError);
    }
    SUBCASE("symbol duration must match the subcarrier spacing") {
        cfg.symbol_duration = 1.01e-4;
        CHECK_THROWS_AS(validate_config(cfg), DomainError);
    }
    SUBCASE("physical scalars must be positive") {
        cfg.carrier_frequency = 0.0;
        CHECK_THROWS_AS(validate_config(cfg), DomainError);
    }
    SUBCASE("frame data length may be zero but not negative") {
        cfg.frame_data_length = 0;
        CHECK(validate_config(cfg).validated);
        cfg.frame_data_length = -1;
        CHECK_THROWS_AS(validate_config(cfg), DomainError);
    }
}

TEST_CASE("dB conversions round-trip") {
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(db_to_linear(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(linear_to_db(db_to_linear(7.3)) == doctest::Approx(7.3).epsilon(1e-12));
}

TEST_CASE("sweep helpers revalidate and preserve the group structure") {
    const SystemConfig cfg = baseline_config();

    const SystemConfig u16 = with_users_per_subcarrier(cfg, 16);
    CHECK(u16.users_per_subcarrier == 16);
    CHECK(u16.subcarriers_per_user == 4); // 2048/16 == 512/4
    CHECK(u16.n_groups == 128);
    CHECK_THROWS_AS(with_users_per_subcarrier(cfg, 6), GroupingError); // 6*512/2048 = 1.5

    const SystemConfig fast = with_v_max(cfg, 100.0);
    CHECK(fast.v_max == doctest::Approx(100.0));
    CHECK(fast.validated);

    const SystemConfig snr0 = with_snr_db(cfg, 0.0);
    CHECK(snr0.effective_tx_power == doctest::Approx(cfg.noise_variance).epsilon(1e-12));
    const SystemConfig snr20 = with_snr_db(cfg, 20.0);
    CHECK(snr20.effective_tx_power ==
          doctest::Approx(100.0 * cfg.noise_variance).epsilon(1e-12));

    const SystemConfig nd0 = with_frame_data_length(cfg, 0);
    CHECK(nd0.frame_data_length == 0);
}
