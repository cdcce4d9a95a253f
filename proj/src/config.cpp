#include "mmlink/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "mmlink/errors.hpp"

namespace mmlink {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) {
    if (!(lin > 0.0)) throw DomainError("linear_to_db: requires a positive value");
    return 10.0 * std::log10(lin);
}

SystemConfig validate_config(const SystemConfig& cfg) {
    SystemConfig out = cfg;

    auto need_positive_int = [](int v, const char* name) {
        if (v < 1) throw DomainError(std::string(name) + " must be a positive integer");
    };
    auto need_positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError(std::string(name) + " must be positive and finite");
    };

    need_positive_int(out.n_antennas, "n_antennas");
    need_positive_int(out.n_users, "n_users");
    need_positive_int(out.n_subcarriers, "n_subcarriers");
    need_positive_int(out.users_per_subcarrier, "users_per_subcarrier");
    need_positive_int(out.subcarriers_per_user, "subcarriers_per_user");
    if (out.frame_data_length < 0)
        throw DomainError("frame_data_length must be >= 0");
    need_positive(out.subcarrier_spacing, "subcarrier_spacing");
    need_positive(out.total_bandwidth, "total_bandwidth");
    need_positive(out.carrier_frequency, "carrier_frequency");
    need_positive(out.symbol_duration, "symbol_duration");
    need_positive(out.effective_tx_power, "effective_tx_power");
    need_positive(out.noise_variance, "noise_variance");
    need_positive(out.channel_variance, "channel_variance");
    need_positive(out.coherence_bandwidth, "coherence_bandwidth");
    need_positive(out.speed_of_light, "speed_of_light");
    if (out.v_max < 0.0 || !std::isfinite(out.v_max))
        throw DomainError("v_max must be >= 0 and finite");

    if (out.n_users % out.users_per_subcarrier != 0)
        throw GroupingError("n_users is not a multiple of users_per_subcarrier");
    if (out.n_subcarriers % out.subcarriers_per_user != 0)
        throw GroupingError("n_subcarriers is not a multiple of subcarriers_per_user");
    const int user_groups = out.n_users / out.users_per_subcarrier;
    const int carrier_groups = out.n_subcarriers / out.subcarriers_per_user;
    if (user_groups != carrier_groups)
        throw GroupingError("user and subcarrier group counts differ (" +
                            std::to_string(user_groups) + " vs " +
                            std::to_string(carrier_groups) + ")");
    out.n_groups = user_groups;

    if (out.users_per_subcarrier >= out.n_antennas)
        throw RegimeError("users_per_subcarrier must be strictly less than n_antennas");

    // symbol duration is tied to the subcarrier spacing (no cyclic prefix).
    if (std::abs(out.symbol_duration * out.subcarrier_spacing - 1.0) > 1e-9)
        throw DomainError("symbol_duration must equal 1/subcarrier_spacing");

    out.n_coherence_subcarriers =
        static_cast<int>(std::floor(out.coherence_bandwidth / out.subcarrier_spacing));
    if (out.n_coherence_subcarriers < 1)
        throw DomainError("coherence_bandwidth must span at least one subcarrier");

    out.validated = true;
    return out;
}

namespace {

double parse_number(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw IoError("config: cannot parse value '" + text + "' for key '" + key + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    const double v = parse_number(key, text);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw IoError("config: key '" + key + "' requires an integer, got '" + text + "'");
    return i;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open '" + path + "'");

    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError("config: line " + std::to_string(lineno) + " of '" + path +
                          "' is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw IoError("config: empty key or value at line " + std::to_string(lineno));
        if (!kv.emplace(key, value).second)
            throw IoError("config: duplicate key '" + key + "'");
    }

    SystemConfig cfg;
    bool have_symbol_duration = false;
    bool have_total_bandwidth = false;

    for (const auto& [key, value] : kv) {
        if (key == "n_antennas") cfg.n_antennas = parse_int(key, value);
        else if (key == "n_users") cfg.n_users = parse_int(key, value);
        else if (key == "n_subcarriers") cfg.n_subcarriers = parse_int(key, value);
        else if (key == "users_per_subcarrier") cfg.users_per_subcarrier = parse_int(key, value);
        else if (key == "subcarriers_per_user") cfg.subcarriers_per_user = parse_int(key, value);
        else if (key == "subcarrier_spacing") cfg.subcarrier_spacing = parse_number(key, value);
        else if (key == "total_bandwidth") { cfg.total_bandwidth = parse_number(key, value); have_total_bandwidth = true; }
        else if (key == "carrier_frequency") cfg.carrier_frequency = parse_number(key, value);
        else if (key == "symbol_duration") { cfg.symbol_duration = parse_number(key, value); have_symbol_duration = true; }
        else if (key == "v_max") cfg.v_max = parse_number(key, value);
        else if (key == "effective_tx_power") cfg.effective_tx_power = db_to_linear(parse_number(key, value));
        else if (key == "noise_variance") cfg.noise_variance = db_to_linear(parse_number(key, value));
        else if (key == "channel_variance") cfg.channel_variance = db_to_linear(parse_number(key, value));
        else if (key == "coherence_bandwidth") cfg.coherence_bandwidth = parse_number(key, value);
        else if (key == "frame_data_length") cfg.frame_data_length = parse_int(key, value);
        else if (key == "speed_of_light") cfg.speed_of_light = parse_number(key, value);
        else if (key == "nv_rule") {
            if (value == "proof-consistent" || value == "proof_consistent")
                cfg.nv_rule = NvRule::kProofConsistent;
            else if (value == "literal")
                cfg.nv_rule = NvRule::kLiteral;
            else
                throw IoError("config: nv_rule must be 'proof-consistent' or 'literal'");
        } else {
            throw IoError("config: unknown key '" + key + "'");
        }
    }

    if (!have_symbol_duration && cfg.subcarrier_spacing > 0.0)
        cfg.symbol_duration = 1.0 / cfg.subcarrier_spacing;
    if (!have_total_bandwidth && cfg.subcarrier_spacing > 0.0)
        cfg.total_bandwidth = cfg.n_subcarriers * cfg.subcarrier_spacing;

    return validate_config(cfg);
}

SystemConfig baseline_config() {
    SystemConfig cfg; // defaults are the reference values
    return validate_config(cfg);
}

SystemConfig with_users_per_subcarrier(const SystemConfig& cfg, int users) {
    SystemConfig out = cfg;
    if (users < 1) throw DomainError("users_per_subcarrier must be positive");
    const long long num = static_cast<long long>(users) * cfg.n_subcarriers;
    if (num % cfg.n_users != 0)
        throw GroupingError("users_per_subcarrier " + std::to_string(users) +
                            " does not preserve the group structure");
    out.users_per_subcarrier = users;
    out.subcarriers_per_user = static_cast<int>(num / cfg.n_users);
    return validate_config(out);
}

SystemConfig with_v_max(const SystemConfig& cfg, double v_max) {
    SystemConfig out = cfg;
    out.v_max = v_max;
    return validate_config(out);
}

SystemConfig with_frame_data_length(const SystemConfig& cfg, int n_data) {
    SystemConfig out = cfg;
    out.frame_data_length = n_data;
    return validate_config(out);
}

SystemConfig with_snr_db(const SystemConfig& cfg, double snr_db) {
    SystemConfig out = cfg;
    out.effective_tx_power = cfg.noise_variance * db_to_linear(snr_db);
    return validate_config(out);
}

} // namespace mmlink
