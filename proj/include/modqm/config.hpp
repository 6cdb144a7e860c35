#pragma once

// Flat key=value run configuration: INI-like files (# comments) or a flat
// JSON object, overridable from the command line. Unknown keys are rejected
// against the per-command schema.

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace modqm {

struct RunConfig {
    std::map<std::string, std::string> values;

    const std::string& str(const std::string& key) const {
        auto it = values.find(key);
        if (it == values.end()) throw std::invalid_argument("missing config key: " + key);
        return it->second;
    }
    double num(const std::string& key) const {
        try {
            return std::stod(str(key));
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key + "' is not a number");
        }
    }
    long long integer(const std::string& key) const {
        try {
            return std::stoll(str(key));
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key + "' is not an integer");
        }
    }
    bool boolean(const std::string& key) const {
        const std::string& v = str(key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw std::invalid_argument("config key '" + key + "' is not a boolean");
    }
};

using Schema = std::map<std::string, std::string>;  // key -> default value

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    std::map<std::string, std::string> out;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j = nlohmann::json::parse(text);
        if (!j.is_object()) throw std::invalid_argument("config json must be a flat object");
        for (const auto& [k, v] : j.items()) {
            if (v.is_string())
                out[k] = v.get<std::string>();
            else
                out[k] = v.dump();
        }
        return out;
    }
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line without '=': " + t);
        out[detail::trim(t.substr(0, eq))] = detail::trim(t.substr(eq + 1));
    }
    return out;
}

// defaults <- file <- overrides, rejecting keys absent from the schema
inline RunConfig build_config(const Schema& schema, const std::string& config_path,
                              const std::vector<std::string>& overrides) {
    RunConfig cfg;
    for (const auto& [k, def] : schema) cfg.values[k] = def;
    auto apply = [&](const std::string& k, const std::string& v, const std::string& from) {
        if (schema.find(k) == schema.end())
            throw std::invalid_argument("unknown config key '" + k + "' (" + from + ")");
        cfg.values[k] = v;
    };
    if (!config_path.empty())
        for (const auto& [k, v] : parse_config_file(config_path)) apply(k, v, "config file");
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got: " + kv);
        apply(detail::trim(kv.substr(0, eq)), detail::trim(kv.substr(eq + 1)), "--set");
    }
    return cfg;
}

inline std::string default_out_dir() {
    const char* env = std::getenv("MODQM_OUT");
    return env && *env ? env : "out";
}

}  // namespace modqm
