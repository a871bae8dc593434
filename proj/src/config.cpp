#include "nbldpc/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace nbldpc {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
    uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("key '" + key + "': expected a nonnegative integer, got '" + v + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

using Setter = std::function<void(EmulationSpec&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    auto u32 = [](unsigned EmulationSpec::*field) {
        return [field](EmulationSpec& s, const std::string& k, const std::string& v) {
            s.*field = static_cast<unsigned>(parse_u64(k, v));
        };
    };
    auto u64 = [](uint64_t EmulationSpec::*field) {
        return [field](EmulationSpec& s, const std::string& k, const std::string& v) {
            s.*field = parse_u64(k, v);
        };
    };
    auto dbl = [](double EmulationSpec::*field) {
        return [field](EmulationSpec& s, const std::string& k, const std::string& v) {
            s.*field = parse_double(k, v);
        };
    };
    auto str = [](std::string EmulationSpec::*field) {
        return [field](EmulationSpec& s, const std::string&, const std::string& v) {
            s.*field = v;
        };
    };
    auto u32list = [](std::vector<unsigned> EmulationSpec::*field) {
        return [field](EmulationSpec& s, const std::string& k, const std::string& v) {
            (s.*field).clear();
            for (const auto& item : split_list(v))
                (s.*field).push_back(static_cast<unsigned>(parse_u64(k, item)));
        };
    };

    static const std::map<std::string, Setter> table = {
        {"code_file", str(&EmulationSpec::code_file)},
        {"qc_file", str(&EmulationSpec::qc_file)},
        {"gen_n", u32(&EmulationSpec::gen_n)},
        {"gen_dc", u32(&EmulationSpec::gen_dc)},
        {"gen_seed", u64(&EmulationSpec::gen_seed)},
        {"q", u32(&EmulationSpec::q)},
        {"gf_poly", u32(&EmulationSpec::gf_poly)},
        {"algorithm",
         [](EmulationSpec& s, const std::string& k, const std::string& v) {
             if (v != "ems" && v != "mm")
                 throw ConfigError("key '" + k + "': must be 'ems' or 'mm', got '" + v + "'");
             s.algorithm = v;
         }},
        {"n_m", u32(&EmulationSpec::n_m)},
        {"quant_bits", u32(&EmulationSpec::quant_bits)},
        {"quant_step", dbl(&EmulationSpec::quant_step)},
        {"ls_vn", u32(&EmulationSpec::ls_vn)},
        {"ls_cn", u32(&EmulationSpec::ls_cn)},
        {"max_iter", u32(&EmulationSpec::max_iter)},
        {"compensation_offset", dbl(&EmulationSpec::compensation_offset)},
        {"early_stop",
         [](EmulationSpec& s, const std::string& k, const std::string& v) {
             s.early_stop = parse_bool(k, v);
         }},
        {"snr_db",
         [](EmulationSpec& s, const std::string& k, const std::string& v) {
             s.snr_db.clear();
             for (const auto& item : split_list(v)) s.snr_db.push_back(parse_double(k, item));
             if (s.snr_db.empty()) throw ConfigError("key 'snr_db': list may not be empty");
         }},
        {"frame_limit", u64(&EmulationSpec::frame_limit)},
        {"target_error_frames", u64(&EmulationSpec::target_error_frames)},
        {"seed", u64(&EmulationSpec::seed)},
        {"workers", u32(&EmulationSpec::workers)},
        {"t_overhead", u64(&EmulationSpec::t_overhead)},
        {"clock_mhz", dbl(&EmulationSpec::clock_mhz)},
        {"n_decoders", u32(&EmulationSpec::n_decoders)},
        {"sweep_n_m", u32list(&EmulationSpec::sweep_n_m)},
        {"sweep_quant_bits", u32list(&EmulationSpec::sweep_quant_bits)},
        {"sweep_q", u32list(&EmulationSpec::sweep_q)},
        {"sweep_codes",
         [](EmulationSpec& s, const std::string&, const std::string& v) {
             s.sweep_codes = split_list(v);
         }},
        {"out_csv", str(&EmulationSpec::out_csv)},
        {"checkpoint", str(&EmulationSpec::checkpoint)},
        {"plot_prefix", str(&EmulationSpec::plot_prefix)},
    };
    return table;
}

void set_key(EmulationSpec& spec, const std::string& key, const std::string& value) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown key '" + key + "'");
    it->second(spec, key, value);
    spec.explicit_keys.insert(key);
}

} // namespace

EmulationSpec parse_spec(const std::string& text) {
    EmulationSpec spec;
    std::stringstream ss(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                              line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        set_key(spec, key, value);
    }
    return spec;
}

EmulationSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

void apply_override(EmulationSpec& spec, const std::string& keyval) {
    const auto eq = keyval.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set expects key=value, got '" + keyval + "'");
    set_key(spec, keyval.substr(0, eq), keyval.substr(eq + 1));
}

void finalize_spec(EmulationSpec& spec, bool require_code) {
    if (spec.q < 4 || spec.q > 256 || (spec.q & (spec.q - 1)) != 0)
        throw ConfigError("key 'q': must be a power of two in [4, 256]");
    if (spec.ls_vn == 0) spec.ls_vn = spec.n_m;
    if (spec.ls_cn == 0) spec.ls_cn = spec.n_m;
    if (spec.n_m == 0 || spec.n_m > spec.q)
        throw ConfigError("key 'n_m': constraint 1 <= n_m <= q violated");
    if (spec.ls_vn > spec.n_m) throw ConfigError("key 'ls_vn': constraint ls_vn <= n_m violated");
    if (spec.ls_cn > spec.n_m) throw ConfigError("key 'ls_cn': constraint ls_cn <= n_m violated");
    if (spec.max_iter == 0) throw ConfigError("key 'max_iter': must be >= 1");
    if (spec.quant_bits == 1 || spec.quant_bits > 16)
        throw ConfigError("key 'quant_bits': must be 0 (floating) or in [2, 16]");
    if (spec.frame_limit == 0) throw ConfigError("key 'frame_limit': must be >= 1");
    if (spec.clock_mhz <= 0.0) throw ConfigError("key 'clock_mhz': must be positive");
    if (spec.n_decoders == 0) throw ConfigError("key 'n_decoders': must be >= 1");

    const bool has_gen = spec.gen_n > 0 || spec.gen_dc > 0;
    const int sources = (spec.code_file.empty() ? 0 : 1) + (spec.qc_file.empty() ? 0 : 1) +
                        (has_gen ? 1 : 0);
    if (require_code && sources == 0)
        throw ConfigError(
            "missing code source: set one of 'code_file', 'qc_file', or 'gen_n'+'gen_dc'");
    if (sources > 1)
        throw ConfigError("conflicting code sources: set only one of 'code_file', 'qc_file', "
                          "'gen_n'+'gen_dc'");
    if (has_gen && (spec.gen_n == 0 || spec.gen_dc == 0))
        throw ConfigError("keys 'gen_n' and 'gen_dc' must both be set and positive");
    if (!spec.sweep_q.empty() && !has_gen)
        throw ConfigError("key 'sweep_q': requires the 'gen_n'+'gen_dc' code source so the "
                          "nonzero pattern can be kept fixed across q");
    for (unsigned nm : spec.sweep_n_m)
        if (nm == 0) throw ConfigError("key 'sweep_n_m': entries must be >= 1");
    for (unsigned qb : spec.sweep_quant_bits)
        if (qb == 1 || qb > 16)
            throw ConfigError("key 'sweep_quant_bits': entries must be 0 or in [2, 16]");
}

} // namespace nbldpc
