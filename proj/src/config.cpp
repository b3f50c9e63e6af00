#include "nbscl/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace nbscl {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& msg) {
    throw ConfigError(path + ":" + std::to_string(line) + ": " + msg);
}

long long parse_int(const std::string& path, int line, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long out = std::stoll(v, &used, 0);
        if (used != v.size()) fail(path, line, "trailing characters in integer '" + v + "'");
        return out;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(path, line, "expected an integer, got '" + v + "'");
    }
}

double parse_real(const std::string& path, int line, const std::string& v) {
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size()) fail(path, line, "trailing characters in number '" + v + "'");
        return out;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(path, line, "expected a number, got '" + v + "'");
    }
}

bool parse_bool(const std::string& path, int line, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(path, line, "expected a boolean, got '" + v + "'");
}

// "1,2,3" or "start:stop:step".
std::vector<double> parse_snr_list(const std::string& path, int line, const std::string& v) {
    std::vector<double> out;
    if (v.find(':') != std::string::npos) {
        const auto c1 = v.find(':');
        const auto c2 = v.find(':', c1 + 1);
        if (c2 == std::string::npos) fail(path, line, "SNR range must be start:stop:step");
        const double start = parse_real(path, line, trim(v.substr(0, c1)));
        const double stop = parse_real(path, line, trim(v.substr(c1 + 1, c2 - c1 - 1)));
        const double step = parse_real(path, line, trim(v.substr(c2 + 1)));
        if (step <= 0) fail(path, line, "SNR step must be positive");
        for (double s = start; s <= stop + 1e-9; s += step) out.push_back(s);
    } else {
        std::size_t pos = 0;
        while (pos <= v.size()) {
            const auto comma = v.find(',', pos);
            const std::string piece = trim(v.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (piece.empty()) fail(path, line, "empty entry in SNR list");
            out.push_back(parse_real(path, line, piece));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (out.empty()) fail(path, line, "empty SNR list");
    return out;
}

} // namespace

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");

    static const std::set<std::string> kSections = {"code", "decoder", "channel", "sim", "output"};
    RunConfig cfg;
    std::string section;
    std::string raw;
    int line = 0;
    bool have_family = false, have_snr = false;
    int family_line = 1;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(path, line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (!kSections.count(section)) fail(path, line, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(path, line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(path, line, "empty key");
        if (value.empty()) fail(path, line, "empty value for key '" + key + "'");
        if (section.empty()) fail(path, line, "key '" + key + "' outside any section");

        if (section == "code") {
            if (key == "family") {
                cfg.family = value;
                have_family = true;
                family_line = line;
            } else if (key == "r") {
                cfg.field_r = static_cast<int>(parse_int(path, line, value));
            } else if (key == "n") {
                cfg.N = static_cast<int>(parse_int(path, line, value));
            } else if (key == "k") {
                cfg.K = static_cast<int>(parse_int(path, line, value));
            } else if (key == "poly") {
                cfg.poly = static_cast<std::uint32_t>(parse_int(path, line, value));
            } else if (key == "file") {
                cfg.code_file = value;
            } else {
                fail(path, line, "unknown key '" + key + "' in [code]");
            }
        } else if (section == "decoder") {
            if (key == "type") {
                cfg.decoder = value;
            } else if (key == "list") {
                cfg.list_size = static_cast<int>(parse_int(path, line, value));
            } else if (key == "sorter") {
                cfg.sorter = value;
                if (value != "full" && value != "r-step")
                    fail(path, line, "sorter must be 'full' or 'r-step'");
            } else if (key == "eta") {
                cfg.eta = static_cast<int>(parse_int(path, line, value));
            } else {
                fail(path, line, "unknown key '" + key + "' in [decoder]");
            }
        } else if (section == "channel") {
            if (key == "snr_db") {
                cfg.snr_db = parse_snr_list(path, line, value);
                have_snr = true;
            } else if (key == "noiseless") {
                cfg.noiseless = parse_bool(path, line, value);
            } else {
                fail(path, line, "unknown key '" + key + "' in [channel]");
            }
        } else if (section == "sim") {
            if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(parse_int(path, line, value));
            } else if (key == "max_frames") {
                cfg.max_frames = static_cast<std::uint64_t>(parse_int(path, line, value));
                if (cfg.max_frames == 0) fail(path, line, "max_frames must be positive");
            } else if (key == "target_errors") {
                cfg.target_errors = static_cast<std::uint64_t>(parse_int(path, line, value));
            } else if (key == "threads") {
                cfg.threads = static_cast<int>(parse_int(path, line, value));
                if (cfg.threads < 1) fail(path, line, "threads must be >= 1");
            } else {
                fail(path, line, "unknown key '" + key + "' in [sim]");
            }
        } else if (section == "output") {
            if (key == "fer_csv") {
                cfg.fer_csv = value;
            } else {
                fail(path, line, "unknown key '" + key + "' in [output]");
            }
        }
    }

    if (!have_family) fail(path, line ? line : 1, "missing family in [code]");
    if (cfg.family != "ers" && cfg.family != "nb-ebch" && cfg.family != "custom")
        fail(path, family_line, "family must be ers, nb-ebch or custom");
    if (cfg.family == "custom") {
        if (cfg.code_file.empty()) fail(path, family_line, "custom codes need file = <path>");
    } else {
        if (cfg.field_r <= 0) fail(path, family_line, "missing or invalid r in [code]");
        if (cfg.K <= 0) fail(path, family_line, "missing or invalid k in [code]");
        if (cfg.family == "ers") {
            const int expect = 1 << cfg.field_r;
            if (cfg.N == 0) cfg.N = expect;
            if (cfg.N != expect) fail(path, family_line, "eRS length must be 2^r");
        } else if (cfg.N <= 0) {
            fail(path, family_line, "missing n (code length) in [code]");
        }
    }
    if (cfg.decoder != "sc" && cfg.decoder != "scl" && cfg.decoder != "bm" &&
        cfg.decoder != "chase-bm")
        fail(path, 1, "decoder type must be sc, scl, bm or chase-bm");
    if (cfg.decoder == "scl" && cfg.list_size < 1) fail(path, 1, "list must be >= 1");
    if (cfg.decoder == "chase-bm" && cfg.eta < 0) fail(path, 1, "eta must be >= 0");
    if (!have_snr) fail(path, 1, "missing snr_db in [channel]");
    if (cfg.fer_csv.empty()) fail(path, 1, "missing fer_csv in [output]");
    return cfg;
}

DecoderSpec RunConfig::decoder_spec() const {
    DecoderSpec spec;
    if (decoder == "sc") {
        spec.kind = DecoderKind::kSc;
    } else if (decoder == "scl") {
        spec.kind = DecoderKind::kScl;
        spec.list_size = list_size;
        spec.sorter = sorter == "full" ? Sorter::kFull : Sorter::kRStep;
    } else if (decoder == "bm") {
        spec.kind = DecoderKind::kBm;
    } else if (decoder == "chase-bm") {
        spec.kind = DecoderKind::kChaseBm;
        spec.eta = eta;
    } else {
        throw ConfigError("unknown decoder type '" + decoder + "'");
    }
    return spec;
}

CodeSpec build_code(const RunConfig& cfg) {
    if (cfg.family == "custom") return load_code_file(cfg.code_file);
    const FieldPtr field = cfg.poly ? make_field(cfg.field_r, cfg.poly) : make_field(cfg.field_r);
    if (cfg.family == "ers") return make_ers_code(field, cfg.K);
    return make_nb_ebch_code(field, cfg.N, cfg.K);
}

} // namespace nbscl
