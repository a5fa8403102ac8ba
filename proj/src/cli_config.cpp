#include "sphlab/cli_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sphlab/csv.hpp"
#include "sphlab/experiments.hpp"

namespace sphlab {

namespace {

const std::vector<std::string> all_schemes = {"sph",  "cspm",  "fpm", "msph",
                                              "sphn", "cspmn", "fpmn"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += items[i];
    }
    return out;
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw UsageError("invalid numeric value for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw UsageError("invalid boolean value for " + key + ": '" + value + "'");
}

void apply_key(StudySettings& s, const std::string& key, const std::string& value) {
    if (key == "scheme") {
        std::vector<std::string> tokens = split_list(value);
        if (tokens.size() == 1 && tokens[0] == "all") tokens = all_schemes;
        if (tokens.empty()) throw UsageError("empty scheme list");
        for (const auto& t : tokens) scheme_from_token(t);  // validates
        s.schemes = tokens;
    } else if (key == "field") {
        std::vector<std::string> tokens = split_list(value);
        if (tokens.size() == 1 && tokens[0] == "all") tokens = {"f1", "f2"};
        if (tokens.empty()) throw UsageError("empty field list");
        for (const auto& t : tokens)
            if (t != "f1" && t != "f2") throw UsageError("unknown field: '" + t + "'");
        s.fields = tokens;
    } else if (key == "distribution") {
        if (value != "regular" && value != "irregular")
            throw UsageError("distribution must be regular or irregular, got '" + value + "'");
        s.distribution = value;
    } else if (key == "jitter") {
        const double v = parse_number(key, value);
        if (!(v >= 0.0 && v < 0.5)) throw UsageError("jitter must lie in [0, 0.5)");
        s.jitter = v;
    } else if (key == "seed") {
        try {
            s.seed = std::stoull(value);
        } catch (const std::exception&) {
            throw UsageError("invalid seed: '" + value + "'");
        }
    } else if (key == "ladder") {
        resolve_ladder(value);  // validates
        s.ladder_spec = value;
    } else if (key == "out") {
        s.out_dir = value;
    } else if (key == "plots") {
        s.plots = parse_bool(key, value);
    } else if (key == "threads") {
        const double v = parse_number(key, value);
        if (v < 0 || v != std::floor(v)) throw UsageError("threads must be a non-negative integer");
        s.threads = static_cast<int>(v);
    } else if (key == "interior_only") {
        s.interior_only = parse_bool(key, value);
    } else {
        throw UsageError("unknown configuration key: '" + key + "'");
    }
}

void load_config_file(StudySettings& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) +
                             ": expected 'key = value', got '" + line + "'");
        apply_key(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

}  // namespace

SchemeConfig scheme_from_token(const std::string& token) {
    if (token == "sph") return SchemeConfig::fixed_n(SchemeVariant::Standard);
    if (token == "cspm") return SchemeConfig::fixed_n(SchemeVariant::CSPM);
    if (token == "fpm") return SchemeConfig::fixed_n(SchemeVariant::FPM);
    if (token == "msph") return SchemeConfig::fixed_n(SchemeVariant::MSPH);
    if (token == "sphn") return SchemeConfig::scaled_n(SchemeVariant::Standard);
    if (token == "cspmn") return SchemeConfig::scaled_n(SchemeVariant::CSPM);
    if (token == "fpmn") return SchemeConfig::scaled_n(SchemeVariant::FPM);
    if (token == "msphn")
        throw UsageError("'msphn' is not available: msph runs in fixed-neighbor mode only");
    throw UsageError("unknown scheme: '" + token + "'");
}

std::vector<std::size_t> resolve_ladder(const std::string& spec) {
    const auto ladder = builtin_ladder();
    if (spec == "table1") return {ladder.begin(), ladder.end()};
    if (spec.rfind("table1:", 0) == 0) {
        const std::string range = spec.substr(7);
        const auto dash = range.find('-');
        try {
            const std::size_t a = std::stoull(range.substr(0, dash));
            const std::size_t b =
                dash == std::string::npos ? a : std::stoull(range.substr(dash + 1));
            if (a < 1 || b < a || b > ladder.size()) throw std::out_of_range(spec);
            return {ladder.begin() + a - 1, ladder.begin() + b};
        } catch (const std::exception&) {
            throw UsageError("invalid ladder range '" + spec + "' (rows are 1-" +
                             std::to_string(ladder.size()) + ")");
        }
    }
    std::vector<std::size_t> counts;
    for (const auto& item : split_list(spec)) {
        std::size_t n = 0;
        try {
            n = std::stoull(item);
        } catch (const std::exception&) {
            throw UsageError("invalid ladder entry: '" + item + "'");
        }
        const auto s = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
        if (s < 2 || s * s != n)
            throw UsageError("ladder entry " + item + " is not a perfect square >= 4");
        if (!counts.empty() && n <= counts.back())
            throw UsageError("ladder must be strictly increasing");
        counts.push_back(n);
    }
    if (counts.empty()) throw UsageError("empty ladder spec");
    return counts;
}

CliConfig parse_config(std::span<const std::string> args) {
    if (args.empty()) throw UsageError("missing command: expected run, diagnose, table or plot");
    CliConfig cfg;
    cfg.command = args[0];
    if (cfg.command != "run" && cfg.command != "diagnose" && cfg.command != "table" &&
        cfg.command != "plot")
        throw UsageError("unknown command: '" + cfg.command + "'");

    // config file first so that flags override it
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config requires a path");
            load_config_file(cfg.settings, args[i + 1]);
        }
    }

    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& flag = args[i];
        const auto value = [&]() -> std::string {
            if (i + 1 >= args.size()) throw UsageError(flag + " requires a value");
            return args[++i];
        };
        if (flag == "--scheme") apply_key(cfg.settings, "scheme", value());
        else if (flag == "--field") apply_key(cfg.settings, "field", value());
        else if (flag == "--distribution") apply_key(cfg.settings, "distribution", value());
        else if (flag == "--jitter") apply_key(cfg.settings, "jitter", value());
        else if (flag == "--seed") apply_key(cfg.settings, "seed", value());
        else if (flag == "--ladder") apply_key(cfg.settings, "ladder", value());
        else if (flag == "--out") apply_key(cfg.settings, "out", value());
        else if (flag == "--plots") cfg.settings.plots = true;
        else if (flag == "--threads") apply_key(cfg.settings, "threads", value());
        else if (flag == "--interior-only") cfg.settings.interior_only = true;
        else if (flag == "--print-config") cfg.print_config = true;
        else if (flag == "--config") value();  // consumed in the first pass
        else throw UsageError("unknown flag: '" + flag + "'");
    }

    if (cfg.settings.out_dir.empty()) {
        const char* env = std::getenv("SPHLAB_OUT");
        cfg.settings.out_dir = env && *env ? env : "out";
    }
    cfg.ladder = resolve_ladder(cfg.settings.ladder_spec);
    return cfg;
}

std::string render_config(const StudySettings& s) {
    std::ostringstream out;
    out << "scheme = " << join(s.schemes) << '\n';
    out << "field = " << join(s.fields) << '\n';
    out << "distribution = " << s.distribution << '\n';
    out << "jitter = " << format_float(s.jitter) << '\n';
    out << "seed = " << s.seed << '\n';
    out << "ladder = " << s.ladder_spec << '\n';
    out << "out = " << s.out_dir << '\n';
    out << "plots = " << (s.plots ? "true" : "false") << '\n';
    out << "threads = " << s.threads << '\n';
    out << "interior_only = " << (s.interior_only ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace sphlab
