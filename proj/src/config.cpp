#include "fraceig/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace fraceig {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw ConfigError("config: bad boolean value for " + key + ": '" + v + "'");
}

std::vector<std::string> split_list(std::string v) {
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream is(v);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config: empty key or value on line " + std::to_string(lineno));
        if (kv.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        kv[key] = val;
    }

    RunConfig cfg;
    for (const auto& [key, val] : kv) {
        if (key == "kernel.s") cfg.s = to_double(key, val);
        else if (key == "kernel.p") cfg.p = to_double(key, val);
        else if (key == "kernel.multiplier") cfg.multiplier = val;
        else if (key == "kernel.lam_lo") cfg.lam_lo = to_double(key, val);
        else if (key == "kernel.lam_hi") cfg.lam_hi = to_double(key, val);
        else if (key == "grid.dim") cfg.dim = static_cast<int>(to_long(key, val));
        else if (key == "grid.a") cfg.a = to_double(key, val);
        else if (key == "grid.b") cfg.b = to_double(key, val);
        else if (key == "grid.N") cfg.N = static_cast<int>(to_long(key, val));
        else if (key == "grid.box") {
            const auto parts = split_list(val);
            if (parts.size() != 4)
                throw ConfigError("config: grid.box needs 4 numbers x0 y0 x1 y1");
            cfg.box = {to_double(key, parts[0]), to_double(key, parts[1]),
                       to_double(key, parts[2]), to_double(key, parts[3])};
        } else if (key == "grid.h") cfg.h = to_double(key, val);
        else if (key == "grid.mask") cfg.mask = val;
        else if (key == "assembly.near_field_radius")
            cfg.assembly.near_field_radius = static_cast<int>(to_long(key, val));
        else if (key == "assembly.tail_refine")
            cfg.assembly.tail_refine = static_cast<int>(to_long(key, val));
        else if (key == "solve.tol") cfg.solve.tol = to_double(key, val);
        else if (key == "solve.max_iters") cfg.solve.max_iters = to_long(key, val);
        else if (key == "solve.seed")
            cfg.solve.seed = static_cast<std::uint64_t>(to_long(key, val));
        else if (key == "solve.mode") {
            if (val == "first") cfg.solve.mode = SolveOptions::Mode::First;
            else if (val == "odd") cfg.solve.mode = SolveOptions::Mode::Odd;
            else throw ConfigError("config: solve.mode must be 'first' or 'odd'");
        } else if (key == "solve.enforce_sign")
            cfg.solve.enforce_sign = to_bool(key, val);
        else if (key == "output.directory") cfg.out_dir = val;
        else if (key == "output.formats") {
            cfg.formats = split_list(val);
            for (const auto& f : cfg.formats)
                if (f != "json" && f != "csv")
                    throw ConfigError("config: output.formats entries must be json or csv");
        } else if (key == "output.dump_eigenfunction")
            cfg.dump_eigenfunction = to_bool(key, val);
        else
            throw ConfigError("config: unknown key '" + key + "'");
    }

    if (cfg.dim != 1 && cfg.dim != 2)
        throw ConfigError("config: grid.dim must be 1 or 2");
    if (!(cfg.solve.tol > 0.0))
        throw ConfigError("config: solve.tol must be > 0");

    if (const char* env = std::getenv("FRAC_EIG_SEED")) {
        cfg.solve.seed = static_cast<std::uint64_t>(
            to_long("FRAC_EIG_SEED", std::string(env)));
        kv["solve.seed"] = env;
    }

    std::ostringstream canon;
    for (const auto& [key, val] : kv) canon << key << "=" << val << "\n";
    cfg.canonical = canon.str();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_hash(const RunConfig& cfg) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : cfg.canonical) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Kernel make_kernel(const RunConfig& cfg) {
    return make_kernel(cfg.s, cfg.p, cfg.dim, cfg.multiplier, cfg.lam_lo, cfg.lam_hi);
}

Grid make_grid(const RunConfig& cfg) {
    if (cfg.dim == 1) return build_grid_1d(cfg.a, cfg.b, cfg.N);
    return build_grid_2d(cfg.box, cfg.h, builtin_mask(cfg.mask, cfg.box), cfg.mask);
}

}  // namespace fraceig
