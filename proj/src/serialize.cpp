#include "fraceig/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fraceig {

using nlohmann::json;

json to_json(const PropertyReport& rep) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = rep.name;
    j["trials"] = rep.trials;
    j["violations"] = rep.violations;
    j["worst_slack"] = rep.worst_slack;
    j["passed"] = rep.passed;
    j["details"] = rep.details;
    return j;
}

json to_json(const std::vector<LevelDecayRow>& table) {
    json rows = json::array();
    for (const auto& r : table)
        rows.push_back({{"k", r.k},
                        {"lhs", r.lhs},
                        {"rhs_base", r.base},
                        {"ratio", r.ratio},
                        {"applicable", r.applicable}});
    return rows;
}

json to_json(const std::vector<TruncationRow>& table) {
    json rows = json::array();
    for (const auto& r : table) rows.push_back({{"k", r.k}, {"U_k", r.U}});
    return rows;
}

json to_json(const std::vector<LinftyRow>& table) {
    json rows = json::array();
    for (const auto& r : table)
        rows.push_back({{"grid", r.grid},
                        {"sup_norm", r.sup_norm},
                        {"l1_norm", r.l1_norm},
                        {"ratio", r.ratio}});
    return rows;
}

json config_echo(const RunConfig& cfg) {
    json j = json::object();
    std::istringstream in(cfg.canonical);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return j;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string csv_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace fraceig
