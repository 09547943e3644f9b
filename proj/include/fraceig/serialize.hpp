#ifndef FRACEIG_SERIALIZE_HPP
#define FRACEIG_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "fraceig/config.hpp"
#include "fraceig/properties.hpp"

namespace fraceig {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json to_json(const PropertyReport& rep);
nlohmann::json to_json(const std::vector<LevelDecayRow>& table);
nlohmann::json to_json(const std::vector<TruncationRow>& table);
nlohmann::json to_json(const std::vector<LinftyRow>& table);
nlohmann::json config_echo(const RunConfig& cfg);

// Write-to-temp then atomic rename; no partial files on error paths.
void atomic_write(const std::string& path, const std::string& content);

std::string csv_double(double v);

}  // namespace fraceig

#endif
